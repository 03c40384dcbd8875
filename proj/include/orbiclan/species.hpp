#pragma once

// Species of a colored triangulation: a field R or C per arc, a twisted
// bimodule per arrow, the potential given by the triangles, its cyclic
// derivatives and the graded Jacobian algebra over R.
//
// Tensors are handled as enhanced monomials: a function-style arrow word
// (last arrow acts first), a generator per arrow, and a bit per position
// 0..d saying whether the scalar i sits there. Position 0 is left of the
// first arrow, position m right of arrow m. A position carries a bit only
// where i cannot be moved further left: position 0 when the head field is
// C, position m when arrow m is free on its right.

#include "orbiclan/algebra.hpp"
#include "orbiclan/clannish.hpp"
#include "orbiclan/complex.hpp"
#include "orbiclan/surface.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orbiclan::species {

using clannish::Automorphism;

enum class Flavor { BLike, CLike };
enum class FieldTag { Real, Complex };

std::string to_string(Flavor f);
std::string to_string(FieldTag f);
Flavor parse_flavor(const std::string& s);
int real_dimension(FieldTag f);

struct FieldAssignment {
    Flavor flavor = Flavor::BLike;
    std::vector<FieldTag> fields;   // per arc, declaration order
};

FieldAssignment assign_fields(const surface::TriangulationData& t, Flavor flavor);

enum class BimoduleCase {
    ComplexOverReal,        // C (x)_R C, both ends pending, C-like
    TwistedComplex,         // C^g (x)_C C
    ComplexReal,            // C (x)_R R
    RealComplex,            // R (x)_R C
    RealReal,               // R (x)_R R
    DoubleRealReal          // (R (x)_R R)^2, both ends pending, B-like
};

std::string to_string(BimoduleCase c);

struct Bimodule {
    std::string arrow;
    std::size_t tail = 0;
    std::size_t head = 0;
    FieldTag left = FieldTag::Real;    // head field
    FieldTag right = FieldTag::Real;   // tail field
    BimoduleCase kind = BimoduleCase::RealReal;
    Automorphism twist = Automorphism::Identity;
    std::size_t generators = 1;
    std::size_t real_dim = 1;
    std::vector<std::string> basis;    // labels of the real basis
    Matrix left_action;                // i acting on the left, empty if left is R
    Matrix right_action;               // i acting on the right, empty if right is R

    bool left_free() const { return left == FieldTag::Complex; }
    bool right_free() const { return kind == BimoduleCase::ComplexOverReal || kind == BimoduleCase::RealComplex; }
    bool absorbs() const { return kind == BimoduleCase::TwistedComplex; }
};

struct SpeciesData {
    FieldAssignment fields;
    std::vector<std::string> vertices;
    std::vector<Bimodule> arrows;      // indexed like the X1 arrows

    std::size_t base_dim() const;      // dim_R of R = x F_k
    nlohmann::json to_json() const;
    static SpeciesData from_json(const nlohmann::json& j);
};

/// Throws PreconditionError if xi is not a cocycle of c.
SpeciesData build_species(const surface::TriangulationData& t, const complex::CWComplex& c,
                          const complex::Cocycle& xi, const FieldAssignment& fa);

// ---------------------------------------------------------------------------
// Enhanced monomials and tensor elements

struct Monomial {
    std::size_t head = 0;                 // vertex at the left end
    std::vector<std::size_t> arrows;
    std::vector<std::uint8_t> gens;
    std::vector<std::uint8_t> bits;       // size arrows.size() + 1

    std::size_t degree() const { return arrows.size(); }
    auto operator<=>(const Monomial&) const = default;
};

using Element = std::map<Monomial, Rational>;

void add_term(Element& x, const Monomial& m, const Rational& c);
Element operator+(const Element& x, const Element& y);
Element scaled(const Element& x, const Rational& c);
bool is_zero(const Element& x);

class TensorAlgebra {
public:
    explicit TensorAlgebra(const SpeciesData& sp);

    const SpeciesData& species() const { return *sp_; }

    std::size_t tail(const Monomial& m) const;
    bool stuck(const Monomial& m, std::size_t position) const;

    /// Multiplies the scalar at a position by i, moving it left through
    /// absorbing arrows. Returns the sign picked up.
    int times_i(Monomial& m, std::size_t position) const;

    /// x y, or nullopt if the ends do not meet. The sign is returned with it.
    std::optional<std::pair<Monomial, int>> multiply(const Monomial& x, const Monomial& y) const;
    Element multiply(const Element& x, const Element& y) const;

    Monomial idempotent(std::size_t vertex) const;
    Monomial arrow(std::size_t a, std::size_t gen = 0) const;
    /// i e_v; requires F_v = C.
    Monomial imaginary(std::size_t vertex) const;

    /// Real basis of the degree-d part, sorted.
    std::vector<Monomial> degree_basis(std::size_t d) const;

    std::string label(const Monomial& m) const;
    nlohmann::json to_json(const Monomial& m) const;
    Monomial monomial_from_json(const nlohmann::json& j) const;
    nlohmann::json to_json(const Element& x) const;
    Element element_from_json(const nlohmann::json& j) const;

private:
    const SpeciesData* sp_;
};

// ---------------------------------------------------------------------------
// Potential and relations

enum class PotentialConvention {
    Plain,          // canonical generators, coefficient +1 each
    SecondTwisted   // the second parallel generator enters through an i at the complex vertex
};

std::string to_string(PotentialConvention p);

struct PotentialTerm {
    std::size_t cell = 0;
    Element value;
};

struct Potential {
    PotentialConvention convention = PotentialConvention::SecondTwisted;
    std::vector<PotentialTerm> terms;
};

Potential build_potential(const complex::CWComplex& c, const SpeciesData& sp,
                          PotentialConvention convention = PotentialConvention::SecondTwisted);

/// P_1(x) = (x - i x i) / 2, P_conj(x) = (x + i x i) / 2 on elements whose
/// outer fields are both C; the identity otherwise.
Element semilinear_projection(const TensorAlgebra& ta, const Element& x, Automorphism sigma);

/// Derivative with respect to generator gen of arrow a.
Element cyclic_derivative(const TensorAlgebra& ta, const Potential& w, std::size_t a, std::size_t gen = 0);

struct Relation {
    std::size_t arrow = 0;
    std::size_t gen = 0;
    Element value;
};

std::vector<Relation> relations(const TensorAlgebra& ta, const Potential& w);

struct JacobianAlgebra {
    algebra::StructureAlgebra algebra;
    std::vector<std::size_t> graded_dims;   // quotient dimension per degree
    std::vector<std::size_t> tensor_dims;   // dim of the tensor power per degree
};

/// Graded quotient of the tensor algebra by the ideal of the relations.
/// scan_seed shuffles relation and basis processing order. Throws
/// RefusalError with the graded dimensions so far if degree_cap is reached
/// with a nonzero top degree, or if a tensor power exceeds 4096 dimensions.
JacobianAlgebra jacobian_algebra(const TensorAlgebra& ta, const std::vector<Relation>& rels, std::size_t degree_cap,
                                 std::optional<std::uint64_t> scan_seed = std::nullopt);

nlohmann::json species_export(const TensorAlgebra& ta, const Potential& w, const std::vector<Relation>& rels);

} // namespace orbiclan::species
