#pragma once

// Finite-dimensional real algebras given by exact rational structure
// constants, and the Morita invariants computed from them: radical,
// Wedderburn blocks with their division types, lifted primitive
// idempotents, Cartan matrix and centre.

#include "orbiclan/linalg.hpp"
#include "orbiclan/polynomial.hpp"
#include "orbiclan/rational.hpp"

#include "json.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbiclan::algebra {

enum class DivisionType { Real, Complex, Quaternion };

std::string to_string(DivisionType t);
DivisionType parse_division_type(const std::string& s);
int real_dimension(DivisionType t);

class StructureAlgebra {
public:
    using Term = std::pair<std::size_t, Rational>;
    using SparseVector = std::vector<Term>;

    StructureAlgebra() = default;

    /// products[i * dim + j] holds the coordinates of b_i * b_j, sorted by
    /// index with no zero entries.
    StructureAlgebra(std::vector<std::string> labels, std::vector<SparseVector> products, Vector unit);

    std::size_t dim() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const SparseVector& product(std::size_t i, std::size_t j) const { return products_[i * dim() + j]; }
    const Vector& unit() const { return unit_; }

    Vector basis_vector(std::size_t k) const;
    Vector multiply(const Vector& x, const Vector& y) const;
    Vector zero() const { return Vector(dim()); }

    /// Trace of left multiplication by b_k in the regular representation.
    const Vector& left_traces() const { return left_traces_; }
    Rational trace_of_left(const Vector& x) const;

    bool unit_is_two_sided() const;

    /// First basis triple (i, j, k) with (b_i b_j) b_k != b_i (b_j b_k).
    std::optional<std::array<std::size_t, 3>> associativity_failure() const;

    /// Same algebra in the reordered basis b'_k = b_{order[k]}.
    StructureAlgebra permuted(const std::vector<std::size_t>& order) const;

    /// M_n(*this) by inflation: basis E_pq (x) b_k.
    StructureAlgebra matrix_algebra(std::size_t n) const;

    nlohmann::json to_json() const;
    static StructureAlgebra from_json(const nlohmann::json& j);

private:
    std::vector<std::string> labels_;
    std::vector<SparseVector> products_;
    Vector unit_;
    Vector left_traces_;
};

// Small reference algebras.
StructureAlgebra real_field();
StructureAlgebra complex_field();
StructureAlgebra quaternions();
StructureAlgebra full_matrix_algebra(std::size_t n);
StructureAlgebra upper_triangular_algebra(std::size_t n);
StructureAlgebra direct_product(const StructureAlgebra& a, const StructureAlgebra& b);

/// Linear span of {x y : x in left, y in right}.
Subspace product_span(const StructureAlgebra& a, const std::vector<Vector>& left, const std::vector<Vector>& right);

/// Basis of the centre {z : z b = b z for all b}.
std::vector<Vector> center_basis(const StructureAlgebra& a);

/// Minimal polynomial of x relative to the idempotent unit e (x = e x e).
Polynomial minimal_polynomial(const StructureAlgebra& a, const Vector& x, const Vector& e);

/// Evaluates p(x) with x^0 := e.
Vector evaluate(const StructureAlgebra& a, const Polynomial& p, const Vector& x, const Vector& e);

// ---------------------------------------------------------------------------
// Radical and semisimple quotient

/// Jacobson radical as the kernel of the trace form (x, y) -> tr L_{xy}.
/// Throws InputError if the algebra is not associative or has no unit.
Subspace radical(const StructureAlgebra& a);

/// Smallest k with rad^k = 0.
std::size_t nilpotency_index(const StructureAlgebra& a, const Subspace& rad);

struct SemisimpleQuotient {
    StructureAlgebra algebra;          // a / rad
    Subspace rad;                      // radical of the parent
    std::vector<std::size_t> section;  // parent basis index of each quotient basis vector

    Vector project(const Vector& x) const;
    Vector lift(const Vector& y, std::size_t parent_dim) const;
};

SemisimpleQuotient semisimple_quotient(const StructureAlgebra& a, const Subspace& rad);

// ---------------------------------------------------------------------------
// Wedderburn decomposition

struct WedderburnBlock {
    DivisionType division = DivisionType::Real;
    std::size_t matrix_size = 0;
    std::size_t dim = 0;            // real dimension of the block
    Vector central_idempotent;      // in quotient coordinates
};

struct Signature {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t zero = 0;
};

/// Inertia of a symmetric rational matrix by congruence diagonalisation.
Signature signature(Matrix gram);

std::vector<WedderburnBlock> wedderburn_blocks(const SemisimpleQuotient& q);
std::vector<WedderburnBlock> wedderburn_profile(const StructureAlgebra& a);

// ---------------------------------------------------------------------------
// Idempotents, Cartan matrix, Morita profile

struct LiftedIdempotents {
    std::vector<Vector> idempotents;          // in parent coordinates
    std::vector<std::size_t> block;           // Wedderburn block of each
    std::vector<WedderburnBlock> blocks;
};

/// Complete set of pairwise orthogonal primitive idempotents of a, lifted
/// from a / rad by e <- 3e^2 - 2e^3.
LiftedIdempotents lift_idempotents(const StructureAlgebra& a);

using IntMatrix = std::vector<std::vector<long>>;

/// Entry (i, j) = dim(e_i a e_j) / dim End(S_i), one row per block, using
/// the first idempotent of each block.
IntMatrix cartan_matrix(const StructureAlgebra& a, const LiftedIdempotents& idems);

struct MoritaProfile {
    std::size_t simple_count = 0;
    std::vector<DivisionType> simples;   // canonical order
    IntMatrix cartan;                    // canonical simultaneous permutation
    std::size_t center_dim = 0;
    std::size_t total_dim = 0;           // informational, never compared

    nlohmann::json to_json() const;
    static MoritaProfile from_json(const nlohmann::json& j);

    /// 16 hex digits of FNV-1a over the compared fields.
    std::string hash() const;
};

/// Puts (simples, cartan) into canonical order: simples sorted by
/// (tag, row multiset, column multiset), ties resolved by the
/// lexicographically least matrix over the remaining permutations.
MoritaProfile canonical_profile(std::vector<DivisionType> simples, IntMatrix cartan, std::size_t center_dim,
                                std::size_t total_dim);

MoritaProfile morita_profile(const StructureAlgebra& a);

struct MoritaVerdict {
    bool consistent = false;
    std::string witness;   // empty when consistent
    std::string note;
    nlohmann::json to_json() const;
};

MoritaVerdict compare_morita(const MoritaProfile& p, const MoritaProfile& q);

} // namespace orbiclan::algebra
