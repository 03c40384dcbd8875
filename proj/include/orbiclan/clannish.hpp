#pragma once

// Quiver with special loops, the semilinear clannish presentation over
// K = C or R, its normal-form word basis and the realization as a real
// algebra by exact structure constants.
//
// Words are function-style: {a_1, ..., a_d} is the path a_1 a_2 ... a_d in
// which a_d acts first, composable iff t(a_i) = h(a_{i+1}).

#include "orbiclan/algebra.hpp"
#include "orbiclan/complex.hpp"
#include "orbiclan/surface.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace orbiclan::clannish {

enum class BaseField { Complex, Real };
enum class Automorphism { Identity, Conjugation };
enum class ArrowKind { Ordinary, SpecialLoop };

std::string to_string(BaseField k);
std::string to_string(Automorphism s);
std::string to_string(ArrowKind k);
BaseField parse_base_field(const std::string& s);

struct QuiverArrow {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;
    ArrowKind kind = ArrowKind::Ordinary;
};

struct Quiver {
    std::vector<std::string> vertices;
    std::vector<QuiverArrow> arrows;   // X1 arrows first, same order, then one loop per pending arc

    std::optional<std::size_t> arrow_index(std::string_view id) const;
    std::size_t ordinary_count() const;
};

/// Special loops get ids "s.<arc label>".
Quiver build_quiver(const surface::TriangulationData& t, const complex::CWComplex& c);

using Word = std::vector<std::size_t>;   // arrow indices, last acts first

struct ClannishPresentation {
    Quiver quiver;
    BaseField field = BaseField::Complex;
    std::vector<Automorphism> sigma;                    // per arrow
    std::vector<std::pair<std::size_t, std::size_t>> zero_relations;   // (a, b) is the word ab
    std::map<std::size_t, int> loop_square;             // s^2 = loop_square[s] * e_{t(s)}

    bool in_zero_relations(std::size_t a, std::size_t b) const;
    /// "s^2-1" or "s^2+1".
    std::string loop_polynomial(std::size_t loop) const;

    nlohmann::json to_json() const;
    static ClannishPresentation from_json(const nlohmann::json& j);
};

/// Throws PreconditionError if xi is not a cocycle of c.
ClannishPresentation build_clannish_presentation(const surface::TriangulationData& t, const complex::CWComplex& c,
                                                 const complex::Cocycle& xi, BaseField k);

struct AxiomReport {
    bool ok = true;
    std::vector<surface::Violation> violations;   // rule "axiom-1" / "axiom-2" / "axiom-3"
    nlohmann::json to_json() const;
};

AxiomReport check_clannish_axioms(const ClannishPresentation& p);

struct BasisWord {
    std::size_t head = 0;
    std::size_t tail = 0;
    Word arrows;
    auto operator<=>(const BasisWord&) const = default;
};

struct GradedWordBasis {
    std::vector<std::vector<BasisWord>> words;   // words[d]: degree d, sorted; trailing empty degree omitted
    bool finite = false;
    std::size_t cap_used = 0;

    std::size_t total() const;
    std::vector<std::size_t> degree_dims() const;
};

/// Composable words avoiding Z and ss, degree by degree up to degree_cap - 1.
/// scan_seed shuffles the arrow extension order and the forbidden-factor
/// scan order; the result must not depend on it.
GradedWordBasis normal_words(const ClannishPresentation& p, std::size_t degree_cap,
                             std::optional<std::uint64_t> scan_seed = std::nullopt);

std::string word_label(const ClannishPresentation& p, const BasisWord& w);

/// Real algebra with basis (word, b), b in {1, i} for K = C and {1} for
/// K = R, words in graded order. Throws RefusalError if !basis.finite.
algebra::StructureAlgebra realize_real_algebra(const ClannishPresentation& p, const GradedWordBasis& basis);

/// sigma_w as an exponent of conjugation.
Automorphism word_automorphism(const ClannishPresentation& p, const Word& w);

} // namespace orbiclan::clannish
