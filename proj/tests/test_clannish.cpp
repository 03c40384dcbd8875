#include "fixtures.hpp"
#include "oracles.hpp"

#include "orbiclan/clannish.hpp"
#include "orbiclan/errors.hpp"

#include <catch_amalgamated.hpp>

using namespace orbiclan;
using namespace orbiclan::clannish;
using orbiclan::testing::corpus_names;
using orbiclan::testing::load_fixture;

namespace {

using DT = algebra::DivisionType;

ClannishPresentation presentation(const std::string& name, const complex::Cocycle& xi, BaseField k)
{
    auto t = load_fixture(name);
    return build_clannish_presentation(t, complex::build_cw_complex(t), xi, k);
}

ClannishPresentation zero_presentation(const std::string& name, BaseField k)
{
    auto t = load_fixture(name);
    auto c = complex::build_cw_complex(t);
    return build_clannish_presentation(t, c, complex::Cocycle{std::vector<std::uint8_t>(c.arrows.size(), 0)}, k);
}

ClannishPresentation single_loop(BaseField k)
{
    return build_clannish_presentation(testing::single_pending_arc(), testing::single_pending_complex(), {}, k);
}

bool has_rule(const AxiomReport& r, const std::string& rule)
{
    for (const auto& v : r.violations)
        if (v.rule == rule)
            return true;
    return false;
}

// Complex scalar a + b i as a vector over the (word, 1), (word, i) basis.
Vector scalar_times(const algebra::StructureAlgebra& a, std::size_t word, int re, int im)
{
    Vector v = a.zero();
    v[2 * word] = re;
    v[2 * word + 1] = im;
    return v;
}

} // namespace

TEST_CASE("quiver shapes", "[clannish][quiver]")
{
    auto t = load_fixture("typeII");
    auto q = build_quiver(t, complex::build_cw_complex(t));
    CHECK(q.vertices.size() == 3);
    CHECK(q.ordinary_count() == 3);
    CHECK(q.arrows.size() == 4);
    CHECK(q.arrows.back().id == "s.j");
    CHECK(q.arrows.back().tail == q.arrows.back().head);

    t = load_fixture("typeIII");
    q = build_quiver(t, complex::build_cw_complex(t));
    CHECK(q.ordinary_count() == 3);
    CHECK(q.arrows.size() == 5);

    t = load_fixture("pentagon_fan");
    q = build_quiver(t, complex::build_cw_complex(t));
    CHECK(q.vertices.size() == 2);
    CHECK(q.arrows.size() == 1);
}

TEST_CASE("presentation of the type II triangle", "[clannish][presentation]")
{
    auto p = presentation("typeII", {{1, 1, 0}}, BaseField::Complex);
    using A = Automorphism;
    CHECK(p.sigma == std::vector<A>{A::Conjugation, A::Conjugation, A::Identity, A::Conjugation});
    CHECK(p.zero_relations.size() == 3);
    REQUIRE(p.loop_square.size() == 1);
    CHECK(p.loop_polynomial(3) == "s^2-1");
    // The composites of the 3-cycle t0.0, t0.1, t0.2.
    CHECK(p.in_zero_relations(1, 0));
    CHECK(p.in_zero_relations(2, 1));
    CHECK(p.in_zero_relations(0, 2));

    auto r = presentation("typeII", {{1, 1, 0}}, BaseField::Real);
    for (auto s : r.sigma)
        CHECK(s == A::Identity);
    CHECK(r.loop_polynomial(3) == "s^2+1");

    CHECK_THROWS_AS(presentation("typeII", {{1, 0, 0}}, BaseField::Complex), PreconditionError);
}

TEST_CASE("presentation JSON round trip", "[clannish][presentation]")
{
    auto p = presentation("typeIII", {{1, 0, 1}}, BaseField::Complex);
    auto q = ClannishPresentation::from_json(p.to_json());
    CHECK(q.to_json() == p.to_json());
    auto a = realize_real_algebra(p, normal_words(p, 10));
    auto b = realize_real_algebra(q, normal_words(q, 10));
    CHECK(a.to_json() == b.to_json());
    CHECK_THROWS_AS(ClannishPresentation::from_json(nlohmann::json{{"field", "Q"}}), ParseError);
}

TEST_CASE("clannish axioms hold on every colored fixture", "[clannish][axioms][property]")
{
    for (const auto& name : corpus_names()) {
        auto t = load_fixture(name);
        auto c = complex::build_cw_complex(t);
        for (const auto& xi : complex::enumerate_cocycles(c, 4096))
            for (auto k : {BaseField::Complex, BaseField::Real}) {
                INFO(name);
                auto r = check_clannish_axioms(build_clannish_presentation(t, c, xi, k));
                CHECK(r.ok);
            }
    }
}

TEST_CASE("axiom violations", "[clannish][axioms]")
{
    ClannishPresentation p;
    p.quiver.vertices = {"a", "b", "c", "d"};
    for (std::size_t v : {1, 2, 3})
        p.quiver.arrows.push_back({"x" + std::to_string(v), v, 0, ArrowKind::Ordinary});
    p.sigma.assign(3, Automorphism::Identity);
    auto r = check_clannish_axioms(p);
    CHECK_FALSE(r.ok);
    CHECK(has_rule(r, "axiom-1"));

    auto q = single_loop(BaseField::Complex);
    q.quiver.vertices.push_back("k");
    q.quiver.arrows.push_back({"a", 0, 1, ArrowKind::Ordinary});
    q.sigma.push_back(Automorphism::Identity);
    q.zero_relations.emplace_back(1, 0);   // a s: ends in the special loop
    r = check_clannish_axioms(q);
    CHECK(has_rule(r, "axiom-3"));

    // Two arrows into the tail of a, neither composite killed.
    ClannishPresentation two;
    two.quiver.vertices = {"u", "v", "w"};
    two.quiver.arrows = {{"a", 0, 1, ArrowKind::Ordinary}, {"b", 1, 0, ArrowKind::Ordinary},
                         {"c", 2, 0, ArrowKind::Ordinary}};
    two.sigma.assign(3, Automorphism::Identity);
    CHECK(has_rule(check_clannish_axioms(two), "axiom-2"));
    two.zero_relations.emplace_back(0, 2);
    CHECK(check_clannish_axioms(two).ok);
}

TEST_CASE("normal words", "[clannish][words]")
{
    auto s = normal_words(single_loop(BaseField::Complex), 10);
    CHECK(s.finite);
    CHECK(s.degree_dims() == std::vector<std::size_t>{1, 1});

    auto cyc = normal_words(zero_presentation("typeI", BaseField::Complex), 10);
    CHECK(cyc.finite);
    CHECK(cyc.degree_dims() == std::vector<std::size_t>{3, 3});
    CHECK(cyc.total() == 6);

    auto two = normal_words(zero_presentation("typeII", BaseField::Complex), 10);
    CHECK(two.finite);
    CHECK(two.degree_dims() == std::vector<std::size_t>{3, 4, 2, 1});

    CHECK_THROWS_AS(normal_words(single_loop(BaseField::Real), 0), PreconditionError);
}

TEST_CASE("infinite word basis is reported, not built", "[clannish][words]")
{
    // An oriented 2-cycle with no relations has words in every degree.
    ClannishPresentation p;
    p.quiver.vertices = {"u", "v"};
    p.quiver.arrows = {{"a", 0, 1, ArrowKind::Ordinary}, {"b", 1, 0, ArrowKind::Ordinary}};
    p.sigma.assign(2, Automorphism::Identity);
    p.field = BaseField::Real;
    auto g = normal_words(p, 6);
    CHECK_FALSE(g.finite);
    CHECK(g.cap_used == 6);
    CHECK_THROWS_AS(realize_real_algebra(p, g), RefusalError);
}

TEST_CASE("normal words agree with the brute-force enumerator", "[clannish][words][oracle]")
{
    for (const auto& name : corpus_names()) {
        auto t = load_fixture(name);
        auto c = complex::build_cw_complex(t);
        for (const auto& xi : complex::enumerate_cocycles(c, 4096)) {
            auto p = build_clannish_presentation(t, c, xi, BaseField::Complex);
            auto g = normal_words(p, 9);
            for (std::size_t d = 1; d <= 8; ++d) {
                std::set<Word> ours;
                if (d < g.words.size())
                    for (const auto& w : g.words[d])
                        ours.insert(w.arrows);
                INFO(name << " degree " << d);
                CHECK(ours == testing::brute_force_words(p, d));
            }
        }
    }
}

TEST_CASE("word count does not depend on the scan order", "[clannish][words][property]")
{
    for (const auto& name : corpus_names()) {
        auto p = zero_presentation(name, BaseField::Complex);
        auto base = normal_words(p, 10);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            auto g = normal_words(p, 10, seed);
            CHECK(g.degree_dims() == base.degree_dims());
            CHECK(g.words == base.words);
        }
    }
}

TEST_CASE("realized special loop algebras", "[clannish][realize]")
{
    auto pc = single_loop(BaseField::Complex);
    auto ac = realize_real_algebra(pc, normal_words(pc, 10));
    REQUIRE(ac.dim() == 4);
    // Basis: e, i e, s, i s. s i = -i s.
    auto si = ac.multiply(ac.basis_vector(2), ac.basis_vector(1));
    Vector minus_is = ac.zero();
    minus_is[3] = -1;
    CHECK(si == minus_is);
    CHECK(ac.multiply(ac.basis_vector(2), ac.basis_vector(2)) == ac.basis_vector(0));

    auto pr = single_loop(BaseField::Real);
    auto ar = realize_real_algebra(pr, normal_words(pr, 10));
    REQUIRE(ar.dim() == 2);
    Vector minus_e = ar.zero();
    minus_e[0] = -1;
    CHECK(ar.multiply(ar.basis_vector(1), ar.basis_vector(1)) == minus_e);
    auto blocks = algebra::wedderburn_profile(ar);
    REQUIRE(blocks.size() == 1);
    CHECK(blocks[0].division == DT::Complex);

    auto m2 = algebra::wedderburn_profile(ac);
    REQUIRE(m2.size() == 1);
    CHECK(m2[0].division == DT::Real);
    CHECK(m2[0].matrix_size == 2);
}

TEST_CASE("realized 3-cycle", "[clannish][realize]")
{
    auto p = zero_presentation("typeI", BaseField::Complex);
    auto a = realize_real_algebra(p, normal_words(p, 10));
    CHECK(a.dim() == 12);
    // Arrow basis vectors sit at word indices 3..5.
    for (std::size_t x = 6; x < 12; ++x)
        for (std::size_t y = 6; y < 12; ++y)
            CHECK(a.product(x, y).empty());
    auto rad = algebra::radical(a);
    CHECK(rad.dim() == 6);
    CHECK(algebra::nilpotency_index(a, rad) == 2);
}

TEST_CASE("realized algebras are associative and semilinear", "[clannish][realize][property]")
{
    for (const auto& name : corpus_names()) {
        auto t = load_fixture(name);
        auto c = complex::build_cw_complex(t);
        for (const auto& xi : complex::enumerate_cocycles(c, 4096))
            for (auto k : {BaseField::Complex, BaseField::Real}) {
                INFO(name << " K=" << to_string(k));
                auto p = build_clannish_presentation(t, c, xi, k);
                auto g = normal_words(p, 32);
                auto a = realize_real_algebra(p, g);
                CHECK(a.dim() == (k == BaseField::Complex ? 2 : 1) * g.total());
                CHECK_FALSE(a.associativity_failure().has_value());
                CHECK(a.unit_is_two_sided());
                if (k != BaseField::Complex)
                    continue;
                // w z = sigma_w(z) w for z = 1 + 2i.
                std::size_t idx = 0;
                for (const auto& layer : g.words)
                    for (const auto& w : layer) {
                        Vector z = a.zero();
                        // z at the tail vertex of w.
                        std::size_t e = 0;
                        for (std::size_t v = 0; v < g.words[0].size(); ++v)
                            if (g.words[0][v].head == w.tail)
                                e = v;
                        z[2 * e] = 1;
                        z[2 * e + 1] = 2;
                        bool conj = word_automorphism(p, w.arrows) == Automorphism::Conjugation;
                        auto lhs = a.multiply(a.basis_vector(2 * idx), z);
                        CHECK(lhs == scalar_times(a, idx, 1, conj ? -2 : 2));
                        ++idx;
                    }
            }
    }
}

TEST_CASE("pentagon fan Cartan matrix", "[clannish][realize]")
{
    auto p = zero_presentation("pentagon_fan", BaseField::Complex);
    auto prof = algebra::morita_profile(realize_real_algebra(p, normal_words(p, 10)));
    CHECK(prof.simples == std::vector<DT>{DT::Complex, DT::Complex});
    CHECK(prof.cartan == algebra::IntMatrix{{1, 0}, {1, 1}});
}
