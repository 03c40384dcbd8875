// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fixtures.hpp"
#include "oracles.hpp"

#include "orbiclan/algebra.hpp"
#include "orbiclan/clannish.hpp"
#include "orbiclan/complex.hpp"
#include "orbiclan/pipeline.hpp"
#include "orbiclan/species.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace orbiclan;
using orbiclan::testing::corpus_dir;
using orbiclan::testing::corpus_names;
using orbiclan::testing::load_fixture;
using DT = algebra::DivisionType;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3fs", s);
    return buf;
}

algebra::StructureAlgebra single_loop_algebra(clannish::BaseField k)
{
    auto p = clannish::build_clannish_presentation(testing::single_pending_arc(), testing::single_pending_complex(),
                                                   {}, k);
    return clannish::realize_real_algebra(p, clannish::normal_words(p, 8));
}

Outcome criterion1()
{
    auto t0 = std::chrono::steady_clock::now();
    auto prof = algebra::morita_profile(single_loop_algebra(clannish::BaseField::Real));
    const double s = seconds_since(t0);
    const bool ok = prof.simple_count == 1 && prof.simples == std::vector<DT>{DT::Complex} && s < 1.0;
    return {ok, "R[s]/(s^2+1): " + std::to_string(prof.simple_count) + " simple, tag " +
                    (prof.simples.empty() ? std::string("-") : algebra::to_string(prof.simples[0])) + ", " +
                    fmt_seconds(s)};
}

Outcome criterion2()
{
    auto t0 = std::chrono::steady_clock::now();
    auto a = single_loop_algebra(clannish::BaseField::Complex);
    auto prof = algebra::morita_profile(a);
    auto r = algebra::morita_profile(algebra::real_field());
    const double s = seconds_since(t0);
    const bool same = prof.simples == r.simples && prof.cartan == r.cartan && prof.center_dim == r.center_dim &&
                      algebra::compare_morita(prof, r).consistent;
    return {a.dim() == 4 && same && s < 1.0, "C[s;conj]/(s^2-1): dim_R " + std::to_string(a.dim()) +
                                                 (same ? ", profile equals that of R, " : ", profile differs from R, ") +
                                                 fmt_seconds(s)};
}

Outcome criterion3()
{
    auto t0 = std::chrono::steady_clock::now();
    std::size_t cases = 0, consistent = 0;
    std::string bad;
    for (const auto& name : corpus_names()) {
        pipeline::RunConfig cfg;
        cfg.input = corpus_dir() + "/" + name + ".json";
        auto rep = pipeline::run_pipeline(cfg);
        if (!rep.valid || rep.cases.empty())
            bad += " " + name + "(no cases)";
        for (const auto& c : rep.cases) {
            ++cases;
            if (c.status == "consistent")
                ++consistent;
            else
                bad += " " + name + "#" + std::to_string(c.cocycle_index) + "/" + pipeline::to_string(c.pairing) +
                       ":" + c.status;
        }
    }
    const double s = seconds_since(t0);
    return {bad.empty() && consistent == cases && s < 60.0,
            std::to_string(consistent) + "/" + std::to_string(cases) + " cases consistent, " + fmt_seconds(s) + bad};
}

Outcome criterion4()
{
    std::ostringstream os;
    bool ok = true;
    for (const auto& name : corpus_names()) {
        auto c = complex::build_cw_complex(load_fixture(name));
        const std::size_t n = complex::enumerate_cocycles(c, 1u << 20).size();
        const std::size_t r = complex::boundary_matrices(c).d2.transpose().rank();
        const std::size_t expect = std::size_t{1} << (c.arrows.size() - r);
        ok = ok && n == expect;
        if (name == "typeII")
            ok = ok && n == 4;
        if (name == "pentagon_fan")
            ok = ok && n == 2;
        os << " " << name << "=" << n << "/2^" << (c.arrows.size() - r);
    }
    return {ok, "cocycle counts" + os.str()};
}

Outcome criterion5()
{
    std::size_t compared = 0, mismatched = 0;
    for (const auto& name : corpus_names()) {
        auto t = load_fixture(name);
        auto c = complex::build_cw_complex(t);
        for (const auto& xi : complex::enumerate_cocycles(c, 4096))
            for (auto k : {clannish::BaseField::Complex, clannish::BaseField::Real}) {
                auto p = clannish::build_clannish_presentation(t, c, xi, k);
                auto g = clannish::normal_words(p, 9);
                for (std::size_t d = 1; d <= 8; ++d) {
                    std::set<clannish::Word> ours;
                    if (d < g.words.size())
                        for (const auto& w : g.words[d])
                            ours.insert(w.arrows);
                    ++compared;
                    if (ours != testing::brute_force_words(p, d))
                        ++mismatched;
                }
            }
    }
    return {mismatched == 0, std::to_string(compared) + " (presentation, degree) pairs compared, " +
                                 std::to_string(mismatched) + " mismatched"};
}

Outcome criterion6()
{
    using namespace algebra;
    bool ok = true;
    std::string why;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            why += " " + what;
        }
    };
    auto u2 = upper_triangular_algebra(2);
    expect(radical(u2).dim() == 1, "rad(U2)");
    expect(lift_idempotents(u2).idempotents.size() == 2, "idempotents(U2)");
    expect(morita_profile(u2).cartan == IntMatrix{{1, 0}, {1, 1}}, "cartan(U2)");
    auto m2 = full_matrix_algebra(2);
    expect(radical(m2).dim() == 0, "rad(M2)");
    expect(lift_idempotents(m2).idempotents.size() == 2, "idempotents(M2)");
    expect(morita_profile(m2).simples == std::vector<DT>{DT::Real}, "tag(M2)");
    auto h = quaternions();
    expect(radical(h).dim() == 0, "rad(H)");
    expect(lift_idempotents(h).idempotents.size() == 1, "idempotents(H)");
    expect(morita_profile(h).simples == std::vector<DT>{DT::Quaternion}, "tag(H)");
    auto rr = direct_product(real_field(), real_field());
    expect(radical(rr).dim() == 0, "rad(RxR)");
    expect(lift_idempotents(rr).idempotents.size() == 2, "idempotents(RxR)");
    expect(morita_profile(rr).cartan == IntMatrix{{1, 0}, {0, 1}}, "cartan(RxR)");

    // Every algebra the corpus produces, against its 2x2 matrix inflation.
    std::size_t smoke = 0;
    for (const auto& name : corpus_names()) {
        auto t = load_fixture(name);
        auto c = complex::build_cw_complex(t);
        for (const auto& xi : complex::enumerate_cocycles(c, 4096))
            for (bool b_like : {true, false}) {
                std::vector<StructureAlgebra> algebras;
                auto p = clannish::build_clannish_presentation(
                    t, c, xi, b_like ? clannish::BaseField::Complex : clannish::BaseField::Real);
                algebras.push_back(clannish::realize_real_algebra(p, clannish::normal_words(p, 32)));
                auto sp = species::build_species(
                    t, c, xi, species::assign_fields(t, b_like ? species::Flavor::BLike : species::Flavor::CLike));
                species::TensorAlgebra ta(sp);
                algebras.push_back(
                    species::jacobian_algebra(ta, species::relations(ta, species::build_potential(c, sp)), 32)
                        .algebra);
                for (const auto& a : algebras) {
                    ++smoke;
                    expect(compare_morita(morita_profile(a), morita_profile(a.matrix_algebra(2))).consistent,
                           name + " M2 smoke");
                }
            }
    }
    return {ok, "standard examples checked, " + std::to_string(smoke) + " corpus algebras inflated" + why};
}

Outcome criterion7()
{
    std::mt19937_64 rng(20261015);
    bool ok = true;
    std::ostringstream os;
    for (const auto& name : corpus_names()) {
        auto t = load_fixture(name);
        auto c = complex::build_cw_complex(t);
        auto xs = complex::enumerate_cocycles(c, 4096);
        std::size_t nonzero = 0;
        for (int trial = 0; trial < 100; ++trial) {
            // Alternate flavors and walk through the cocycles.
            const auto flavor = trial % 2 ? species::Flavor::CLike : species::Flavor::BLike;
            auto sp = species::build_species(t, c, xs[static_cast<std::size_t>(trial / 2) % xs.size()],
                                             species::assign_fields(t, flavor));
            species::TensorAlgebra ta(sp);
            auto x = testing::random_outer_complex_tensor(ta, rng);
            if (!x.empty())
                ++nonzero;
            auto p1 = species::semilinear_projection(ta, x, clannish::Automorphism::Identity);
            auto pc = species::semilinear_projection(ta, x, clannish::Automorphism::Conjugation);
            ok = ok && p1 + pc == x && species::semilinear_projection(ta, p1, clannish::Automorphism::Identity) == p1 &&
                 species::semilinear_projection(ta, pc, clannish::Automorphism::Conjugation) == pc;
        }
        os << " " << name << ":" << nonzero << "/100 nonzero";
    }
    return {ok, "P_1 + P_conj = id and idempotence," + os.str()};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 real special loop is Morita C", criterion1},
        {"2 complex special loop is Morita R", criterion2},
        {"3 corpus Morita comparison", criterion3},
        {"4 cocycle counts", criterion4},
        {"5 normal words vs brute force", criterion5},
        {"6 algebra engine oracles", criterion6},
        {"7 projection identities", criterion7},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        if (!o.pass)
            ++failed;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
