#include "orbiclan/algebra.hpp"
#include "orbiclan/errors.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace orbiclan;
using namespace orbiclan::algebra;

namespace {

using DT = DivisionType;

bool is_idempotent(const StructureAlgebra& a, const Vector& e) { return a.multiply(e, e) == e; }

void check_complete(const StructureAlgebra& a, const LiftedIdempotents& li)
{
    Vector sum = a.zero();
    for (std::size_t p = 0; p < li.idempotents.size(); ++p) {
        const auto& e = li.idempotents[p];
        REQUIRE(is_idempotent(a, e));
        add_scaled(sum, Rational(1), e);
        for (std::size_t q = 0; q < li.idempotents.size(); ++q)
            if (p != q)
                REQUIRE(is_zero(a.multiply(e, li.idempotents[q])));
    }
    REQUIRE(sum == a.unit());
}

// 2x2 matrices over a commutative ring given as a 2-dim algebra; used to
// build small non-basic examples.
StructureAlgebra random_permutation(const StructureAlgebra& a, std::mt19937& rng)
{
    std::vector<std::size_t> order(a.dim());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return a.permuted(order);
}

} // namespace

TEST_CASE("reference algebras are associative with two-sided unit", "[algebra]")
{
    for (const auto& a : {real_field(), complex_field(), quaternions(), full_matrix_algebra(2),
                          upper_triangular_algebra(3), direct_product(real_field(), complex_field())}) {
        CHECK(a.unit_is_two_sided());
        CHECK_FALSE(a.associativity_failure().has_value());
    }
}

TEST_CASE("radical of standard examples", "[algebra][radical]")
{
    CHECK(radical(upper_triangular_algebra(2)).dim() == 1);
    CHECK(radical(full_matrix_algebra(2)).dim() == 0);
    CHECK(radical(quaternions()).dim() == 0);
    CHECK(radical(direct_product(real_field(), real_field())).dim() == 0);

    auto u3 = upper_triangular_algebra(3);
    auto rad = radical(u3);
    CHECK(rad.dim() == 3);
    CHECK(nilpotency_index(u3, rad) == 3);
}

TEST_CASE("radical rejects non-associative input", "[algebra][radical]")
{
    // Octonion-like failure: twist one product of the quaternions.
    auto j = quaternions().to_json();
    // b_1 * b_2 = b_3 becomes -b_3, breaking associativity.
    j["const"][1][2][3] = "-1/1";
    auto broken = StructureAlgebra::from_json(j);
    REQUIRE(broken.associativity_failure().has_value());
    CHECK_THROWS_AS(radical(broken), InputError);
}

TEST_CASE("Wedderburn blocks and division types", "[algebra][wedderburn]")
{
    auto c = wedderburn_profile(complex_field());
    REQUIRE(c.size() == 1);
    CHECK(c[0].division == DT::Complex);
    CHECK(c[0].matrix_size == 1);

    auto h = wedderburn_profile(quaternions());
    REQUIRE(h.size() == 1);
    CHECK(h[0].division == DT::Quaternion);

    auto m2 = wedderburn_profile(full_matrix_algebra(2));
    REQUIRE(m2.size() == 1);
    CHECK(m2[0].division == DT::Real);
    CHECK(m2[0].matrix_size == 2);

    auto m2h = wedderburn_profile(quaternions().matrix_algebra(2));
    REQUIRE(m2h.size() == 1);
    CHECK(m2h[0].division == DT::Quaternion);
    CHECK(m2h[0].matrix_size == 2);

    auto mixed = wedderburn_profile(direct_product(complex_field(), full_matrix_algebra(2)));
    REQUIRE(mixed.size() == 2);
}

TEST_CASE("signature by congruence", "[algebra]")
{
    Matrix g(3, 3);
    g(0, 1) = g(1, 0) = 1;   // hyperbolic plane, zero diagonal forces a pivot swap
    g(2, 2) = -3;
    auto s = signature(g);
    CHECK(s.positive == 1);
    CHECK(s.negative == 2);
    CHECK(s.zero == 0);
}

TEST_CASE("lifted idempotents", "[algebra][idempotents]")
{
    auto rr = direct_product(real_field(), real_field());
    auto li = lift_idempotents(rr);
    CHECK(li.idempotents.size() == 2);
    check_complete(rr, li);

    auto u2 = upper_triangular_algebra(2);
    li = lift_idempotents(u2);
    CHECK(li.idempotents.size() == 2);
    check_complete(u2, li);

    auto m2 = full_matrix_algebra(2);
    li = lift_idempotents(m2);
    REQUIRE(li.idempotents.size() == 2);
    check_complete(m2, li);
    for (const auto& e : li.idempotents)
        CHECK(product_span(m2, {e}, {m2.basis_vector(0), m2.basis_vector(1), m2.basis_vector(2),
                                    m2.basis_vector(3)})
                  .dim() == 2);
}

TEST_CASE("Cartan matrices", "[algebra][cartan]")
{
    auto rr = direct_product(real_field(), real_field());
    CHECK(cartan_matrix(rr, lift_idempotents(rr)) == IntMatrix{{1, 0}, {0, 1}});

    auto p = morita_profile(upper_triangular_algebra(2));
    CHECK(p.cartan == IntMatrix{{1, 0}, {1, 1}});
    CHECK(p.center_dim == 1);

    auto h = morita_profile(quaternions().matrix_algebra(2));
    CHECK(h.cartan == IntMatrix{{1}});
}

TEST_CASE("Morita profiles of the small fields", "[algebra][morita]")
{
    auto r = morita_profile(real_field());
    auto m2 = morita_profile(full_matrix_algebra(2));
    CHECK(r.simple_count == 1);
    CHECK(r.simples == std::vector<DT>{DT::Real});
    CHECK(r.cartan == IntMatrix{{1}});
    CHECK(r.center_dim == 1);
    CHECK(compare_morita(r, m2).consistent);
    CHECK(r.hash() == m2.hash());
    CHECK(m2.total_dim == 4);

    auto c = morita_profile(complex_field());
    CHECK(c.simples == std::vector<DT>{DT::Complex});
    CHECK(c.center_dim == 2);
    auto v = compare_morita(r, c);
    CHECK_FALSE(v.consistent);
    CHECK_FALSE(v.witness.empty());
}

TEST_CASE("profile JSON round trip", "[algebra][morita]")
{
    auto p = morita_profile(upper_triangular_algebra(3));
    auto q = MoritaProfile::from_json(p.to_json());
    CHECK(q.to_json() == p.to_json());
    CHECK(q.hash() == p.hash());
}

TEST_CASE("structure algebra JSON round trip", "[algebra]")
{
    auto a = upper_triangular_algebra(2);
    auto b = StructureAlgebra::from_json(a.to_json());
    CHECK(b.to_json() == a.to_json());
}

TEST_CASE("profile is stable under basis permutation", "[algebra][property]")
{
    std::mt19937 rng(7);
    for (const auto& a : {upper_triangular_algebra(3), direct_product(complex_field(), upper_triangular_algebra(2)),
                          quaternions().matrix_algebra(2), direct_product(real_field(), quaternions())}) {
        auto base = morita_profile(a);
        for (int round = 0; round < 5; ++round) {
            auto b = random_permutation(a, rng);
            CHECK(morita_profile(b).to_json() == base.to_json());
        }
    }
}

TEST_CASE("Morita smoke test against matrix inflation", "[algebra][property]")
{
    for (const auto& a : {upper_triangular_algebra(2), complex_field(), quaternions(),
                          direct_product(real_field(), real_field())}) {
        auto p = morita_profile(a);
        auto q = morita_profile(a.matrix_algebra(2));
        CHECK(compare_morita(p, q).consistent);
        CHECK(q.total_dim == 4 * p.total_dim);
    }
}
