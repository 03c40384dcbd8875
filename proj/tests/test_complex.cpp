#include "fixtures.hpp"

#include "orbiclan/complex.hpp"
#include "orbiclan/errors.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace orbiclan;
using namespace orbiclan::complex;
using orbiclan::testing::corpus_names;
using orbiclan::testing::load_fixture;

TEST_CASE("CW complex sizes", "[complex]")
{
    surface::TriangulationData two;
    two.arcs = {{"1", false}};
    two.boundary = {"b1", "b2", "b3", "b4"};
    two.triangles = {{"b1", "b2", "1"}, {"1", "b3", "b4"}};
    auto c = build_cw_complex(two);
    CHECK(c.vertices.size() == 1);
    CHECK(c.arrows.empty());
    CHECK(c.two_cells.empty());

    c = build_cw_complex(load_fixture("typeII"));
    CHECK(c.vertices.size() == 3);
    CHECK(c.arrows.size() == 3);
    CHECK(c.two_cells.size() == 1);

    c = build_cw_complex(load_fixture("pentagon_fan"));
    CHECK(c.vertices.size() == 2);
    REQUIRE(c.arrows.size() == 1);
    // Sides (1, b3, 2): the only arc pair is (2, 1), wrapping around.
    CHECK(c.vertices[c.arrows[0].tail] == "2");
    CHECK(c.vertices[c.arrows[0].head] == "1");
    CHECK(c.two_cells.empty());
}

TEST_CASE("invalid data is a precondition error", "[complex]")
{
    surface::TriangulationData bad;
    bad.arcs = {{"j", true}};
    CHECK_THROWS_AS(build_cw_complex(bad), PreconditionError);
}

TEST_CASE("2-cells close up and arrows belong to one triangle", "[complex][property]")
{
    for (const auto& name : corpus_names()) {
        INFO(name);
        auto t = load_fixture(name);
        auto c = build_cw_complex(t);
        std::set<std::size_t> seen;
        for (const auto& cell : c.two_cells) {
            for (std::size_t k = 0; k < 3; ++k) {
                const auto& a = c.arrows[cell.arrows[k]];
                const auto& b = c.arrows[cell.arrows[(k + 1) % 3]];
                CHECK(a.head == b.tail);
                CHECK(a.triangle == cell.triangle);
                CHECK(seen.insert(cell.arrows[k]).second);
            }
            CHECK(cell.arrows[0] < cell.arrows[1]);
            CHECK(cell.arrows[0] < cell.arrows[2]);
        }
        std::size_t all_arc = 0;
        for (const auto& tri : t.triangles)
            all_arc += t.is_arc(tri[0]) && t.is_arc(tri[1]) && t.is_arc(tri[2]);
        CHECK(c.two_cells.size() == all_arc);
    }
}

TEST_CASE("boundary matrices", "[complex]")
{
    auto c = build_cw_complex(load_fixture("typeII"));
    auto b = boundary_matrices(c);
    REQUIRE(b.d2.rows() == 3);
    REQUIRE(b.d2.cols() == 1);
    for (std::size_t r = 0; r < 3; ++r)
        CHECK(b.d2.get(r, 0));
    REQUIRE(b.d1.rows() == 3);
    REQUIRE(b.d1.cols() == 3);
    for (std::size_t col = 0; col < 3; ++col)
        CHECK(b.d1.get(0, col) + b.d1.get(1, col) + b.d1.get(2, col) == 2);
    CHECK(b.d2.to_text() == "1\n1\n1\n");

    auto fan = boundary_matrices(build_cw_complex(load_fixture("pentagon_fan")));
    CHECK(fan.d2.cols() == 0);
}

TEST_CASE("a loop arrow gives a zero column of d1", "[complex]")
{
    surface::TriangulationData t;
    t.arcs = {{"a", false}, {"b", false}};
    t.triangles = {{"a", "a", "b"}};
    auto c = build_cw_complex(t);
    auto b = boundary_matrices(c);
    REQUIRE(c.arrows[0].tail == c.arrows[0].head);
    CHECK_FALSE(b.d1.get(0, 0));
    CHECK((b.d1 * b.d2).is_zero());
}

TEST_CASE("d1 d2 = 0 on every fixture", "[complex][property]")
{
    for (const auto& name : corpus_names()) {
        auto b = boundary_matrices(build_cw_complex(load_fixture(name)));
        CHECK((b.d1 * b.d2).is_zero());
    }
}

TEST_CASE("cocycle basis sizes", "[complex][cocycle]")
{
    CHECK(cocycle_basis(build_cw_complex(load_fixture("typeII"))).size() == 2);
    CHECK(cocycle_basis(build_cw_complex(load_fixture("pentagon_fan"))).size() == 1);
    surface::TriangulationData lone;
    lone.arcs = {{"1", false}};
    lone.boundary = {"b1", "b2", "b3", "b4"};
    lone.triangles = {{"b1", "b2", "1"}, {"1", "b3", "b4"}};
    CHECK(cocycle_basis(build_cw_complex(lone)).empty());
}

TEST_CASE("cocycle enumeration", "[complex][cocycle]")
{
    auto c = build_cw_complex(load_fixture("typeII"));
    auto all = enumerate_cocycles(c, 16);
    CHECK(all.size() == 4);
    CHECK(std::set<Cocycle>(all.begin(), all.end()).size() == 4);
    CHECK(enumerate_cocycles(build_cw_complex(load_fixture("pentagon_fan")), 16).size() == 2);
    CHECK_THROWS_AS(enumerate_cocycles(c, 3), RefusalError);
}

TEST_CASE("cap refusal names the kernel dimension", "[complex][cocycle]")
{
    // 30 triangles (a, b, e) with one boundary side: one arrow each, no 2-cells.
    surface::TriangulationData t;
    for (int k = 0; k < 30; ++k) {
        auto a = "a" + std::to_string(k);
        auto b = "b" + std::to_string(k);
        auto e = "e" + std::to_string(k);
        t.arcs.push_back({a, false});
        t.arcs.push_back({b, false});
        t.boundary.push_back(e);
        t.triangles.push_back({a, b, e});
    }
    auto c = build_cw_complex(t);
    REQUIRE(c.arrows.size() == 30);
    try {
        enumerate_cocycles(c, 1000000);
        FAIL("expected refusal");
    } catch (const RefusalError& e) {
        CHECK(std::string(e.what()).find("kernel dimension 30") != std::string::npos);
    }
}

TEST_CASE("validate_cocycle", "[complex][cocycle]")
{
    auto c = build_cw_complex(load_fixture("typeII"));
    std::map<std::string, int> xi{{"t0.0", 1}, {"t0.1", 1}, {"t0.2", 0}};
    CHECK(validate_cocycle(c, xi));
    xi["t0.1"] = 0;
    CHECK_FALSE(validate_cocycle(c, xi));
    xi.erase("t0.2");
    CHECK_THROWS_AS(validate_cocycle(c, xi), InputError);

    for (const auto& name : corpus_names()) {
        auto cc = build_cw_complex(load_fixture(name));
        CHECK(validate_cocycle(cc, Cocycle{std::vector<std::uint8_t>(cc.arrows.size(), 0)}));
    }
}

TEST_CASE("cocycles serialize by arrow id", "[complex][cocycle]")
{
    auto c = build_cw_complex(load_fixture("typeII"));
    Cocycle xi{{1, 1, 0}};
    auto j = cocycle_to_json(c, xi);
    CHECK(j.dump() == R"({"xi":{"t0.0":1,"t0.1":1,"t0.2":0}})");
    CHECK(cocycle_from_json(c, j) == xi);
    j["xi"].erase("t0.0");
    CHECK_THROWS_AS(cocycle_from_json(c, j), InputError);
}

TEST_CASE("cocycle properties on every fixture", "[complex][property]")
{
    for (const auto& name : corpus_names()) {
        INFO(name);
        auto c = build_cw_complex(load_fixture(name));
        auto b = boundary_matrices(c);
        auto basis = cocycle_basis(c);
        CHECK(basis.size() == c.arrows.size() - b.d2.rank());
        for (const auto& xi : basis)
            CHECK(validate_cocycle(c, xi));
        auto all = enumerate_cocycles(c, 4096);
        CHECK(all.size() == (std::size_t{1} << basis.size()));
        for (const auto& xi : all)
            CHECK(validate_cocycle(c, xi));

        // Coboundaries lie in the cocycle space.
        auto d1t = b.d1.transpose();
        std::set<Cocycle> members(all.begin(), all.end());
        for (std::size_t v = 0; v < c.vertices.size(); ++v) {
            Cocycle cob{std::vector<std::uint8_t>(c.arrows.size(), 0)};
            for (std::size_t a = 0; a < c.arrows.size(); ++a)
                cob.xi[a] = d1t.get(a, v);
            CHECK(members.count(cob) == 1);
        }
    }
}
