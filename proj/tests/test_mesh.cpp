#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/geometry.hpp"
#include "eigenbranch/mesh.hpp"

using namespace eigenbranch;

namespace {

int count_edges(const Mesh& m)
{
    std::set<std::pair<int, int>> e;
    for (const auto& t : m.triangles)
        for (int k = 0; k < 3; ++k) e.insert(std::minmax(t[k], t[(k + 1) % 3]));
    return static_cast<int>(e.size());
}

void check_invariants(const Mesh& m, const PlanarDomain& dom, double h)
{
    CHECK(check_mesh(m, dom) == "");
    auto q = mesh_quality(m, dom);
    CHECK(q.min_signed_area > 0);
    CHECK(q.min_angle_regular_deg >= 20.0 - 1e-9);
    CHECK(m.h_max <= 1.5 * h);
    CHECK(m.total_area() == doctest::Approx(shoelace_area(dom.boundary)).epsilon(1e-12));
    const int V = static_cast<int>(m.vertices.size()), F = static_cast<int>(m.triangles.size());
    CHECK(V - count_edges(m) + F == 1);
}

}  // namespace

TEST_SUITE("mesh") {

TEST_CASE("unit square at h = 0.1")
{
    auto sq = build_rectangle(1.0, 1.0);
    auto m = triangulate(sq, 0.1);
    check_invariants(m, sq, 0.1);
    // Equilateral triangles of side h cover area/(h^2 sqrt(3)/4) ~ 231.
    CHECK(m.triangles.size() >= 150);
    CHECK(m.triangles.size() <= 400);
    CHECK(mesh_quality(m, sq).min_angle_deg >= 20.0);
}

TEST_CASE("coarse target still yields a valid mesh")
{
    auto sq = build_rectangle(1.0, 1.0);
    auto m = triangulate(sq, 10.0);
    CHECK(m.triangles.size() >= 2);
    CHECK(check_mesh(m, sq) == "");
    CHECK(mesh_quality(m, sq).min_angle_deg >= 20.0);
}

TEST_CASE("sine domain markers are inherited")
{
    auto dom = build_sine_branch_domain(1.54, 5.0, 1.0, wall_samples_for(5.0, 1.0));
    set_boundary_condition(dom, BoundaryCondition::robin(2.0));
    auto m = triangulate(dom, 0.05);
    check_invariants(m, dom, 0.05);
    for (const auto& e : m.boundary_edges) CHECK(e.bc == BoundaryCondition::robin(2.0));
}

TEST_CASE("sharp corners: right triangle, star and hexagon")
{
    auto tri = build_right_triangle(2.0, 1.0, 1.32);
    auto mt = triangulate(tri, 0.05);
    check_invariants(mt, tri, 0.05);

    auto star = build_star_domain(13, 1.0, 1.5, 0.08, 256);
    auto ms = triangulate(star, 0.08);
    check_invariants(ms, star, 0.08);

    auto hex = build_elongated_polygon(default_hexagon_vertices(), default_hexagon_split);
    auto mh = triangulate(hex, 0.1);
    check_invariants(mh, hex, 0.1);
}

TEST_CASE("red refinement")
{
    Mesh two;
    two.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    two.triangles = {{{0, 1, 2}}, {{0, 2, 3}}};
    for (int i = 0; i < 4; ++i) two.boundary_edges.push_back({{i, (i + 1) % 4}, BoundaryCondition::dirichlet()});
    two.update_h_max();
    auto r = refine(two);
    CHECK(r.triangles.size() == 8);
    CHECK(r.vertices.size() == 9);
    CHECK(r.boundary_edges.size() == 8);
    CHECK(r.h_max == doctest::Approx(two.h_max / 2));

    auto sq = build_rectangle(1.0, 1.0);
    CHECK(check_mesh(r, sq) == "");

    auto dom = build_right_triangle(2.0, 1.0, 1.32);
    auto m = triangulate(dom, 0.2);
    auto mr = refine(m);
    CHECK(mr.triangles.size() == 4 * m.triangles.size());
    CHECK(mr.vertices.size() == m.vertices.size() + count_edges(m));
    CHECK(mesh_quality(mr, dom).min_angle_deg == doctest::Approx(mesh_quality(m, dom).min_angle_deg).epsilon(1e-9));
    CHECK(mr.total_area() == doctest::Approx(m.total_area()).epsilon(1e-12));
    CHECK(check_mesh(mr, dom) == "");
}

TEST_CASE("point location")
{
    auto sq = build_rectangle(1.0, 1.0);
    auto m = triangulate(sq, 0.25);
    PointLocator loc(m);
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& v = m.triangles[t];
        Vec2 c = (m.vertices[v[0]] + m.vertices[v[1]] + m.vertices[v[2]]) * (1.0 / 3.0);
        auto r = locate(m, c);
        REQUIRE(r);
        CHECK(r->triangle == static_cast<int>(t));
        for (double b : r->bary) CHECK(b == doctest::Approx(1.0 / 3.0));
        auto r2 = loc.locate(c);
        REQUIRE(r2);
        CHECK(r2->triangle == r->triangle);
    }
    CHECK_FALSE(locate(m, {2.0, 2.0}));
    CHECK_FALSE(loc.locate({-0.5, 0.3}));

    // Shared-edge midpoint resolves to the lower-index neighbour.
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const auto& v = m.triangles[t];
        for (int k = 0; k < 3; ++k) {
            Vec2 mid = (m.vertices[v[k]] + m.vertices[v[(k + 1) % 3]]) * 0.5;
            auto r = locate(m, mid);
            REQUIRE(r);
            CHECK(r->triangle <= static_cast<int>(t));
            CHECK(loc.locate(mid)->triangle == r->triangle);
        }
    }
}

TEST_CASE("mesh text and json round trip")
{
    auto dom = build_right_triangle(2.0, 1.0, 1.32);
    auto m = triangulate(dom, 0.3);
    std::stringstream ss;
    write_mesh_text(ss, m);
    auto back = read_mesh_text(ss);
    CHECK(back.triangles == m.triangles);
    REQUIRE(back.vertices.size() == m.vertices.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) CHECK(distance(back.vertices[i], m.vertices[i]) < 1e-11);

    auto j = mesh_from_json(mesh_to_json(m));
    CHECK(j.vertices == m.vertices);
    CHECK(j.triangles == m.triangles);
    CHECK(j.boundary_edges.size() == m.boundary_edges.size());

    std::stringstream bad("vertices 2\n0 0\n1");
    CHECK_THROWS_AS(read_mesh_text(bad), DataError);
    CHECK_THROWS_AS(mesh_from_json("{\"vertices\":[[0,0]],\"triangles\":[[0,1,2]],\"boundary_edges\":[]}"), DataError);
}

}  // TEST_SUITE
