#include <doctest.h>

#include <cmath>
#include <random>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/geometry.hpp"

using namespace eigenbranch;

namespace {

// Brute-force distance field maximum on a fine grid (independent of the
// library's multi-start search).
double brute_inradius(const PlanarDomain& dom, int n)
{
    double best = 0.0;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) {
            Vec2 p{dom.min_x() + (dom.max_x() - dom.min_x()) * i / n, dom.min_y() + (dom.max_y() - dom.min_y()) * j / n};
            if (dom.contains(p)) best = std::max(best, dom.distance_to_boundary(p));
        }
    return best;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("sine branch domain: strip area and constructor errors")
{
    auto dom = build_sine_branch_domain(1.54, 1.0, 1.0, 64);
    CHECK(dom.split_x.has_value());
    CHECK(*dom.split_x == 0.0);
    REQUIRE(dom.branch_profile);
    CHECK(dom.branch_profile->length() == 1.0);
    // The branch is a sheared strip, so its area is a*b regardless of the wall.
    CHECK(dom.area() == doctest::Approx(1.54 * 1.54 + 1.0).epsilon(1e-12));
    for (const auto& m : dom.markers) CHECK(m.is_dirichlet());

    CHECK_THROWS_AS(build_sine_branch_domain(1.54, 0.0, 1.0, 64), GeometryError);
    CHECK_THROWS_AS(build_sine_branch_domain(1.0, 1.0, 1.5, 64), GeometryError);
    CHECK_THROWS_AS(build_sine_branch_domain(1.54, 1.0, 1.0, 8), GeometryError);

    auto long_dom = build_sine_branch_domain(1.54, 20.0, 1.0, 512);
    CHECK(std::abs(shoelace_area(long_dom.boundary) - (1.54 * 1.54 + 20.0)) < 1e-3);
}

TEST_CASE("star domain construction")
{
    auto star = build_star_domain(51, 1.0, 1.5, 0.08, 1024);
    CHECK(star.size() > 51 * 3);
    CHECK(shoelace_area(star.boundary) > 0);
    auto small = build_star_domain(3, 1.0, 1.0, 0.5, 256);
    CHECK(small.area() > M_PI * 0.9);
    // 51 chords of width 0.5 cannot fit on the unit circle (51*0.5 > 2*pi).
    CHECK(51 * 0.5 > 2 * M_PI);
    CHECK_THROWS_AS(build_star_domain(51, 1.0, 1.5, 0.5, 1024), GeometryError);
    CHECK_THROWS_AS(build_star_domain(2, 1.0, 1.5, 0.1, 1024), GeometryError);
}

TEST_CASE("right triangle: hypotenuse leg and cross-sections")
{
    auto tri = build_right_triangle(2.0, 1.0, 1.32);
    CHECK(tri.boundary[1].x == doctest::Approx(8.25).epsilon(1e-13));
    CHECK(*tri.split_x == 2.0);
    auto t4 = build_right_triangle(4.0, 1.0, 1.07);
    CHECK(t4.boundary[1].x == doctest::Approx(61.14).epsilon(1e-4));
    CHECK_THROWS_AS(build_right_triangle(2.0, 1.0, 1.0), GeometryError);
    CHECK(tri.area() == doctest::Approx(8.25 * 1.32 / 2).epsilon(1e-13));

    for (double x : {0.1, 0.5, 1.0, 1.7, 2.0}) {
        auto cs = cross_section(tri, x);
        REQUIRE(cs.intervals.size() == 1);
        CHECK(cs.total_length() == doctest::Approx(1.32 - x * 0.32 / 2.0).epsilon(1e-12));
    }
    CHECK(cross_section(tri, 2.0).total_length() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cross_section(tri, 9.25).empty());

    auto mono = branch_wall_monotonicity(*tri.branch_profile);
    CHECK(mono.monotone);
    CHECK(mono.closed);
    CHECK(outward_normal_condition(tri));
}

TEST_CASE("cross-sections of the sine domain")
{
    auto dom = build_sine_branch_domain(1.54, 5.0, 1.0, wall_samples_for(5.0, 1.0));
    // pi/2 is not a sample, so compare within the polyline sagitta.
    auto cs = cross_section(dom, M_PI / 2);
    REQUIRE(cs.intervals.size() == 1);
    CHECK(cs.intervals[0].lo == doctest::Approx(1.0).epsilon(2e-4));
    CHECK(cs.intervals[0].hi == doctest::Approx(2.0).epsilon(2e-4));
    CHECK(cross_section(dom, 7.0).empty());

    // Continuity of the chord length in x.
    double prev = cross_section(dom, -1.5).total_length();
    for (int i = 1; i <= 600; ++i) {
        double x = -1.5 + 6.4 * i / 600;
        double len = cross_section(dom, x).total_length();
        if (std::abs(x) > 0.02) CHECK(std::abs(len - prev) < 0.05);
        prev = len;
    }

    auto mono = branch_wall_monotonicity(*dom.branch_profile);
    CHECK_FALSE(mono.monotone);
    CHECK_FALSE(mono.closed);
    CHECK_FALSE(outward_normal_condition(dom));
}

TEST_CASE("branch profile slopes agree with finite differences")
{
    auto dom = build_sine_branch_domain(1.54, 5.0, 1.0, 177);
    const auto& p = *dom.branch_profile;
    auto lo = p.lower_samples();
    for (std::size_t i = 1; i + 1 < lo.size(); ++i) {
        double fd = (lo[i + 1].y - lo[i - 1].y) / (lo[i + 1].x - lo[i - 1].x);
        CHECK(std::abs(fd - lo[i].slope) < 1e-3);
    }
    CHECK(p.lower(1.234) == doctest::Approx(std::sin(1.234)).epsilon(1e-8));
    CHECK(p.upper_slope(2.5) == doctest::Approx(std::cos(2.5)).epsilon(1e-6));
}

TEST_CASE("polygon builder")
{
    auto hex = build_elongated_polygon(default_hexagon_vertices(), default_hexagon_split);
    CHECK(hex.split_x.value() == 5.0);
    CHECK(build_elongated_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 0.5).area() == doctest::Approx(1.0));
    // Clockwise input is reoriented.
    CHECK(build_elongated_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, 0.5).area() == doctest::Approx(1.0));
    CHECK_THROWS_AS(build_elongated_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}, 0.5), GeometryError);
}

TEST_CASE("inradius")
{
    auto sq = build_rectangle(1.54, 1.54);
    CHECK(std::abs(inradius(sq, 1e-5) - 0.77) < 1e-4);
    auto disk = build_disk(1.0, 1024);
    CHECK(std::abs(inradius(disk, 1e-5) - 1.0) < 1e-4);

    auto dom = build_sine_branch_domain(1.54, 20.0, 1.0, 512);
    double rho = inradius(dom, 1e-5);
    CHECK(std::abs(rho - 0.77) < 1e-4);
    CHECK(rho >= brute_inradius(dom, 400) - 1e-9);
    // Monotone under inclusion of the square into the full domain.
    CHECK(inradius(sq, 1e-5) <= rho + 1e-4);
}

TEST_CASE("inradius localization predicate")
{
    CHECK(inradius_localization_predicate(0.77, 1.0));
    CHECK_FALSE(inradius_localization_predicate(0.76, 1.0));
    CHECK_FALSE(inradius_localization_predicate(bessel_j0_first_zero / M_PI, 1.0));
    CHECK_FALSE(inradius_localization_predicate(0.5, 1.0));
    CHECK(bessel_j0_first_zero == doctest::Approx(2.4048).epsilon(1e-4));
}

TEST_CASE("property: random rectangles have consistent area and sections")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.2, 5.0);
    for (int k = 0; k < 50; ++k) {
        double w = U(rng), h = U(rng);
        auto r = build_rectangle(w, h);
        CHECK(r.area() == doctest::Approx(w * h).epsilon(1e-13));
        CHECK(cross_section(r, 0.5 * w).total_length() == doctest::Approx(h).epsilon(1e-13));
        CHECK(inradius(r, 1e-4) == doctest::Approx(0.5 * std::min(w, h)).epsilon(2e-4));
    }
}

}  // TEST_SUITE
