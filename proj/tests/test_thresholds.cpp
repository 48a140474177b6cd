#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/geometry.hpp"
#include "eigenbranch/thresholds.hpp"

using namespace eigenbranch;

namespace {

const double pi2 = M_PI * M_PI;

// Independent oracle: smallest root of the Robin characteristic by dense
// sampling in (0, pi/l] followed by bisection, with no reduction by alpha.
double brute_force_mu(const RobinInterval& iv)
{
    const int n = 200000;
    const double top = M_PI / iv.length;
    double prev_a = top / n, prev = robin_characteristic(prev_a, iv);
    for (int i = 2; i <= n; ++i) {
        double a = top * i / n, f = robin_characteristic(a, iv);
        if ((prev > 0) != (f > 0)) {
            double lo = prev_a, hi = a;
            for (int k = 0; k < 200; ++k) {
                double mid = 0.5 * (lo + hi);
                if ((robin_characteristic(mid, iv) > 0) == (prev > 0))
                    lo = mid;
                else
                    hi = mid;
            }
            return 0.25 * (lo + hi) * (lo + hi);
        }
        prev_a = a;
        prev = f;
    }
    return pi2 / (iv.length * iv.length);
}

}  // namespace

TEST_SUITE("thresholds") {

TEST_CASE("Dirichlet interval")
{
    CHECK(dirichlet_interval_mu(1.0) == doctest::Approx(pi2));
    CHECK(dirichlet_interval_mu(2.0) == doctest::Approx(pi2 / 4));
    CHECK_THROWS_AS(dirichlet_interval_mu(0.0), InvalidInput);
    CHECK_THROWS_AS(dirichlet_interval_mu(-1.0), InvalidInput);
}

TEST_CASE("effective coefficient")
{
    CHECK(effective_h(1.0, 0.0) == 1.0);
    CHECK(effective_h(1.0, 1.0) == doctest::Approx(std::sqrt(2.0)));
    CHECK(effective_h(0.0, 5.0) == 0.0);
    CHECK_THROWS_AS(effective_h(-1.0, 0.0), InvalidInput);
}

TEST_CASE("Robin interval: closed-form cases")
{
    CHECK(robin_interval_mu({1.0, 0.0, 0.0}) == 0.0);
    CHECK(robin_interval_mu({1.0, 1e8, 1e8}) == doctest::Approx(pi2).epsilon(1e-4));
    // h1 = h2 = 1, l = 1: alpha solves tan(alpha) = 2 alpha / (alpha^2 - 1); root 1.306542...
    double mu = robin_interval_mu({1.0, 1.0, 1.0});
    CHECK(std::sqrt(mu) == doctest::Approx(1.3065423741888).epsilon(1e-12));
    CHECK(mu > 0);
    CHECK(mu < pi2);
    // Root bracket of the boundary determinant.
    RobinInterval iv{1.0, 1.0, 1.0};
    CHECK(robin_characteristic(1.30, iv) > 0);
    CHECK(robin_characteristic(1.31, iv) < 0);
    CHECK(robin_characteristic(0.0, iv) == 0.0);
    // One side Neumann, other Dirichlet: alpha = pi / (2 l).
    CHECK(robin_interval_mu({2.0, 0.0, 1e9}) == doctest::Approx(pi2 / 16).epsilon(1e-6));
}

TEST_CASE("Robin interval agrees with an independent root scan")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> L(0.3, 3.0), H(0.0, 100.0);
    for (int i = 0; i < 20; ++i) {
        RobinInterval iv{L(rng), H(rng), H(rng)};
        CHECK(robin_interval_mu(iv) == doctest::Approx(brute_force_mu(iv)).epsilon(1e-9));
    }
}

TEST_CASE("Robin interval agrees with the extrapolated P1 Rayleigh oracle")
{
    CHECK(rayleigh_oracle_1d({1.0, 0.0, 0.0}, 1000) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(rayleigh_oracle_1d({1.0, 0.0, 0.0}, 1000)) < 1e-12);
    CHECK(rayleigh_oracle_1d({1.0, 1e8, 1e8}, 10000) == doctest::Approx(pi2).epsilon(1e-3));
    RobinInterval iv{1.0, 1.0, 1.0};
    CHECK(rayleigh_oracle_extrapolated(iv, 1000) == doctest::Approx(robin_interval_mu(iv)).epsilon(1e-6));
    // The unextrapolated oracle converges at second order from above.
    const double exact = robin_interval_mu(iv);
    double e1 = rayleigh_oracle_1d(iv, 100) - exact, e2 = rayleigh_oracle_1d(iv, 200) - exact;
    CHECK(e1 > 0);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("Robin interval: monotone in each coefficient")
{
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            double h1 = 100.0 * i / 9, h2 = 100.0 * j / 9;
            double mu = robin_interval_mu({1.3, h1, h2});
            CHECK(mu >= 0);
            CHECK(mu <= pi2 / (1.3 * 1.3));
            if (i + 1 < 10) CHECK(robin_interval_mu({1.3, 100.0 * (i + 1) / 9, h2}) >= mu);
            if (j + 1 < 10) CHECK(robin_interval_mu({1.3, h1, 100.0 * (j + 1) / 9}) >= mu);
        }
}

TEST_CASE("Robin interval: scaling law")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> L(0.3, 3.0), H(0.0, 50.0);
    for (int i = 0; i < 10; ++i) {
        RobinInterval iv{L(rng), H(rng), H(rng)};
        double mu = robin_interval_mu(iv);
        for (double c : {2.0, 10.0})
            CHECK(robin_interval_mu({c * iv.length, iv.h1 / c, iv.h2 / c}) == doctest::Approx(mu / (c * c)).epsilon(1e-10));
    }
}

TEST_CASE("Robin interval: invalid input")
{
    CHECK_THROWS_AS(robin_interval_mu({0.0, 1.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(robin_interval_mu({1.0, -1.0, 1.0}), InvalidInput);
    CHECK_THROWS_AS(robin_interval_mu({1.0, 1.0, 1.0}, 0.0), InvalidInput);
}

TEST_CASE("threshold curve: constant width")
{
    auto prof = BranchProfile::sample(
        4.0, 17, [](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.5; },
        [](double) { return 0.0; }, false);
    auto c = threshold_curve(prof, BoundaryCondition::dirichlet(), 0.0);
    CHECK(c.mu == doctest::Approx(4 * pi2));
    for (const auto& s : c.samples) CHECK(s.mu == doctest::Approx(4 * pi2));
    CHECK(c.samples.size() == 256);
}

TEST_CASE("threshold curve: right-triangle branch")
{
    auto dom = build_right_triangle(2.0, 1.0, 1.32);
    auto c = threshold_curve(*dom.branch_profile, BoundaryCondition::dirichlet(), 0.0);
    CHECK(c.mu == doctest::Approx(pi2).epsilon(1e-12));
    CHECK(c.argmin_x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(c.samples.back().capped);
    CHECK(c.samples.back().mu == c.cap);
    for (const auto& s : c.samples) CHECK(s.mu >= c.mu);
    // Starting further right raises the threshold to pi^2 / width(z0)^2.
    auto c2 = threshold_curve(*dom.branch_profile, BoundaryCondition::dirichlet(), 1.0);
    double w = dom.branch_profile->width(1.0);
    CHECK(c2.mu == doctest::Approx(pi2 / (w * w)).epsilon(1e-9));
    CHECK(c2.z0 == 1.0);
}

TEST_CASE("threshold curve: sine branch with Robin walls")
{
    auto dom = build_sine_branch_domain(1.54, 5.0, 1.0, wall_samples_for(5.0, 1.0));
    const auto& prof = *dom.branch_profile;
    auto c = threshold_curve(prof, BoundaryCondition::robin(1.0), 0.0, {64, 1e-10});
    for (int k = 0; k < 5; ++k) {
        const auto& s = c.samples[k * 13];
        RobinInterval iv{prof.width(s.x), effective_h(1.0, prof.lower_slope(s.x)), effective_h(1.0, prof.upper_slope(s.x))};
        CHECK(s.mu == doctest::Approx(robin_interval_mu(iv)).epsilon(1e-12));
        // The sampled profile reproduces the closed-form walls closely.
        double he = effective_h(1.0, std::cos(s.x));
        CHECK(s.mu == doctest::Approx(robin_interval_mu({1.0, he, he})).epsilon(1e-6));
    }
    // Steepest wall (x = 0, pi, ...) gives the largest h and hence the largest mu; the
    // infimum sits where the walls are flat, cos(x) = 0.
    CHECK(c.mu == doctest::Approx(robin_interval_mu({1.0, 1.0, 1.0})).epsilon(1e-8));
    CHECK(std::abs(std::cos(c.argmin_x)) < 1e-4);
    for (const auto& s : c.samples) CHECK(s.mu >= c.mu);
}

TEST_CASE("threshold curve from polygon cross-sections")
{
    auto dom = build_right_triangle(2.0, 1.0, 1.32);
    auto c = threshold_curve_domain(dom, 2.0, dom.max_x());
    CHECK(c.mu == doctest::Approx(pi2).epsilon(1e-9));
}

TEST_CASE("threshold curve: argument checks and outputs")
{
    auto dom = build_right_triangle(2.0, 1.0, 1.32);
    const auto& prof = *dom.branch_profile;
    CHECK_THROWS_AS(threshold_curve(prof, BoundaryCondition::dirichlet(), -1.0), InvalidInput);
    CHECK_THROWS_AS(threshold_curve(prof, BoundaryCondition::dirichlet(), prof.length()), InvalidInput);
    CHECK_THROWS_AS(threshold_curve(prof, BoundaryCondition::dirichlet(), 0.0, {8, 1e-10}), InvalidInput);
    auto c = threshold_curve(prof, BoundaryCondition::dirichlet(), 0.0, {32, 1e-10});
    std::ostringstream os;
    write_threshold_csv(os, c);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "x,mu1,capped");
    int rows = 0;
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 32);
    CHECK(threshold_to_json(c) == threshold_to_json(threshold_curve(prof, BoundaryCondition::dirichlet(), 0.0, {32, 1e-10})));
}

}  // TEST_SUITE
