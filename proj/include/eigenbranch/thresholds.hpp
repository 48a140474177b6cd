#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eigenbranch/geometry.hpp"

namespace eigenbranch {

double dirichlet_interval_mu(double length);

// Slope-corrected coefficient h * sqrt(1 + y'^2) seen by the 1D cross-section problem.
double effective_h(double h, double slope);

struct RobinInterval {
    double length;
    double h1;  // lower end
    double h2;  // upper end
};

/// Boundary determinant of v = c1 cos(alpha y) + c2 sin(alpha y) under
/// v' - h1 v = 0 at the lower end and v' + h2 v = 0 at the upper end:
///   (h1 h2 - alpha^2) sin(alpha l) + alpha (h1 + h2) cos(alpha l).
double robin_characteristic(double alpha, const RobinInterval& iv);

/// First Robin eigenvalue alpha^2 of the interval; 0 exactly for Neumann.
/// `tol` bounds the final bracket width in alpha, relative to 1/l.
double robin_interval_mu(const RobinInterval& iv, double tol = 1e-13);

/// Smallest eigenvalue of the P1 discretisation (n elements) of
///   (int v'^2 + h1 v(y1)^2 + h2 v(y2)^2) / int v^2,
/// computed by Sturm-count bisection on the tridiagonal pencil.
double rayleigh_oracle_1d(const RobinInterval& iv, int n);

/// Romberg extrapolation of rayleigh_oracle_1d over n, 2n, 4n (error O(n^-6)).
double rayleigh_oracle_extrapolated(const RobinInterval& iv, int n);

struct ThresholdSample {
    double x;
    double mu;
    bool capped;
};

struct ThresholdCurve {
    std::vector<ThresholdSample> samples;
    double mu = 0.0;        // infimum after golden-section refinement
    double argmin_x = 0.0;
    double z0 = 0.0;
    double cap = 0.0;
};

struct ThresholdOptions {
    int n_samples = 256;
    double x_rel_tol = 1e-10;  // golden-section stopping width relative to the branch length
};

/// mu_1(x) along a branch in local coordinates x in [z0, a]. Dirichlet walls use
/// pi^2/l^2; Robin walls the first root with h_i = effective_h(h, y_i'). Values
/// are capped at 1e6/a^2 near a closing tip.
ThresholdCurve threshold_curve(const BranchProfile& profile, const BoundaryCondition& bc, double z0,
                               const ThresholdOptions& opt = {});

/// Dirichlet threshold from the polygon's own vertical cross-sections over
/// [x_from, x_to] (global coordinates); for branches without a sampled profile.
ThresholdCurve threshold_curve_domain(const PlanarDomain& dom, double x_from, double x_to,
                                      const ThresholdOptions& opt = {});

std::string threshold_to_json(const ThresholdCurve& curve);
void write_threshold_csv(std::ostream& os, const ThresholdCurve& curve);

}  // namespace eigenbranch
