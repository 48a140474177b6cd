#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "eigenbranch/mesh.hpp"

namespace eigenbranch {

/// L2 norm of the P1 field over the vertical chord x = const (exact per element).
double slice_norm(const Mesh& mesh, const Eigen::VectorXd& u, double x);

/// L2 norm of the P1 field along the straight segment p -> q, restricted to the mesh.
double segment_norm(const Mesh& mesh, const Eigen::VectorXd& u, Vec2 p, Vec2 q);

/// L2 norm of the P1 field over {x > x0}; straddling elements are clipped.
double tail_norm(const Mesh& mesh, const Eigen::VectorXd& u, double x0);

/// sqrt(u' M u) over the whole mesh.
double mesh_l2_norm(const Mesh& mesh, const Eigen::VectorXd& u);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct DecayOptions {
    int grid_points = 64;
    double tol_cert = 0.02;     // multiplicative slack on the bound
    double floor_rel = 1e-13;   // slices whose bound is below floor_rel * ||u||_M are excluded
};

struct DecayReport {
    std::string theorem;  // "slice" or "tail"
    std::vector<double> z_grid;
    std::vector<double> slice_norms;
    std::vector<double> tail_norms;
    std::vector<double> bounds;   // on the certified quantity
    std::vector<double> margins;  // bound - measured; NaN where excluded. Violation: measured > bound (1 + tol)
    double mu = 0.0, lambda = 0.0, z0 = 0.0, beta = 0.0, tol_cert = 0.0;
    std::optional<double> fitted_rate;
    int checked = 0;
    int excluded = 0;
    int violations = 0;
    Verdict verdict = Verdict::not_applicable;
};

/// Slice-norm bound ||u||_Q(z) <= ||u||_Q(z0) exp(-beta sqrt(mu - lambda)(z - z0)),
/// beta = 1 for monotone branches, 1/sqrt(2) otherwise.
DecayReport certify_theorem1(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu, double z0,
                             bool monotone, const DecayOptions& opt = {});

/// Tail-norm bound with beta = 1/sqrt(2).
DecayReport certify_theorem2(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu, double x0,
                             const DecayOptions& opt = {});

struct MaslovReport {
    std::vector<double> x;
    std::vector<double> I;       // tail energy
    std::vector<double> dI;      // -slice^2
    std::vector<double> d2I;     // centred second differences (NaN at the ends)
    std::vector<double> tol;     // per-point tolerance
    int interior_points = 0;
    int satisfied = 0;
    double fraction = 0.0;
    double end_I = 0.0;          // |I(a)| / I(x0)
    double end_dI = 0.0;         // |I'(a)| / I(x0)
    bool decreasing = false;     // I' < 0 wherever I > 1e-10 I(x0)
    bool holds = false;          // fraction >= 0.95 and endpoint relations
};

MaslovReport maslov_check(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu,
                          const std::vector<double>& x_grid);

/// Magnitude of the least-squares slope of log(norm) vs z over norms in
/// [1e-12, 0.1 max]; entries below 1e-13 are dropped. Needs 8 usable points.
double fit_decay_rate(const std::vector<double>& z, const std::vector<double>& norms);

std::string decay_report_to_json(const DecayReport& r);
void write_decay_csv(std::ostream& os, const DecayReport& r);
std::string maslov_report_to_json(const MaslovReport& r);

}  // namespace eigenbranch
