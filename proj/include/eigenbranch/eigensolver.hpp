#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "eigenbranch/fem.hpp"

namespace eigenbranch {

inline constexpr std::uint64_t default_seed = 0x5eed;

struct EigenPair {
    double lambda = 0.0;
    Eigen::VectorXd u;  // over all mesh vertices, zero at Dirichlet vertices; u'Mu = 1
    double residual = 0.0;
    int index = 0;  // 1-based
};

struct EigenOptions {
    std::uint64_t seed = default_seed;
    int max_iter = 500;
};

/// k smallest eigenpairs of (K+R)u = lambda M u by shift-invert block subspace
/// iteration with Rayleigh-Ritz. Converged when every relative residual is at
/// most tol. Throws ConvergenceError (with the best residuals seen) otherwise.
std::vector<EigenPair> smallest_eigenpairs(const AssembledSystem& sys, int k, double tol,
                                           const EigenOptions& opt = {});

/// ||Au - lambda Mu|| / (||Au|| + |lambda| ||Mu|| + floor), with A = K+R.
/// The floor, 1e-7 * max diag(A) * ||u||, sits just above the rounding level of
/// Au so that exact kernel vectors (lambda = 0) are measurable; it scales like A.
double relative_residual(const AssembledSystem& sys, double lambda, const Eigen::VectorXd& u);

std::string eigenpairs_to_json(const std::vector<EigenPair>& pairs);
// One value per line, mesh vertex order.
void write_eigenvector(std::ostream& os, const EigenPair& pair);
Eigen::VectorXd read_eigenvector(std::istream& is, std::size_t expected_size);

}  // namespace eigenbranch
