#include "eigenbranch/eigensolver.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SparseCholesky>
#include <json.hpp>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"

namespace eigenbranch {

namespace {

using SpMat = SparseSymMatrix::Storage;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class ShiftedSolver {
public:
    // Factors A - sigma M; false on breakdown (failed or numerically singular pivots).
    bool factor(const SpMat& A, const SpMat& M, double sigma)
    {
        SpMat S = A - sigma * M;
        ldlt_.compute(S);
        if (ldlt_.info() != Eigen::Success) return false;
        const Vec& d = ldlt_.vectorD();
        double dmax = d.cwiseAbs().maxCoeff();
        return std::isfinite(dmax) && d.cwiseAbs().minCoeff() > 1e-13 * dmax;
    }
    Mat solve(const Mat& b) const { return ldlt_.solve(b); }

private:
    Eigen::SimplicialLDLT<SpMat> ldlt_;
};

double uniform_pm1(std::mt19937_64& rng)
{
    // 53 random bits mapped to [-1, 1); independent of the standard library's
    // distribution implementations.
    return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

double residual_of(const SpMat& A, const SpMat& M, double lambda, const Vec& u, double floor_scale)
{
    Vec au = A * u, mu = M * u;
    double den = au.norm() + std::abs(lambda) * mu.norm() + floor_scale * u.norm();
    return (au - lambda * mu).norm() / den;
}

}  // namespace

double relative_residual(const AssembledSystem& sys, double lambda, const Eigen::VectorXd& u)
{
    SpMat A = sys.stiffness_plus_robin();
    double floor_scale = 1e-7 * A.diagonal().cwiseAbs().maxCoeff();
    return residual_of(A, sys.M.eigen(), lambda, sys.restrict(u), floor_scale);
}

std::vector<EigenPair> smallest_eigenpairs(const AssembledSystem& sys, int k, double tol, const EigenOptions& opt)
{
    const int n = sys.size();
    if (k < 1) throw InvalidInput("eigensolver: k must be at least 1");
    if (k >= n) throw InvalidInput("eigensolver: k must be smaller than the number of free dofs");
    if (!(tol > 0) || tol > 1e-4) throw InvalidInput("eigensolver: tol must lie in (0, 1e-4]");
    if (opt.max_iter < 1) throw InvalidInput("eigensolver: max_iter must be positive");

    const SpMat A = sys.stiffness_plus_robin();
    const SpMat& M = sys.M.eigen();
    const double floor_scale = 1e-7 * A.diagonal().cwiseAbs().maxCoeff();

    ShiftedSolver solver;
    const bool pure_neumann = !sys.has_dirichlet && sys.R.nonzeros() == 0;
    if (pure_neumann || !solver.factor(A, M, 0.0)) {
        double sigma = -1e-6 * sys.K.trace() / sys.M.trace();
        if (!solver.factor(A, M, sigma))
            throw FactorizationError("eigensolver: shifted operator is singular even after the fallback shift");
    }

    const int p = std::min(n, std::max(2 * k, k + 8));
    std::mt19937_64 rng(opt.seed);
    Mat X(n, p);
    for (int j = 0; j < p; ++j)
        for (int i = 0; i < n; ++i) X(i, j) = uniform_pm1(rng);

    std::vector<double> best(k, std::numeric_limits<double>::infinity());
    for (int it = 0; it < opt.max_iter; ++it) {
        Mat Y = solver.solve(M * X);
        Eigen::HouseholderQR<Mat> qr(Y);
        Mat Q = qr.householderQ() * Mat::Identity(n, p);

        Mat Ar = Q.transpose() * (A * Q);
        Mat Mr = Q.transpose() * (M * Q);
        Ar = 0.5 * (Ar + Ar.transpose());
        Mr = 0.5 * (Mr + Mr.transpose());
        Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(Ar, Mr);
        if (ges.info() != Eigen::Success) throw FactorizationError("eigensolver: Rayleigh-Ritz step failed");
        X = Q * ges.eigenvectors();

        bool done = true;
        for (int i = 0; i < k; ++i) {
            double r = residual_of(A, M, ges.eigenvalues()[i], X.col(i), floor_scale);
            best[i] = std::min(best[i], r);
            done = done && r <= tol;
        }
        if (!done) continue;

        std::vector<EigenPair> out;
        for (int i = 0; i < k; ++i) {
            Vec u = X.col(i);
            u /= std::sqrt(u.dot(M * u));
            Eigen::Index imax = 0;
            u.cwiseAbs().maxCoeff(&imax);
            if (u[imax] < 0) u = -u;
            EigenPair pair;
            pair.lambda = u.dot(A * u);
            pair.residual = residual_of(A, M, pair.lambda, u, floor_scale);
            pair.u = sys.extend(u);
            pair.index = i + 1;
            out.push_back(std::move(pair));
        }
        return out;
    }
    std::ostringstream msg;
    msg << "eigensolver: no convergence after " << opt.max_iter << " iterations (tol " << format_sci(tol) << ")";
    throw ConvergenceError(msg.str(), best);
}

std::string eigenpairs_to_json(const std::vector<EigenPair>& pairs)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : pairs)
        arr.push_back({{"index", p.index}, {"lambda", round_sci(p.lambda)}, {"residual", round_sci(p.residual)}});
    return nlohmann::json{{"eigenpairs", arr}}.dump(2);
}

void write_eigenvector(std::ostream& os, const EigenPair& pair)
{
    for (Eigen::Index i = 0; i < pair.u.size(); ++i) os << format_sci(pair.u[i]) << '\n';
}

Eigen::VectorXd read_eigenvector(std::istream& is, std::size_t expected_size)
{
    std::vector<double> vals;
    std::string tok;
    while (is >> tok) {
        double v = 0.0;
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            throw DataError("eigenvector: unparsable entry '" + tok + "'");
        if (!std::isfinite(v)) throw DataError("eigenvector: non-finite entry");
        vals.push_back(v);
    }
    if (vals.size() != expected_size)
        throw DataError("eigenvector: expected " + std::to_string(expected_size) + " values, found " +
                        std::to_string(vals.size()));
    return Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

}  // namespace eigenbranch
