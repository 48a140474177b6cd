#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "eigenbranch/mesh.hpp"

namespace eigenbranch {

/// Symmetric sparse matrix with both triangles stored (compressed columns).
class SparseSymMatrix {
public:
    using Storage = Eigen::SparseMatrix<double>;

    SparseSymMatrix() = default;
    explicit SparseSymMatrix(Storage m);

    int size() const { return static_cast<int>(m_.rows()); }
    long nonzeros() const { return m_.nonZeros(); }
    double operator()(int i, int j) const { return m_.coeff(i, j); }
    const Storage& eigen() const { return m_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return m_ * x; }
    double trace() const;
    double max_diagonal() const;

    // Coordinate dump, one "row col value" line per stored entry (0-based).
    void write_coo(std::ostream& os) const;

private:
    Storage m_;
};

/// Reduced P1 system: K, M, R act on the free (non-Dirichlet) vertices only.
struct AssembledSystem {
    SparseSymMatrix K;
    SparseSymMatrix M;
    SparseSymMatrix R;
    std::vector<int> free_dofs;  // reduced index -> mesh vertex
    int n_vertices = 0;
    bool has_dirichlet = false;

    int size() const { return static_cast<int>(free_dofs.size()); }
    SparseSymMatrix::Storage stiffness_plus_robin() const { return K.eigen() + R.eigen(); }

    // Accepts vectors over all mesh vertices or over free dofs.
    Eigen::VectorXd restrict(const Eigen::VectorXd& u) const;
    Eigen::VectorXd extend(const Eigen::VectorXd& reduced) const;
};

/// Exact P1 stiffness, consistent mass and Robin edge mass (h constant per edge).
/// Vertices touching a Dirichlet edge are eliminated.
AssembledSystem assemble(const Mesh& mesh);

/// (u'(K+R)u) / (u'Mu).
double rayleigh(const AssembledSystem& sys, const Eigen::VectorXd& u);

}  // namespace eigenbranch
