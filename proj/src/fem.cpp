#include "eigenbranch/fem.hpp"

#include <ostream>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"
#include "eigenbranch/parallel.hpp"

namespace eigenbranch {

SparseSymMatrix::SparseSymMatrix(Storage m) : m_(std::move(m))
{
    m_.makeCompressed();
}

double SparseSymMatrix::trace() const
{
    return m_.diagonal().sum();
}

double SparseSymMatrix::max_diagonal() const
{
    return m_.rows() ? m_.diagonal().cwiseAbs().maxCoeff() : 0.0;
}

void SparseSymMatrix::write_coo(std::ostream& os) const
{
    os << m_.rows() << ' ' << m_.cols() << ' ' << m_.nonZeros() << '\n';
    for (int k = 0; k < m_.outerSize(); ++k)
        for (Storage::InnerIterator it(m_, k); it; ++it)
            os << it.row() << ' ' << it.col() << ' ' << format_sci(it.value()) << '\n';
}

Eigen::VectorXd AssembledSystem::restrict(const Eigen::VectorXd& u) const
{
    if (u.size() == size()) return u;
    if (u.size() != n_vertices) throw InvalidInput("vector length matches neither the mesh nor the free dofs");
    Eigen::VectorXd r(size());
    for (int i = 0; i < size(); ++i) r[i] = u[free_dofs[i]];
    return r;
}

Eigen::VectorXd AssembledSystem::extend(const Eigen::VectorXd& reduced) const
{
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n_vertices);
    for (int i = 0; i < size(); ++i) u[free_dofs[i]] = reduced[i];
    return u;
}

namespace {

struct ElementBlocks {
    double k[3][3];
    double m[3][3];
};

ElementBlocks element(const Mesh& mesh, std::size_t t)
{
    const auto& v = mesh.triangles[t];
    Vec2 p[3] = {mesh.vertices[v[0]], mesh.vertices[v[1]], mesh.vertices[v[2]]};
    double area = 0.5 * orient(p[0], p[1], p[2]);
    // Gradient of the hat at vertex i is perp(p[i+2] - p[i+1]) / (2 area).
    Vec2 e[3];
    for (int i = 0; i < 3; ++i) e[i] = p[(i + 2) % 3] - p[(i + 1) % 3];
    ElementBlocks b;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            b.k[i][j] = dot(e[i], e[j]) / (4 * area);
            b.m[i][j] = area / 12.0 * (i == j ? 2.0 : 1.0);
        }
    return b;
}

}  // namespace

AssembledSystem assemble(const Mesh& mesh)
{
    const int nv = static_cast<int>(mesh.vertices.size());
    std::vector<char> fixed(nv, 0);
    bool any_dirichlet = false;
    for (const auto& e : mesh.boundary_edges) {
        if (e.bc.is_dirichlet()) {
            fixed[e.v[0]] = fixed[e.v[1]] = 1;
            any_dirichlet = true;
        } else if (!(e.bc.h >= 0)) {
            throw InvalidInput("assemble: Robin coefficient must be nonnegative");
        }
    }

    AssembledSystem sys;
    sys.n_vertices = nv;
    sys.has_dirichlet = any_dirichlet;
    std::vector<int> reduced(nv, -1);
    for (int i = 0; i < nv; ++i)
        if (!fixed[i]) {
            reduced[i] = static_cast<int>(sys.free_dofs.size());
            sys.free_dofs.push_back(i);
        }
    if (sys.free_dofs.empty()) throw InvalidInput("assemble: over-constrained system, no free degrees of freedom");
    const int n = sys.size();

    // Element blocks are computed in parallel into indexed slots; the triplet
    // lists are then built serially in element order, so the summation order
    // never depends on the schedule.
    std::vector<ElementBlocks> blocks(mesh.triangles.size());
    parallel_for(blocks.size(), [&](std::size_t t) { blocks[t] = element(mesh, t); });

    using Trip = Eigen::Triplet<double>;
    std::vector<Trip> kt, mt, rt;
    kt.reserve(9 * blocks.size());
    mt.reserve(9 * blocks.size());
    for (std::size_t t = 0; t < blocks.size(); ++t) {
        const auto& v = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            int ri = reduced[v[i]];
            if (ri < 0) continue;
            for (int j = 0; j < 3; ++j) {
                int rj = reduced[v[j]];
                if (rj < 0) continue;
                kt.emplace_back(ri, rj, blocks[t].k[i][j]);
                mt.emplace_back(ri, rj, blocks[t].m[i][j]);
            }
        }
    }
    for (const auto& e : mesh.boundary_edges) {
        if (e.bc.is_dirichlet() || e.bc.h == 0.0) continue;
        int a = reduced[e.v[0]], b = reduced[e.v[1]];
        double len = distance(mesh.vertices[e.v[0]], mesh.vertices[e.v[1]]);
        double d = e.bc.h * len / 3.0, o = e.bc.h * len / 6.0;
        if (a >= 0) rt.emplace_back(a, a, d);
        if (b >= 0) rt.emplace_back(b, b, d);
        if (a >= 0 && b >= 0) {
            rt.emplace_back(a, b, o);
            rt.emplace_back(b, a, o);
        }
    }

    SparseSymMatrix::Storage K(n, n), M(n, n), R(n, n);
    K.setFromTriplets(kt.begin(), kt.end());
    M.setFromTriplets(mt.begin(), mt.end());
    R.setFromTriplets(rt.begin(), rt.end());
    sys.K = SparseSymMatrix(std::move(K));
    sys.M = SparseSymMatrix(std::move(M));
    sys.R = SparseSymMatrix(std::move(R));
    return sys;
}

double rayleigh(const AssembledSystem& sys, const Eigen::VectorXd& u)
{
    Eigen::VectorXd r = sys.restrict(u);
    double den = r.dot(sys.M.apply(r));
    if (!(den > 0)) throw InvalidInput("rayleigh: vector vanishes on the free dofs");
    return (r.dot(sys.K.apply(r)) + r.dot(sys.R.apply(r))) / den;
}

}  // namespace eigenbranch
