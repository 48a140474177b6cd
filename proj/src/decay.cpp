#include "eigenbranch/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"
#include "eigenbranch/parallel.hpp"

namespace eigenbranch {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Piece {
    double t0, t1, u0, u1;
};

void check_field(const Mesh& mesh, const Eigen::VectorXd& u)
{
    if (static_cast<std::size_t>(u.size()) != mesh.vertices.size())
        throw InvalidInput("field length does not match the mesh vertex count");
}

// Value at p of the linear interpolant on triangle t.
double eval_on(const Mesh& mesh, const Eigen::VectorXd& u, std::size_t t, Vec2 p)
{
    const auto& v = mesh.triangles[t];
    Vec2 a = mesh.vertices[v[0]], b = mesh.vertices[v[1]], c = mesh.vertices[v[2]];
    double area2 = orient(a, b, c);
    return (orient(p, b, c) * u[v[0]] + orient(a, p, c) * u[v[1]] + orient(a, b, p) * u[v[2]]) / area2;
}

// Integral of a linear function squared over [0, len] with end values a, b.
double line_quad(double len, double a, double b)
{
    return len * (a * a + a * b + b * b) / 3.0;
}

// Integral of a linear function squared over a triangle with vertex values.
double tri_quad(double area, double a, double b, double c)
{
    return area / 6.0 * (a * a + b * b + c * c + a * b + b * c + c * a);
}

double tail_integral(const Mesh& mesh, const Eigen::VectorXd& u, double x0)
{
    std::vector<double> part(mesh.triangles.size(), 0.0);
    parallel_for(part.size(), [&](std::size_t t) {
        const auto& v = mesh.triangles[t];
        Vec2 p[3] = {mesh.vertices[v[0]], mesh.vertices[v[1]], mesh.vertices[v[2]]};
        double w[3] = {u[v[0]], u[v[1]], u[v[2]]};
        double xmin = std::min({p[0].x, p[1].x, p[2].x}), xmax = std::max({p[0].x, p[1].x, p[2].x});
        if (xmax <= x0) return;
        if (xmin >= x0) {
            part[t] = tri_quad(0.5 * orient(p[0], p[1], p[2]), w[0], w[1], w[2]);
            return;
        }
        // Clip against x >= x0 and fan the resulting convex polygon.
        Vec2 poly[4];
        double val[4];
        int m = 0;
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3;
            bool in_i = p[i].x >= x0, in_j = p[j].x >= x0;
            if (in_i) {
                poly[m] = p[i];
                val[m++] = w[i];
            }
            if (in_i != in_j) {
                double s = (x0 - p[i].x) / (p[j].x - p[i].x);
                poly[m] = {x0, p[i].y + s * (p[j].y - p[i].y)};
                val[m++] = w[i] + s * (w[j] - w[i]);
            }
        }
        double sum = 0.0;
        for (int i = 1; i + 1 < m; ++i)
            sum += tri_quad(0.5 * std::abs(orient(poly[0], poly[i], poly[i + 1])), val[0], val[i], val[i + 1]);
        part[t] = sum;
    });
    double s = 0.0;
    for (double x : part) s += x;
    return s;
}

}  // namespace

double segment_norm(const Mesh& mesh, const Eigen::VectorXd& u, Vec2 p, Vec2 q)
{
    check_field(mesh, u);
    const Vec2 d = q - p;
    const double len = norm(d);
    if (len == 0.0) return 0.0;
    const double bx0 = std::min(p.x, q.x), bx1 = std::max(p.x, q.x);
    const double by0 = std::min(p.y, q.y), by1 = std::max(p.y, q.y);

    std::vector<Piece> pieces;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& v = mesh.triangles[t];
        Vec2 a[3] = {mesh.vertices[v[0]], mesh.vertices[v[1]], mesh.vertices[v[2]]};
        if (std::max({a[0].x, a[1].x, a[2].x}) < bx0 || std::min({a[0].x, a[1].x, a[2].x}) > bx1) continue;
        if (std::max({a[0].y, a[1].y, a[2].y}) < by0 || std::min({a[0].y, a[1].y, a[2].y}) > by1) continue;
        // Cyrus-Beck clipping of p + t d against the three inner half-planes.
        double t0 = 0.0, t1 = 1.0;
        bool empty = false;
        for (int k = 0; k < 3 && !empty; ++k) {
            Vec2 e0 = a[k], e1 = a[(k + 1) % 3];
            double scale = norm(e1 - e0);
            double f0 = cross(e1 - e0, p - e0);  // >= 0 inside
            double df = cross(e1 - e0, d);
            double slack = 1e-12 * scale * len;
            if (std::abs(df) <= 1e-14 * scale * len) {
                if (f0 < -slack) empty = true;
                continue;
            }
            double tc = -(f0 + slack) / df;
            if (df > 0)
                t0 = std::max(t0, tc);
            else
                t1 = std::min(t1, tc);
            if (t1 - t0 <= 1e-12) empty = true;
        }
        if (empty) continue;
        Vec2 s0 = p + d * t0, s1 = p + d * t1;
        pieces.push_back({t0, t1, eval_on(mesh, u, t, s0), eval_on(mesh, u, t, s1)});
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
        return a.t0 < b.t0 || (a.t0 == b.t0 && a.t1 < b.t1);
    });
    // Sweep in t, integrating only the part of each piece not yet covered: a
    // segment along a shared edge is reported by both neighbours, and the
    // clipping slack makes adjacent pieces overlap slightly.
    double sum = 0.0, covered = 0.0;
    for (const auto& pc : pieces) {
        double s = std::max(pc.t0, covered);
        if (pc.t1 <= s) continue;
        double us = pc.u0 + (pc.u1 - pc.u0) * (s - pc.t0) / (pc.t1 - pc.t0);
        sum += line_quad(len * (pc.t1 - s), us, pc.u1);
        covered = pc.t1;
    }
    return std::sqrt(sum);
}

double slice_norm(const Mesh& mesh, const Eigen::VectorXd& u, double x)
{
    check_field(mesh, u);
    if (mesh.vertices.empty() || x < mesh.min_x() || x > mesh.max_x()) return 0.0;
    double y0 = mesh.vertices.front().y, y1 = y0;
    for (const auto& p : mesh.vertices) {
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    double pad = 1.0 + (y1 - y0);
    return segment_norm(mesh, u, {x, y0 - pad}, {x, y1 + pad});
}

double tail_norm(const Mesh& mesh, const Eigen::VectorXd& u, double x0)
{
    check_field(mesh, u);
    return std::sqrt(tail_integral(mesh, u, x0));
}

double mesh_l2_norm(const Mesh& mesh, const Eigen::VectorXd& u)
{
    check_field(mesh, u);
    return std::sqrt(tail_integral(mesh, u, -std::numeric_limits<double>::infinity()));
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "not_applicable";
    }
}

double fit_decay_rate(const std::vector<double>& z, const std::vector<double>& norms)
{
    if (z.size() != norms.size()) throw InvalidInput("fit_decay_rate: size mismatch");
    double top = 0.0;
    for (double v : norms)
        if (std::isfinite(v)) top = std::max(top, v);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < z.size(); ++i) {
        double v = norms[i];
        if (!(v >= 1e-13) || v < 1e-12 || v > 0.1 * top) continue;
        xs.push_back(z[i]);
        ys.push_back(std::log(v));
    }
    if (xs.size() < 8) throw InsufficientData("fit_decay_rate: fewer than 8 usable slices");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= xs.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0) throw InsufficientData("fit_decay_rate: degenerate abscissae");
    return std::abs(sxy / sxx);
}

namespace {

DecayReport certify(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu, double z0, double beta,
                    bool tails, const DecayOptions& opt)
{
    check_field(mesh, u);
    if (opt.grid_points < 8) throw InvalidInput("certify: at least 8 grid points required");
    const double z1 = mesh.max_x();
    if (!(z0 < z1)) throw InvalidInput("certify: z0 must lie left of the domain's right end");

    DecayReport r;
    r.theorem = tails ? "tail" : "slice";
    r.mu = mu;
    r.lambda = lambda;
    r.z0 = z0;
    r.beta = beta;
    r.tol_cert = opt.tol_cert;
    const int n = opt.grid_points;
    r.z_grid.resize(n);
    for (int j = 0; j < n; ++j) r.z_grid[j] = j + 1 == n ? z1 : z0 + (z1 - z0) * j / (n - 1);
    r.slice_norms.assign(n, 0.0);
    r.tail_norms.assign(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        r.slice_norms[j] = slice_norm(mesh, u, r.z_grid[j]);
        r.tail_norms[j] = tail_norm(mesh, u, r.z_grid[j]);
    });

    const double unorm = mesh_l2_norm(mesh, u);
    if (unorm > 0) {
        std::vector<double> scaled(r.slice_norms);
        for (double& s : scaled) s /= unorm;
        try {
            r.fitted_rate = fit_decay_rate(r.z_grid, scaled);
        } catch (const InsufficientData&) {
        }
    }

    r.bounds.assign(n, kNaN);
    r.margins.assign(n, kNaN);
    if (!(lambda < mu)) {
        r.verdict = Verdict::not_applicable;
        return r;
    }
    const auto& measured = tails ? r.tail_norms : r.slice_norms;
    const double rate = beta * std::sqrt(mu - lambda);
    const double floor = opt.floor_rel * unorm;
    const double ref = measured[0];
    r.bounds[0] = ref;
    r.margins[0] = 0.0;
    for (int j = 1; j < n; ++j) {
        r.bounds[j] = ref * std::exp(-rate * (r.z_grid[j] - z0));
        if (!(r.bounds[j] > floor)) {  // bound under the noise floor: not resolvable
            ++r.excluded;
            continue;
        }
        ++r.checked;
        r.margins[j] = r.bounds[j] - measured[j];
        if (measured[j] > r.bounds[j] * (1.0 + opt.tol_cert)) ++r.violations;
    }
    r.verdict = (ref > floor && r.checked > 0 && r.violations == 0) ? Verdict::pass : Verdict::fail;
    return r;
}

}  // namespace

DecayReport certify_theorem1(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu, double z0,
                             bool monotone, const DecayOptions& opt)
{
    return certify(mesh, u, lambda, mu, z0, monotone ? 1.0 : 1.0 / std::sqrt(2.0), false, opt);
}

DecayReport certify_theorem2(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu, double x0,
                             const DecayOptions& opt)
{
    return certify(mesh, u, lambda, mu, x0, 1.0 / std::sqrt(2.0), true, opt);
}

MaslovReport maslov_check(const Mesh& mesh, const Eigen::VectorXd& u, double lambda, double mu,
                          const std::vector<double>& x_grid)
{
    check_field(mesh, u);
    const int n = static_cast<int>(x_grid.size());
    if (n < 8) throw InvalidInput("maslov_check: grid needs at least 8 points");
    if (!(lambda < mu)) throw InvalidInput("maslov_check: requires lambda < mu");
    for (int j = 1; j < n; ++j)
        if (!(x_grid[j] > x_grid[j - 1])) throw InvalidInput("maslov_check: grid must be increasing");

    MaslovReport r;
    r.x = x_grid;
    r.I.assign(n, 0.0);
    r.dI.assign(n, 0.0);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t j) {
        r.I[j] = tail_integral(mesh, u, x_grid[j]);
        double s = slice_norm(mesh, u, x_grid[j]);
        r.dI[j] = -s * s;
    });
    r.d2I.assign(n, kNaN);
    r.tol.assign(n, kNaN);
    const double Imax = *std::max_element(r.I.begin(), r.I.end());
    const double gap = 2.0 * (mu - lambda);

    auto fourth = [&](int c) {
        c = std::clamp(c, 2, n - 3);
        double h = 0.25 * (x_grid[c + 2] - x_grid[c - 2]);
        return std::abs(r.I[c - 2] - 4 * r.I[c - 1] + 6 * r.I[c] - 4 * r.I[c + 1] + r.I[c + 2]) / std::pow(h, 4);
    };
    for (int j = 1; j + 1 < n; ++j) {
        double h1 = x_grid[j] - x_grid[j - 1], h2 = x_grid[j + 1] - x_grid[j];
        r.d2I[j] = 2.0 * ((r.I[j + 1] - r.I[j]) / h2 - (r.I[j] - r.I[j - 1]) / h1) / (h1 + h2);
        // Truncation of the centred stencil: h^2/12 |I''''|.
        double h = 0.5 * (h1 + h2);
        r.tol[j] = 1e-3 * Imax + h * h / 12.0 * fourth(j);
        ++r.interior_points;
        if (r.d2I[j] >= gap * r.I[j] - r.tol[j]) ++r.satisfied;
    }
    r.fraction = r.interior_points ? static_cast<double>(r.satisfied) / r.interior_points : 0.0;
    const double I0 = r.I.front();
    r.end_I = I0 > 0 ? std::abs(r.I.back()) / I0 : kNaN;
    r.end_dI = I0 > 0 ? std::abs(r.dI.back()) / I0 : kNaN;
    r.decreasing = true;
    for (int j = 1; j + 1 < n; ++j)
        if (r.I[j] > 1e-10 * I0 && !(r.dI[j] < 0)) r.decreasing = false;
    r.holds = r.fraction >= 0.95 && r.end_I <= 1e-10 && r.end_dI <= 1e-10 && r.decreasing;
    return r;
}

namespace {

nlohmann::json num(double v)
{
    return std::isfinite(v) ? nlohmann::json(round_sci(v)) : nlohmann::json(nullptr);
}

}  // namespace

std::string decay_report_to_json(const DecayReport& r)
{
    double min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < r.margins.size(); ++j)
        if (std::isfinite(r.margins[j])) min_margin = std::min(min_margin, r.margins[j]);
    nlohmann::json j{{"theorem", r.theorem},
                     {"verdict", to_string(r.verdict)},
                     {"lambda", num(r.lambda)},
                     {"mu", num(r.mu)},
                     {"z0", num(r.z0)},
                     {"beta", num(r.beta)},
                     {"tol_cert", num(r.tol_cert)},
                     {"fitted_rate", r.fitted_rate ? num(*r.fitted_rate) : nlohmann::json(nullptr)},
                     {"predicted_rate", r.lambda < r.mu ? num(r.beta * std::sqrt(r.mu - r.lambda)) : nlohmann::json(nullptr)},
                     {"grid_points", r.z_grid.size()},
                     {"checked", r.checked},
                     {"excluded", r.excluded},
                     {"violations", r.violations},
                     {"min_margin", num(min_margin)}};
    return j.dump(2);
}

void write_decay_csv(std::ostream& os, const DecayReport& r)
{
    os << "z,slice_norm,tail_norm,bound,margin\n";
    for (std::size_t j = 0; j < r.z_grid.size(); ++j)
        os << format_sci(r.z_grid[j]) << ',' << format_sci(r.slice_norms[j]) << ',' << format_sci(r.tail_norms[j])
           << ',' << format_sci(r.bounds[j]) << ',' << format_sci(r.margins[j]) << '\n';
}

std::string maslov_report_to_json(const MaslovReport& r)
{
    nlohmann::json j{{"interior_points", r.interior_points},
                     {"satisfied", r.satisfied},
                     {"fraction", num(r.fraction)},
                     {"end_I_rel", num(r.end_I)},
                     {"end_dI_rel", num(r.end_dI)},
                     {"decreasing", r.decreasing},
                     {"holds", r.holds}};
    return j.dump(2);
}

}  // namespace eigenbranch
