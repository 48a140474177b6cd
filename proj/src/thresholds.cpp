#include "eigenbranch/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include <json.hpp>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"
#include "eigenbranch/parallel.hpp"

namespace eigenbranch {

double dirichlet_interval_mu(double length)
{
    if (!(length > 0)) throw InvalidInput("interval length must be positive");
    return M_PI * M_PI / (length * length);
}

double effective_h(double h, double slope)
{
    if (!(h >= 0)) throw InvalidInput("Robin coefficient must be nonnegative");
    return h * std::sqrt(1.0 + slope * slope);
}

double robin_characteristic(double alpha, const RobinInterval& iv)
{
    double t = alpha * iv.length;
    return (iv.h1 * iv.h2 - alpha * alpha) * std::sin(t) + alpha * (iv.h1 + iv.h2) * std::cos(t);
}

namespace {

void check_interval(const RobinInterval& iv)
{
    if (!(iv.length > 0)) throw InvalidInput("Robin interval: length must be positive");
    if (!(iv.h1 >= 0) || !(iv.h2 >= 0)) throw InvalidInput("Robin interval: coefficients must be nonnegative");
}

double sinc(double t)
{
    return std::abs(t) < 1e-4 ? 1.0 - t * t / 6.0 : std::sin(t) / t;
}

// Characteristic divided by alpha: removes the trivial root at 0 and is
// positive there, h1 h2 l + h1 + h2.
double reduced_characteristic(double alpha, const RobinInterval& iv)
{
    double t = alpha * iv.length;
    return (iv.h1 * iv.h2 - alpha * alpha) * iv.length * sinc(t) + (iv.h1 + iv.h2) * std::cos(t);
}

}  // namespace

double robin_interval_mu(const RobinInterval& iv, double tol)
{
    check_interval(iv);
    if (!(tol > 0)) throw InvalidInput("robin_interval_mu: tol must be positive");
    if (iv.h1 == 0.0 && iv.h2 == 0.0) return 0.0;

    const double l = iv.length;
    const double end = M_PI / l, step = M_PI / (64.0 * l);
    double lo = 1e-6 / l, hi = -1.0;
    if (reduced_characteristic(lo, iv) <= 0) {
        // Root below the scan start (vanishing coefficients).
        hi = lo;
        lo = 0.0;
    } else {
        for (double a = lo; a < end;) {
            double b = std::min(a + step, end);
            if (reduced_characteristic(b, iv) <= 0) {
                lo = a;
                hi = b;
                break;
            }
            a = b;
        }
    }
    if (hi < 0) throw Error("robin_interval_mu: no sign change in (0, pi/l]; characteristic equation violated");

    const double width = tol * end;
    for (int it = 0; it < 200 && hi - lo > width; ++it) {
        double mid = 0.5 * (lo + hi);
        if (reduced_characteristic(mid, iv) > 0)
            lo = mid;
        else
            hi = mid;
    }
    double alpha = 0.5 * (lo + hi);
    return alpha * alpha;
}

double rayleigh_oracle_1d(const RobinInterval& iv, int n)
{
    check_interval(iv);
    if (n < 2) throw InvalidInput("rayleigh_oracle_1d: need at least 2 elements");
    const double dx = iv.length / n;
    const double m = dx * dx / 6.0;

    // Inertia of dx * (K - s M): number of nonpositive pivots = eigenvalues <= s.
    auto count = [&](double s) {
        int neg = 0;
        double q = 0.0;
        for (int i = 0; i <= n; ++i) {
            double d = (i == 0 || i == n) ? 1.0 - 2.0 * m * s : 2.0 - 4.0 * m * s;
            if (i == 0) d += dx * iv.h1;
            if (i == n) d += dx * iv.h2;
            if (i > 0) {
                double e = -1.0 - m * s;
                d -= e * e / q;
            }
            q = d;
            if (q <= 0) {
                ++neg;
                if (q == 0) q = -1e-300;
            }
        }
        return neg;
    };

    double lo = 0.0, hi = 2.0 * M_PI * M_PI / (iv.length * iv.length) + 1.0;
    while (count(hi) < 1) hi *= 2;
    for (int it = 0; it < 200 && hi - lo > 4e-16 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (count(mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

double rayleigh_oracle_extrapolated(const RobinInterval& iv, int n)
{
    double a = rayleigh_oracle_1d(iv, n), b = rayleigh_oracle_1d(iv, 2 * n), c = rayleigh_oracle_1d(iv, 4 * n);
    double ab = (4 * b - a) / 3, bc = (4 * c - b) / 3;
    return (16 * bc - ab) / 15;
}

namespace {

ThresholdCurve sample_curve(double x0, double x1, double cap, const std::function<double(double)>& mu1,
                            const ThresholdOptions& opt)
{
    if (opt.n_samples < 16) throw InvalidInput("threshold curve: n_samples must be at least 16");
    auto value = [&](double x) {
        double v = mu1(x);
        return std::isfinite(v) && v <= cap ? ThresholdSample{x, v, false} : ThresholdSample{x, cap, true};
    };

    ThresholdCurve c;
    c.z0 = x0;
    c.cap = cap;
    c.samples.resize(opt.n_samples);
    parallel_for(c.samples.size(), [&](std::size_t i) {
        double x = i + 1 == c.samples.size() ? x1 : x0 + (x1 - x0) * static_cast<double>(i) / (opt.n_samples - 1);
        c.samples[i] = value(x);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < c.samples.size(); ++i)
        if (c.samples[i].mu < c.samples[best].mu) best = i;
    c.mu = c.samples[best].mu;
    c.argmin_x = c.samples[best].x;

    // Golden-section search in the two cells around the minimising sample.
    double a = c.samples[best == 0 ? 0 : best - 1].x;
    double b = c.samples[std::min(best + 1, c.samples.size() - 1)].x;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double p = b - g * (b - a), q = a + g * (b - a);
    double fp = value(p).mu, fq = value(q).mu;
    const double width = opt.x_rel_tol * std::max(x1 - x0, 1e-300);
    while (b - a > width) {
        if (fp <= fq) {
            b = q;
            q = p;
            fq = fp;
            p = b - g * (b - a);
            fp = value(p).mu;
        } else {
            a = p;
            p = q;
            fp = fq;
            q = a + g * (b - a);
            fq = value(q).mu;
        }
    }
    for (double x : {a, b, 0.5 * (a + b)}) {
        auto s = value(x);
        if (s.mu < c.mu) {
            c.mu = s.mu;
            c.argmin_x = x;
        }
    }
    return c;
}

}  // namespace

ThresholdCurve threshold_curve(const BranchProfile& profile, const BoundaryCondition& bc, double z0,
                               const ThresholdOptions& opt)
{
    const double a = profile.length();
    if (!(z0 >= 0) || !(z0 < a)) throw InvalidInput("threshold curve: z0 must lie in [0, a)");
    if (!bc.is_dirichlet() && !(bc.h >= 0)) throw InvalidInput("threshold curve: Robin coefficient must be nonnegative");
    auto mu1 = [&](double x) {
        double l = profile.width(x);
        if (!(l > 0)) return std::numeric_limits<double>::infinity();
        if (bc.is_dirichlet()) return dirichlet_interval_mu(l);
        RobinInterval iv{l, effective_h(bc.h, profile.lower_slope(x)), effective_h(bc.h, profile.upper_slope(x))};
        return robin_interval_mu(iv);
    };
    return sample_curve(z0, a, 1e6 / (a * a), mu1, opt);
}

ThresholdCurve threshold_curve_domain(const PlanarDomain& dom, double x_from, double x_to, const ThresholdOptions& opt)
{
    for (const auto& m : dom.markers)
        if (!m.is_dirichlet()) throw InvalidInput("polygon threshold curve supports Dirichlet walls only");
    if (!(x_to > x_from)) throw InvalidInput("threshold curve: empty abscissa range");
    const double len = x_to - x_from;
    auto mu1 = [&](double x) {
        double l = cross_section(dom, x).longest();
        return l > 0 ? dirichlet_interval_mu(l) : std::numeric_limits<double>::infinity();
    };
    return sample_curve(x_from, x_to, 1e6 / (len * len), mu1, opt);
}

std::string threshold_to_json(const ThresholdCurve& curve)
{
    int capped = 0;
    for (const auto& s : curve.samples) capped += s.capped;
    nlohmann::json j{{"mu", round_sci(curve.mu)},
                     {"argmin_x", round_sci(curve.argmin_x)},
                     {"z0", round_sci(curve.z0)},
                     {"cap", round_sci(curve.cap)},
                     {"n_samples", curve.samples.size()},
                     {"capped_samples", capped}};
    return j.dump(2);
}

void write_threshold_csv(std::ostream& os, const ThresholdCurve& curve)
{
    os << "x,mu1,capped\n";
    for (const auto& s : curve.samples) os << format_sci(s.x) << ',' << format_sci(s.mu) << ',' << (s.capped ? 1 : 0) << '\n';
}

}  // namespace eigenbranch
