#include "eigenbranch/triangle_localization.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"
#include "eigenbranch/parallel.hpp"

namespace eigenbranch {

const TrianglePolynomials& triangle_polynomials()
{
    static const TrianglePolynomials p = [] {
        const double p2 = M_PI * M_PI, p4 = p2 * p2;
        TrianglePolynomials c;
        c.A = {12 * (p4 - 10 * p2),     30 * (p4 - 6 * p2),         20 * (2 * p4 - 9 * p2 + 9),
               30 * (p4 - 4 * p2 + 3),  6 * (2 * p4 - 10 * p2 + 15), 2 * p4 - 15 * p2 + 45};
        c.B = {12 * p4,                 30 * p4,                    20 * (2 * p4 + 3 * p2),
               30 * (p4 + 3 * p2),      6 * (2 * p4 + 10 * p2 - 15), 2 * p4 + 15 * p2 - 45};
        return c;
    }();
    return p;
}

namespace {

double horner(const std::array<double, 6>& c, double z)
{
    double s = c[5];
    for (int j = 4; j >= 0; --j) s = s * z + c[j];
    return s;
}

}  // namespace

double pa(double zeta) { return horner(triangle_polynomials().A, zeta); }
double pb(double zeta) { return horner(triangle_polynomials().B, zeta); }

double zeta0(double tol)
{
    if (!(tol > 0)) throw InvalidInput("zeta0: tol must be positive");
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (pa(mid) < 0)
            lo = mid;
        else
            hi = mid;
        if (mid == lo && mid == hi) break;
    }
    return 0.5 * (lo + hi);
}

double q_value(double zeta, double a, double b)
{
    if (!(b > 0) || !(a >= b)) throw InvalidInput("q_value: need a >= b > 0");
    if (!(zeta > 0)) throw InvalidInput("q_value: zeta must be positive");
    double kappa = a / b;
    return std::pow(b, 5) / (720.0 * M_PI * M_PI * a) * (kappa * kappa * pa(zeta) - pb(zeta));
}

bool localized_predicate(double a, double b, double d)
{
    if (!(b > 0) || !(a >= b)) throw InvalidInput("localized_predicate: need a >= b > 0");
    if (!(d > b)) throw InvalidInput("localized_predicate: need d > b");
    double zeta = d / b - 1.0;
    if (!(zeta > zeta0())) return false;
    return a * a / (b * b) > pb(zeta) / pa(zeta);
}

double f(double zeta)
{
    if (!(zeta > zeta0())) throw InvalidInput("f: zeta must exceed zeta0");
    return std::sqrt(pb(zeta)) / (std::sqrt(pa(zeta)) * zeta);
}

double f_inverse(double r, double tol)
{
    if (!(r > 0)) throw InvalidInput("f_inverse: r must be positive");
    double lo = zeta0() * (1 + 1e-9);
    double hi = 10.0;
    while (f(hi) > r) {
        hi *= 2;
        if (hi > 1e6) throw Error("f_inverse: no bracket below 1e6");
    }
    if (f(lo) < r) throw Error("f_inverse: r above the range of f");
    for (int it = 0; it < 300 && hi - lo > tol * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > r)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Rectangle inscribed_rectangle(double c, double d, double zeta)
{
    if (!(c > 0) || !(d > 0) || !(zeta > 0)) throw InvalidInput("inscribed_rectangle: c, d, zeta must be positive");
    return {c * zeta / (zeta + 1), d / (zeta + 1)};
}

double min_ratio_zeta()
{
    // Golden-section search in log(zeta) over (zeta0, 1e6).
    auto g = [](double t) {
        double z = std::exp(t);
        return pb(z) / pa(z);
    };
    double a = std::log(zeta0() * (1 + 1e-6)), b = std::log(1e6);
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double p = b - r * (b - a), q = a + r * (b - a), fp = g(p), fq = g(q);
    while (b - a > 1e-12) {
        if (fp <= fq) {
            b = q;
            q = p;
            fq = fp;
            p = b - r * (b - a);
            fp = g(p);
        } else {
            a = p;
            p = q;
            fp = fq;
            q = a + r * (b - a);
            fq = g(q);
        }
    }
    return std::exp(0.5 * (a + b));
}

std::optional<std::pair<double, double>> localization_interval(double kappa)
{
    const auto& p = triangle_polynomials();
    const double k2 = kappa * kappa;
    auto g = [](double z) { return pb(z) / pa(z); };
    const double zm = min_ratio_zeta();
    if (!(g(zm) < k2)) return std::nullopt;

    // g >= k2 on the left of the root, < k2 on the right (and mirrored above zm).
    auto root = [&](double lo, double hi, bool decreasing) {
        for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
            double mid = 0.5 * (lo + hi);
            if ((g(mid) >= k2) == decreasing)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    double lo = root(zeta0() * (1 + 1e-12), zm, true);
    double hi = std::numeric_limits<double>::infinity();
    if (!(k2 > p.B[5] / p.A[5])) {
        double top = 2 * zm;
        while (g(top) < k2) top *= 2;
        hi = root(zm, top, false);
    }
    return std::make_pair(lo, hi);
}

Diagram diagram(double zeta_min, double zeta_max, double kappa_min, double kappa_max, int n_zeta, int n_kappa)
{
    if (!(zeta_min > 0) || !(zeta_max > zeta_min) || !(kappa_min > 0) || !(kappa_max >= kappa_min) || n_zeta < 2 ||
        n_kappa < 1)
        throw InvalidInput("diagram: ranges must be positive and increasing, with at least 2 zeta samples");
    Diagram d;
    d.zeta.resize(n_zeta);
    for (int i = 0; i < n_zeta; ++i) d.zeta[i] = zeta_min + (zeta_max - zeta_min) * i / (n_zeta - 1);
    d.rows.resize(n_kappa);
    parallel_for(static_cast<std::size_t>(n_kappa), [&](std::size_t r) {
        auto& row = d.rows[r];
        row.kappa = n_kappa == 1 ? kappa_min : kappa_min + (kappa_max - kappa_min) * r / (n_kappa - 1);
        row.localized.resize(n_zeta);
        int first = -1, last = -1;
        for (int i = 0; i < n_zeta; ++i) {
            double z = d.zeta[i];
            bool pos = row.kappa * row.kappa * pa(z) - pb(z) > 0;
            row.localized[i] = pos;
            if (pos) {
                if (first < 0) first = i;
                last = i;
            }
        }
        if (first >= 0) {
            row.interval = std::make_pair(d.zeta[first], d.zeta[last]);
            for (int i = first; i <= last; ++i) row.contiguous = row.contiguous && row.localized[i];
        }
    });
    return d;
}

void write_diagram_csv(std::ostream& os, const Diagram& d)
{
    os << "zeta,kappa,localized\n";
    for (const auto& row : d.rows)
        for (std::size_t i = 0; i < d.zeta.size(); ++i)
            os << format_sci(d.zeta[i]) << ',' << format_sci(row.kappa) << ',' << (row.localized[i] ? 1 : 0) << '\n';
}

std::string diagram_to_json(const Diagram& d)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : d.rows) {
        nlohmann::json j{{"kappa", round_sci(row.kappa)}, {"empty", !row.interval.has_value()}, {"contiguous", row.contiguous}};
        if (row.interval) {
            j["zeta_lo"] = round_sci(row.interval->first);
            j["zeta_hi"] = round_sci(row.interval->second);
        }
        auto t = localization_interval(row.kappa);
        j["exact_zeta_lo"] = t ? nlohmann::json(round_sci(t->first)) : nlohmann::json(nullptr);
        j["exact_zeta_hi"] = t && std::isfinite(t->second) ? nlohmann::json(round_sci(t->second)) : nlohmann::json(nullptr);
        rows.push_back(j);
    }
    nlohmann::json out{{"zeta0", round_sci(zeta0())},
                       {"zeta_range", {round_sci(d.zeta.front()), round_sci(d.zeta.back())}},
                       {"rows", rows}};
    return out.dump(2);
}

}  // namespace eigenbranch
