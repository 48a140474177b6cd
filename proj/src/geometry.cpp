#include "eigenbranch/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "eigenbranch/errors.hpp"

namespace eigenbranch {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b)
{
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

// ---------------------------------------------------------------------------
// BranchProfile

BranchProfile::BranchProfile(double length, std::vector<ProfileSample> lower,
                             std::vector<ProfileSample> upper, bool closed_end)
    : length_(length), lower_(std::move(lower)), upper_(std::move(upper)), closed_end_(closed_end)
{
    if (!(length_ > 0.0)) throw GeometryError("branch length must be positive");
    if (lower_.size() < 2 || lower_.size() != upper_.size())
        throw GeometryError("branch profile needs matching lower/upper samples (at least 2)");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (lower_[i].x != upper_[i].x) throw GeometryError("branch walls sampled on different grids");
        bool tip = closed_end_ && i + 1 == lower_.size();
        if (!tip && !(lower_[i].y < upper_[i].y))
            throw GeometryError("branch profile requires y1 < y2 at x = " + std::to_string(lower_[i].x));
    }
}

double BranchProfile::eval(const std::vector<ProfileSample>& s, double x, bool derivative) const
{
    x = std::clamp(x, s.front().x, s.back().x);
    auto it = std::upper_bound(s.begin(), s.end(), x, [](double v, const ProfileSample& p) { return v < p.x; });
    std::size_t j = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
    j = std::min(j, s.size() - 2);
    const auto& p0 = s[j];
    const auto& p1 = s[j + 1];
    double h = p1.x - p0.x;
    double t = (x - p0.x) / h;
    double t2 = t * t, t3 = t2 * t;
    if (!derivative) {
        double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        return h00 * p0.y + h10 * h * p0.slope + h01 * p1.y + h11 * h * p1.slope;
    }
    double d00 = (6 * t2 - 6 * t) / h, d10 = 3 * t2 - 4 * t + 1;
    double d01 = (-6 * t2 + 6 * t) / h, d11 = 3 * t2 - 2 * t;
    return d00 * p0.y + d10 * p0.slope + d01 * p1.y + d11 * p1.slope;
}

// ---------------------------------------------------------------------------
// PlanarDomain

double shoelace_area(std::span<const Vec2> pts)
{
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) s += cross(pts[i], pts[(i + 1) % pts.size()]);
    return 0.5 * s;
}

double PlanarDomain::area() const { return shoelace_area(boundary); }

double PlanarDomain::min_x() const
{
    return std::min_element(boundary.begin(), boundary.end(), [](Vec2 a, Vec2 b) { return a.x < b.x; })->x;
}
double PlanarDomain::max_x() const
{
    return std::max_element(boundary.begin(), boundary.end(), [](Vec2 a, Vec2 b) { return a.x < b.x; })->x;
}
double PlanarDomain::min_y() const
{
    return std::min_element(boundary.begin(), boundary.end(), [](Vec2 a, Vec2 b) { return a.y < b.y; })->y;
}
double PlanarDomain::max_y() const
{
    return std::max_element(boundary.begin(), boundary.end(), [](Vec2 a, Vec2 b) { return a.y < b.y; })->y;
}

double PlanarDomain::diameter() const { return std::hypot(max_x() - min_x(), max_y() - min_y()); }

bool PlanarDomain::contains(Vec2 p) const
{
    bool inside = false;
    const std::size_t n = boundary.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        Vec2 a = boundary[i], b = boundary[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xc = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xc) inside = !inside;
        }
    }
    return inside;
}

double PlanarDomain::distance_to_boundary(Vec2 p) const
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < boundary.size(); ++i)
        best = std::min(best, point_segment_distance(p, boundary[i], vertex(i + 1)));
    return best;
}

double PlanarDomain::interior_angle(std::size_t i) const
{
    const std::size_t n = boundary.size();
    Vec2 prev = boundary[(i + n - 1) % n], cur = boundary[i], next = boundary[(i + 1) % n];
    Vec2 u = next - cur, v = prev - cur;
    // Angle swept counterclockwise from the outgoing edge to the incoming edge.
    double ang = std::atan2(cross(u, v), dot(u, v));
    if (ang < 0) ang += 2 * M_PI;
    return ang;
}

double CrossSection::total_length() const
{
    return std::accumulate(intervals.begin(), intervals.end(), 0.0,
                           [](double s, const Interval& iv) { return s + iv.length(); });
}

double CrossSection::longest() const
{
    double m = 0.0;
    for (const auto& iv : intervals) m = std::max(m, iv.length());
    return m;
}

namespace {

bool segments_touch(Vec2 a, Vec2 b, Vec2 c, Vec2 d)
{
    double scale = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y), std::abs(c.x),
                             std::abs(c.y), std::abs(d.x), std::abs(d.y), 1.0});
    double eps = 1e-14 * scale * scale;
    double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    auto sgn = [eps](double v) { return v > eps ? 1 : (v < -eps ? -1 : 0); };
    int s1 = sgn(o1), s2 = sgn(o2), s3 = sgn(o3), s4 = sgn(o4);
    if (s1 * s2 < 0 && s3 * s4 < 0) return true;
    auto on_seg = [](Vec2 p, Vec2 q, Vec2 r) {
        return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
               r.y <= std::max(p.y, q.y);
    };
    if (s1 == 0 && on_seg(a, b, c)) return true;
    if (s2 == 0 && on_seg(a, b, d)) return true;
    if (s3 == 0 && on_seg(c, d, a)) return true;
    if (s4 == 0 && on_seg(c, d, b)) return true;
    return false;
}

}  // namespace

void validate(const PlanarDomain& dom)
{
    const std::size_t n = dom.boundary.size();
    if (n < 3) throw GeometryError("boundary needs at least 3 vertices");
    if (dom.markers.size() != n) throw GeometryError("every boundary edge needs exactly one marker");
    for (const auto& m : dom.markers)
        if (!m.is_dirichlet() && !(m.h >= 0.0)) throw GeometryError("Robin coefficient must be nonnegative");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(dom.boundary[i].x) || !std::isfinite(dom.boundary[i].y))
            throw GeometryError("non-finite boundary vertex");
        if (dom.boundary[i] == dom.vertex(i + 1)) throw GeometryError("repeated boundary vertex");
    }
    if (!(dom.area() > 0.0)) throw GeometryError("boundary must be positively oriented with nonzero area");

    // Sweep over edges sorted by their left end; only x-overlapping pairs are tested.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto lo = [&](std::size_t e) { return std::min(dom.vertex(e).x, dom.vertex(e + 1).x); };
    auto hi = [&](std::size_t e) { return std::max(dom.vertex(e).x, dom.vertex(e + 1).x); };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo(a) < lo(b); });
    for (std::size_t ii = 0; ii < n; ++ii) {
        std::size_t e = order[ii];
        for (std::size_t jj = ii + 1; jj < n && lo(order[jj]) <= hi(e); ++jj) {
            std::size_t f = order[jj];
            Vec2 a = dom.vertex(e), b = dom.vertex(e + 1), c = dom.vertex(f), d = dom.vertex(f + 1);
            bool adjacent = (f == (e + 1) % n) || (e == (f + 1) % n);
            if (adjacent) {
                // Adjacent edges may only share their common vertex.
                Vec2 shared = (f == (e + 1) % n) ? b : a;
                Vec2 far_e = (shared == b) ? a : b;
                Vec2 far_f = (shared == c) ? d : c;
                Vec2 u = far_e - shared, v = far_f - shared;
                if (std::abs(cross(u, v)) <= 1e-14 * norm(u) * norm(v) && dot(u, v) > 0)
                    throw GeometryError("boundary folds back on itself");
                continue;
            }
            if (segments_touch(a, b, c, d))
                throw GeometryError("boundary is self-intersecting (edges " + std::to_string(e) + " and " +
                                    std::to_string(f) + ")");
        }
    }

    if (dom.split_x) {
        auto cs = cross_section(dom, *dom.split_x);
        if (cs.intervals.size() != 1)
            throw GeometryError("split line x = " + std::to_string(*dom.split_x) +
                                " must cross the boundary exactly twice");
    }
}

void set_boundary_condition(PlanarDomain& dom, BoundaryCondition bc)
{
    dom.markers.assign(dom.boundary.size(), bc);
}

int wall_samples_for(double branch_length, double max_curvature, double tol_geom)
{
    return std::max(16, static_cast<int>(std::ceil(branch_length * std::sqrt(max_curvature / (8.0 * tol_geom)))));
}

// ---------------------------------------------------------------------------
// Cross-sections

CrossSection cross_section(const PlanarDomain& dom, double x)
{
    CrossSection cs;
    cs.x = x;
    std::vector<double> ys;
    const std::size_t n = dom.boundary.size();
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p = dom.boundary[i], q = dom.vertex(i + 1);
        // Half-open rule: each crossing counted once, vertical edges ignored.
        bool crosses = (p.x <= x && x < q.x) || (q.x <= x && x < p.x);
        if (!crosses) continue;
        double t = (x - p.x) / (q.x - p.x);
        ys.push_back(p.y + t * (q.y - p.y));
    }
    std::sort(ys.begin(), ys.end());
    for (std::size_t i = 0; i + 1 < ys.size(); i += 2)
        if (ys[i + 1] > ys[i]) cs.intervals.push_back({ys[i], ys[i + 1]});
    return cs;
}

bool inradius_localization_predicate(double rho, double b_max)
{
    return rho / b_max > bessel_j0_first_zero / M_PI;
}

WallMonotonicity branch_wall_monotonicity(const BranchProfile& profile)
{
    double max_slope = 0.0;
    for (const auto& s : profile.lower_samples()) max_slope = std::max(max_slope, std::abs(s.slope));
    for (const auto& s : profile.upper_samples()) max_slope = std::max(max_slope, std::abs(s.slope));
    const double eps = 1e-12 * (1.0 + max_slope);

    bool monotone = true;
    for (const auto& s : profile.lower_samples()) monotone = monotone && s.slope >= -eps;
    for (const auto& s : profile.upper_samples()) monotone = monotone && s.slope <= eps;
    double gap = profile.upper_samples().back().y - profile.lower_samples().back().y;
    return {monotone, std::abs(gap) <= eps};
}

bool outward_normal_condition(const PlanarDomain& dom)
{
    if (!dom.split_x) return false;
    const double z0 = *dom.split_x;
    const double eps = 1e-12 * dom.diameter();
    for (std::size_t i = 0; i < dom.size(); ++i) {
        Vec2 p = dom.vertex(i), q = dom.vertex(i + 1);
        if (std::max(p.x, q.x) <= z0 + eps) continue;
        // Outward normal of a counterclockwise edge is (dy, -dx)/len.
        if (q.y - p.y < -eps) return false;
    }
    return true;
}

}  // namespace eigenbranch
