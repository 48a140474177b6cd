#include <algorithm>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/geometry.hpp"

namespace eigenbranch {

namespace {

PlanarDomain finish(std::string family, std::vector<Vec2> pts, std::optional<double> split)
{
    PlanarDomain dom;
    dom.family = std::move(family);
    dom.boundary = std::move(pts);
    dom.markers.assign(dom.boundary.size(), BoundaryCondition::dirichlet());
    dom.split_x = split;
    return dom;
}

}  // namespace

PlanarDomain build_sine_branch_domain(double side, double branch_length, double width, int n_samples)
{
    if (!(side > 0) || !(branch_length > 0) || !(width > 0))
        throw GeometryError("sine branch domain: L, a and b must be positive");
    if (width > side) throw GeometryError("sine branch domain: branch mouth b exceeds square side L");
    if (n_samples < 16) throw GeometryError("sine branch domain: n_samples must be at least 16");

    // Square [-L, 0] x [y0, y0 + L] centred on the mouth [0, b].
    const double y0 = 0.5 * (width - side);
    std::vector<Vec2> pts;
    pts.push_back({-side, y0});
    if (y0 < 0.0) pts.push_back({0.0, y0});
    for (int i = 0; i < n_samples; ++i) {
        double x = branch_length * i / (n_samples - 1);
        pts.push_back({x, std::sin(x)});
    }
    for (int i = n_samples - 1; i >= 0; --i) {
        double x = branch_length * i / (n_samples - 1);
        pts.push_back({x, std::sin(x) + width});
    }
    if (y0 + side > width) pts.push_back({0.0, y0 + side});
    pts.push_back({-side, y0 + side});

    auto dom = finish("sine", std::move(pts), 0.0);
    dom.branch_profile = BranchProfile::sample(
        branch_length, n_samples, [](double x) { return std::sin(x); }, [](double x) { return std::cos(x); },
        [width](double x) { return std::sin(x) + width; }, [](double x) { return std::cos(x); }, false);
    validate(dom);
    return dom;
}

PlanarDomain build_star_domain(int n_branches, double r_disk, double l_branch, double w_base, int n_disk_samples)
{
    if (n_branches < 3) throw GeometryError("star domain: need at least 3 branches");
    if (!(r_disk > 0) || !(l_branch > 0) || !(w_base > 0))
        throw GeometryError("star domain: radius, branch length and base width must be positive");
    if (n_disk_samples < 16) throw GeometryError("star domain: too few disk samples");
    if (w_base >= 2 * r_disk) throw GeometryError("star domain: branch base wider than the disk");
    const double half = std::asin(0.5 * w_base / r_disk);
    const double pitch = 2 * M_PI / n_branches;
    if (2 * half >= pitch)
        throw GeometryError("star domain: branch bases overlap on the disk circle (" + std::to_string(n_branches) +
                            " x " + std::to_string(w_base) + ")");

    const double arc_step = 2 * M_PI / n_disk_samples;
    const double r_apex = r_disk + l_branch;
    std::vector<Vec2> pts;
    for (int k = 0; k < n_branches; ++k) {
        double phi = pitch * k;
        pts.push_back({r_disk * std::cos(phi - half), r_disk * std::sin(phi - half)});
        pts.push_back({r_apex * std::cos(phi), r_apex * std::sin(phi)});
        pts.push_back({r_disk * std::cos(phi + half), r_disk * std::sin(phi + half)});
        double gap_lo = phi + half, gap_hi = phi + pitch - half;
        int m = static_cast<int>(std::floor((gap_hi - gap_lo) / arc_step));
        for (int j = 1; j < m; ++j) {
            double t = gap_lo + (gap_hi - gap_lo) * j / m;
            pts.push_back({r_disk * std::cos(t), r_disk * std::sin(t)});
        }
    }
    auto dom = finish("star", std::move(pts), std::nullopt);
    validate(dom);
    return dom;
}

BranchProfile star_branch_profile(double r_disk, double l_branch, double w_base)
{
    const double half = std::asin(0.5 * w_base / r_disk);
    const double base = r_disk * std::cos(half);
    const double len = r_disk + l_branch - base;
    const double hw = 0.5 * w_base;
    return BranchProfile::sample(
        len, 33, [=](double x) { return -hw * (1 - x / len); }, [=](double) { return hw / len; },
        [=](double x) { return hw * (1 - x / len); }, [=](double) { return -hw / len; }, true);
}

PlanarDomain build_right_triangle(double a, double b, double d)
{
    if (!(b > 0) || !(a >= b)) throw GeometryError("right triangle: need a >= b > 0");
    if (!(d > b)) throw GeometryError("right triangle: need d > b (hypotenuse must cross height b)");
    const double c = a * d / (d - b);
    auto dom = finish("triangle", {{0.0, 0.0}, {c, 0.0}, {0.0, d}}, a);
    const double len = c - a;
    dom.branch_profile = BranchProfile::sample(
        len, 33, [](double) { return 0.0; }, [](double) { return 0.0; },
        [=](double x) { return d * (1 - (x + a) / c); }, [=](double) { return -d / c; }, true);
    validate(dom);
    return dom;
}

PlanarDomain build_elongated_polygon(std::vector<Vec2> vertices, double split_x)
{
    if (vertices.size() < 3) throw GeometryError("polygon: need at least 3 vertices");
    if (vertices.front() == vertices.back()) vertices.pop_back();
    if (shoelace_area(vertices) < 0) std::reverse(vertices.begin(), vertices.end());
    auto dom = finish("polygon", std::move(vertices), split_x);
    validate(dom);
    return dom;
}

PlanarDomain build_rectangle(double width, double height)
{
    if (!(width > 0) || !(height > 0)) throw GeometryError("rectangle: sides must be positive");
    auto dom = finish("rectangle", {{0, 0}, {width, 0}, {width, height}, {0, height}}, std::nullopt);
    validate(dom);
    return dom;
}

PlanarDomain build_disk(double radius, int n_samples)
{
    if (!(radius > 0) || n_samples < 8) throw GeometryError("disk: bad radius or sample count");
    std::vector<Vec2> pts;
    for (int i = 0; i < n_samples; ++i) {
        double t = 2 * M_PI * i / n_samples;
        pts.push_back({radius * std::cos(t), radius * std::sin(t)});
    }
    auto dom = finish("disk", std::move(pts), std::nullopt);
    validate(dom);
    return dom;
}

std::vector<Vec2> default_hexagon_vertices()
{
    return {{0.0, 0.0}, {2.0, 0.0}, {8.0, 0.9}, {8.0, 1.1}, {2.0, 2.0}, {0.0, 2.0}};
}

}  // namespace eigenbranch
