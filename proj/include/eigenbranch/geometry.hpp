#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace eigenbranch {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Twice the signed area of (a, b, c); positive for counterclockwise order.
inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Boundary condition carried by one boundary edge. Neumann is Robin with h = 0.
struct BoundaryCondition {
    enum class Kind { dirichlet, robin };
    Kind kind = Kind::dirichlet;
    double h = 0.0;  // Robin coefficient, 1/length

    static BoundaryCondition dirichlet() { return {Kind::dirichlet, 0.0}; }
    static BoundaryCondition robin(double h) { return {Kind::robin, h}; }
    static BoundaryCondition neumann() { return {Kind::robin, 0.0}; }

    bool is_dirichlet() const { return kind == Kind::dirichlet; }
    bool operator==(const BoundaryCondition&) const = default;
};

struct ProfileSample {
    double x;
    double y;
    double slope;
};

/// Lower and upper walls y1(x) < y2(x) of a branch over local abscissa [0, a].
///
/// Walls are stored as (x, y, y') samples on a uniform grid and evaluated with
/// piecewise cubic Hermite interpolation through those samples.
class BranchProfile {
public:
    BranchProfile(double length, std::vector<ProfileSample> lower,
                  std::vector<ProfileSample> upper, bool closed_end);

    double length() const { return length_; }
    bool closed_end() const { return closed_end_; }

    double lower(double x) const { return eval(lower_, x, false); }
    double upper(double x) const { return eval(upper_, x, false); }
    double lower_slope(double x) const { return eval(lower_, x, true); }
    double upper_slope(double x) const { return eval(upper_, x, true); }
    double width(double x) const { return upper(x) - lower(x); }

    std::span<const ProfileSample> lower_samples() const { return lower_; }
    std::span<const ProfileSample> upper_samples() const { return upper_; }

    // Builds a profile by sampling closed-form walls.
    template <class Lo, class LoD, class Up, class UpD>
    static BranchProfile sample(double length, int n, Lo lo, LoD dlo, Up up, UpD dup, bool closed_end)
    {
        std::vector<ProfileSample> l, u;
        l.reserve(n);
        u.reserve(n);
        for (int i = 0; i < n; ++i) {
            double x = length * i / (n - 1);
            l.push_back({x, lo(x), dlo(x)});
            u.push_back({x, up(x), dup(x)});
        }
        return BranchProfile(length, std::move(l), std::move(u), closed_end);
    }

private:
    double eval(const std::vector<ProfileSample>& s, double x, bool derivative) const;

    double length_;
    std::vector<ProfileSample> lower_;
    std::vector<ProfileSample> upper_;
    bool closed_end_;
};

/// Simple, positively oriented polygon with one boundary condition per edge.
///
/// Edge i runs from boundary[i] to boundary[(i + 1) % n]. When `split_x` is
/// set, the line x = split_x separates the basic domain (x < split_x) from the
/// branch (x > split_x), and `branch_profile` (if any) is expressed in local
/// coordinates x_local = x - split_x.
struct PlanarDomain {
    std::string family;
    std::vector<Vec2> boundary;
    std::vector<BoundaryCondition> markers;
    std::optional<double> split_x;
    std::optional<BranchProfile> branch_profile;

    std::size_t size() const { return boundary.size(); }
    Vec2 vertex(std::size_t i) const { return boundary[i % boundary.size()]; }

    double area() const;
    double min_x() const;
    double max_x() const;
    double min_y() const;
    double max_y() const;
    double diameter() const;
    bool contains(Vec2 p) const;
    double distance_to_boundary(Vec2 p) const;

    // Interior angle at vertex i in radians.
    double interior_angle(std::size_t i) const;
};

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

struct CrossSection {
    double x = 0.0;
    std::vector<Interval> intervals;

    double total_length() const;
    double longest() const;
    bool empty() const { return intervals.empty(); }
};

// Signed shoelace area of a closed polyline.
double shoelace_area(std::span<const Vec2> pts);

// Throws GeometryError when the domain violates a PlanarDomain invariant.
void validate(const PlanarDomain& dom);

PlanarDomain build_sine_branch_domain(double side, double branch_length, double width, int n_samples);
PlanarDomain build_star_domain(int n_branches, double r_disk, double l_branch, double w_base,
                               int n_disk_samples);
PlanarDomain build_right_triangle(double a, double b, double d);
PlanarDomain build_elongated_polygon(std::vector<Vec2> vertices, double split_x);

// Square [-L/2, L/2]^2 and a polyline disk; handy fixtures for tests and examples.
PlanarDomain build_rectangle(double width, double height);
PlanarDomain build_disk(double radius, int n_samples);

// Representative elongated hexagon shipped as the default polygon config.
std::vector<Vec2> default_hexagon_vertices();
inline constexpr double default_hexagon_split = 5.0;

// Profile of one star branch in its own axis frame: local x from the base chord
// to the apex, walls symmetric about the axis.
BranchProfile star_branch_profile(double r_disk, double l_branch, double w_base);

// Minimal number of wall samples so the polyline sagitta stays below tol_geom.
int wall_samples_for(double branch_length, double max_curvature, double tol_geom = 1e-4);

void set_boundary_condition(PlanarDomain& dom, BoundaryCondition bc);

CrossSection cross_section(const PlanarDomain& dom, double x);

/// Radius of the largest inscribed disk, within `tol`.
double inradius(const PlanarDomain& dom, double tol);

/// First positive zero of the Bessel function J0.
inline constexpr double bessel_j0_first_zero = 2.404825557695773;

bool inradius_localization_predicate(double rho, double b_max);

struct WallMonotonicity {
    bool monotone;
    bool closed;
};

WallMonotonicity branch_wall_monotonicity(const BranchProfile& profile);

// True when the outward normal has a nonnegative x-component on every boundary
// edge lying (partly) right of the split line.
bool outward_normal_condition(const PlanarDomain& dom);

}  // namespace eigenbranch
