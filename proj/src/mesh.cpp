#include "eigenbranch/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace eigenbranch {

double Mesh::triangle_area(std::size_t t) const
{
    const auto& v = triangles[t];
    return 0.5 * orient(vertices[v[0]], vertices[v[1]], vertices[v[2]]);
}

double Mesh::total_area() const
{
    double s = 0.0;
    for (std::size_t t = 0; t < triangles.size(); ++t) s += triangle_area(t);
    return s;
}

double Mesh::min_x() const
{
    double m = vertices.front().x;
    for (const auto& p : vertices) m = std::min(m, p.x);
    return m;
}

double Mesh::max_x() const
{
    double m = vertices.front().x;
    for (const auto& p : vertices) m = std::max(m, p.x);
    return m;
}

void Mesh::update_h_max()
{
    h_max = 0.0;
    for (const auto& t : triangles)
        for (int k = 0; k < 3; ++k) h_max = std::max(h_max, distance(vertices[t[k]], vertices[t[(k + 1) % 3]]));
}

Mesh refine(const Mesh& mesh)
{
    Mesh out;
    out.vertices = mesh.vertices;
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
        auto key = std::minmax(a, b);
        auto it = mid.find(key);
        if (it != mid.end()) return it->second;
        int id = static_cast<int>(out.vertices.size());
        out.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) * 0.5);
        mid.emplace(key, id);
        return id;
    };
    out.triangles.reserve(4 * mesh.triangles.size());
    for (const auto& t : mesh.triangles) {
        int a = t[0], b = t[1], c = t[2];
        int ab = midpoint(a, b), bc = midpoint(b, c), ca = midpoint(c, a);
        out.triangles.push_back({a, ab, ca});
        out.triangles.push_back({ab, b, bc});
        out.triangles.push_back({ca, bc, c});
        out.triangles.push_back({ab, bc, ca});
    }
    for (const auto& e : mesh.boundary_edges) {
        int m = midpoint(e.v[0], e.v[1]);
        out.boundary_edges.push_back({{e.v[0], m}, e.bc});
        out.boundary_edges.push_back({{m, e.v[1]}, e.bc});
    }
    out.update_h_max();
    return out;
}

namespace {

std::optional<Location> barycentric_in(const Mesh& mesh, int t, Vec2 p)
{
    const auto& v = mesh.triangles[t];
    Vec2 a = mesh.vertices[v[0]], b = mesh.vertices[v[1]], c = mesh.vertices[v[2]];
    double area2 = orient(a, b, c);
    std::array<double, 3> w{orient(p, b, c) / area2, orient(a, p, c) / area2, orient(a, b, p) / area2};
    const double eps = 1e-12;
    if (w[0] < -eps || w[1] < -eps || w[2] < -eps) return std::nullopt;
    double s = 0.0;
    for (auto& x : w) {
        x = std::clamp(x, 0.0, 1.0);
        s += x;
    }
    for (auto& x : w) x /= s;
    return Location{t, w};
}

}  // namespace

std::optional<Location> locate(const Mesh& mesh, Vec2 p)
{
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        if (auto loc = barycentric_in(mesh, static_cast<int>(t), p)) return loc;
    return std::nullopt;
}

PointLocator::PointLocator(const Mesh& mesh) : mesh_(&mesh)
{
    double x1 = mesh.vertices.front().x, y1 = mesh.vertices.front().y;
    x0_ = x1;
    y0_ = y1;
    for (const auto& p : mesh.vertices) {
        x0_ = std::min(x0_, p.x);
        y0_ = std::min(y0_, p.y);
        x1 = std::max(x1, p.x);
        y1 = std::max(y1, p.y);
    }
    double area = std::max((x1 - x0_) * (y1 - y0_), 1e-300);
    cell_ = std::sqrt(area / std::max<std::size_t>(1, mesh.triangles.size()));
    nx_ = std::max(1, static_cast<int>(std::ceil((x1 - x0_) / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::ceil((y1 - y0_) / cell_)) + 1);
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        double bx0 = 1e300, by0 = 1e300, bx1 = -1e300, by1 = -1e300;
        for (int v : mesh.triangles[t]) {
            bx0 = std::min(bx0, mesh.vertices[v].x);
            by0 = std::min(by0, mesh.vertices[v].y);
            bx1 = std::max(bx1, mesh.vertices[v].x);
            by1 = std::max(by1, mesh.vertices[v].y);
        }
        int i0 = std::clamp(static_cast<int>((bx0 - x0_) / cell_) - 1, 0, nx_ - 1);
        int i1 = std::clamp(static_cast<int>((bx1 - x0_) / cell_) + 1, 0, nx_ - 1);
        int j0 = std::clamp(static_cast<int>((by0 - y0_) / cell_) - 1, 0, ny_ - 1);
        int j1 = std::clamp(static_cast<int>((by1 - y0_) / cell_) + 1, 0, ny_ - 1);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) buckets_[static_cast<std::size_t>(j) * nx_ + i].push_back(static_cast<int>(t));
    }
}

std::optional<Location> PointLocator::locate(Vec2 p) const
{
    int i = static_cast<int>(std::floor((p.x - x0_) / cell_));
    int j = static_cast<int>(std::floor((p.y - y0_) / cell_));
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return std::nullopt;
    for (int t : buckets_[static_cast<std::size_t>(j) * nx_ + i])
        if (auto loc = barycentric_in(*mesh_, t, p)) return loc;
    return std::nullopt;
}

MeshQuality mesh_quality(const Mesh& mesh, const PlanarDomain& dom, double corner_limit_deg)
{
    std::set<std::pair<double, double>> sharp;
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (dom.interior_angle(i) < corner_limit_deg * M_PI / 180.0) sharp.insert({dom.boundary[i].x, dom.boundary[i].y});

    MeshQuality q;
    q.min_signed_area = mesh.triangles.empty() ? 0.0 : 1e300;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& v = mesh.triangles[t];
        q.min_signed_area = std::min(q.min_signed_area, mesh.triangle_area(t));
        double amin = 180.0;
        for (int k = 0; k < 3; ++k) {
            Vec2 p = mesh.vertices[v[k]], a = mesh.vertices[v[(k + 1) % 3]], b = mesh.vertices[v[(k + 2) % 3]];
            double ang = std::atan2(std::abs(cross(a - p, b - p)), dot(a - p, b - p)) * 180.0 / M_PI;
            amin = std::min(amin, ang);
        }
        q.min_angle_deg = std::min(q.min_angle_deg, amin);
        bool at_sharp = false;
        for (int k = 0; k < 3; ++k)
            at_sharp = at_sharp || sharp.count({mesh.vertices[v[k]].x, mesh.vertices[v[k]].y});
        if (at_sharp)
            ++q.sharp_corner_triangles;
        else
            q.min_angle_regular_deg = std::min(q.min_angle_regular_deg, amin);
    }
    return q;
}

std::string check_mesh(const Mesh& mesh, const PlanarDomain& dom)
{
    std::ostringstream err;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t)
        if (!(mesh.triangle_area(t) > 0)) {
            err << "triangle " << t << " has non-positive area; ";
            break;
        }

    std::map<std::pair<int, int>, int> directed;
    for (const auto& t : mesh.triangles)
        for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
    std::set<std::pair<int, int>> open;
    for (const auto& [e, c] : directed) {
        if (c != 1) {
            err << "edge (" << e.first << "," << e.second << ") used " << c << " times in one direction; ";
            break;
        }
        if (!directed.count({e.second, e.first})) open.insert(e);
    }
    std::set<std::pair<int, int>> bset;
    for (const auto& b : mesh.boundary_edges) bset.insert({b.v[0], b.v[1]});
    if (bset != open) err << "boundary edge list does not match the unpaired triangle edges; ";

    // Boundary edges must tile the input polyline.
    const double tol = 1e-9 * dom.diameter();
    std::vector<double> covered(dom.size(), 0.0);
    for (const auto& b : mesh.boundary_edges) {
        Vec2 p = mesh.vertices[b.v[0]], q = mesh.vertices[b.v[1]];
        bool found = false;
        for (std::size_t s = 0; s < dom.size() && !found; ++s) {
            Vec2 a = dom.vertex(s), c = dom.vertex(s + 1);
            if (point_segment_distance(p, a, c) <= tol && point_segment_distance(q, a, c) <= tol &&
                dot(q - p, c - a) > 0) {
                covered[s] += distance(p, q);
                found = true;
                if (!(b.bc == dom.markers[s])) err << "boundary edge marker differs from its segment; ";
            }
        }
        if (!found) {
            err << "boundary edge off the polyline at (" << p.x << "," << p.y << "); ";
            break;
        }
    }
    for (std::size_t s = 0; s < dom.size(); ++s)
        if (std::abs(covered[s] - distance(dom.vertex(s), dom.vertex(s + 1))) > 1e-9 * dom.diameter()) {
            err << "segment " << s << " not tiled by boundary edges; ";
            break;
        }

    std::set<std::pair<double, double>> coords;
    for (const auto& v : mesh.vertices) coords.insert({v.x, v.y});
    for (const auto& p : dom.boundary)
        if (!coords.count({p.x, p.y})) {
            err << "polyline vertex (" << p.x << "," << p.y << ") missing from mesh; ";
            break;
        }
    return err.str();
}

}  // namespace eigenbranch
