#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eigenbranch/geometry.hpp"

namespace eigenbranch {

struct BoundaryEdge {
    std::array<int, 2> v;  // counterclockwise along the domain boundary
    BoundaryCondition bc;
};

/// Conforming P1 triangulation. Triangles are counterclockwise.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    double h_max = 0.0;

    std::size_t num_vertices() const { return vertices.size(); }
    std::size_t num_triangles() const { return triangles.size(); }

    double triangle_area(std::size_t t) const;
    double total_area() const;
    double min_x() const;
    double max_x() const;
    void update_h_max();
};

/// Delaunay-refinement mesher: constrained Delaunay triangulation of the
/// boundary polyline, refined until every triangle has its smallest angle at
/// least `min_angle_deg` and no edge longer than `h_target`.
///
/// Input corners sharper than the angle bound cannot be honoured; their two
/// walls are pre-split at matching distances so the corner triangle is
/// isosceles and every other triangle satisfies the bound.
Mesh triangulate(const PlanarDomain& dom, double h_target);

/// Uniform red refinement: every triangle split into four at edge midpoints.
Mesh refine(const Mesh& mesh);

struct Location {
    int triangle;
    std::array<double, 3> bary;
};

/// Containing triangle of p (lowest index on ties), or nullopt when outside.
std::optional<Location> locate(const Mesh& mesh, Vec2 p);

/// Bucketed point location for repeated queries.
class PointLocator {
public:
    explicit PointLocator(const Mesh& mesh);
    std::optional<Location> locate(Vec2 p) const;

private:
    const Mesh* mesh_;
    double x0_, y0_, cell_;
    int nx_, ny_;
    std::vector<std::vector<int>> buckets_;
};

struct MeshQuality {
    double min_angle_deg = 180.0;         // over all triangles
    double min_angle_regular_deg = 180.0; // excluding triangles at sharp input corners
    double min_signed_area = 0.0;
    int sharp_corner_triangles = 0;
};

// Sharp corners are input vertices whose interior angle is below `corner_limit_deg`.
MeshQuality mesh_quality(const Mesh& mesh, const PlanarDomain& dom, double corner_limit_deg = 20.0);

/// Structural checks: positive areas, conformity (every interior edge shared by
/// exactly two triangles, boundary edges by one), boundary edges tiling the
/// polyline. Returns an empty string when everything holds.
std::string check_mesh(const Mesh& mesh, const PlanarDomain& dom);

// Text format: vertices / triangles / boundary_edges blocks.
void write_mesh_text(std::ostream& os, const Mesh& mesh);
Mesh read_mesh_text(std::istream& is);
std::string mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const std::string& text);

}  // namespace eigenbranch
