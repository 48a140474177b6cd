#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"
#include "eigenbranch/mesh.hpp"

namespace eigenbranch {

namespace {

std::string bc_name(const BoundaryCondition& bc) { return bc.is_dirichlet() ? "dirichlet" : "robin"; }

BoundaryCondition parse_bc(const std::string& kind, double h)
{
    if (kind == "dirichlet") return BoundaryCondition::dirichlet();
    if (kind == "robin") return BoundaryCondition::robin(h);
    throw DataError("mesh: unknown boundary marker '" + kind + "'");
}

void expect(std::istream& is, const std::string& word)
{
    std::string tok;
    if (!(is >> tok) || tok != word) throw DataError("mesh text: expected '" + word + "', got '" + tok + "'");
}

void check_indices(const Mesh& m)
{
    const int n = static_cast<int>(m.vertices.size());
    for (const auto& t : m.triangles)
        for (int v : t)
            if (v < 0 || v >= n) throw DataError("mesh: triangle vertex index out of range");
    for (const auto& e : m.boundary_edges)
        for (int v : e.v)
            if (v < 0 || v >= n) throw DataError("mesh: boundary edge vertex index out of range");
}

}  // namespace

void write_mesh_text(std::ostream& os, const Mesh& mesh)
{
    os << "vertices " << mesh.vertices.size() << '\n';
    for (const auto& p : mesh.vertices) os << format_sci(p.x) << ' ' << format_sci(p.y) << '\n';
    os << "triangles " << mesh.triangles.size() << '\n';
    for (const auto& t : mesh.triangles) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    os << "boundary_edges " << mesh.boundary_edges.size() << '\n';
    for (const auto& e : mesh.boundary_edges)
        os << e.v[0] << ' ' << e.v[1] << ' ' << bc_name(e.bc) << ' ' << format_sci(e.bc.h) << '\n';
}

Mesh read_mesh_text(std::istream& is)
{
    Mesh m;
    std::size_t n = 0;
    expect(is, "vertices");
    if (!(is >> n)) throw DataError("mesh text: bad vertex count");
    m.vertices.resize(n);
    for (auto& p : m.vertices)
        if (!(is >> p.x >> p.y)) throw DataError("mesh text: truncated vertex block");
    expect(is, "triangles");
    if (!(is >> n)) throw DataError("mesh text: bad triangle count");
    m.triangles.resize(n);
    for (auto& t : m.triangles)
        if (!(is >> t[0] >> t[1] >> t[2])) throw DataError("mesh text: truncated triangle block");
    expect(is, "boundary_edges");
    if (!(is >> n)) throw DataError("mesh text: bad boundary edge count");
    m.boundary_edges.resize(n);
    for (auto& e : m.boundary_edges) {
        std::string kind;
        double h;
        if (!(is >> e.v[0] >> e.v[1] >> kind >> h)) throw DataError("mesh text: truncated boundary block");
        e.bc = parse_bc(kind, h);
    }
    check_indices(m);
    m.update_h_max();
    return m;
}

std::string mesh_to_json(const Mesh& mesh)
{
    nlohmann::json j;
    auto& v = j["vertices"] = nlohmann::json::array();
    for (const auto& p : mesh.vertices) v.push_back({p.x, p.y});
    auto& t = j["triangles"] = nlohmann::json::array();
    for (const auto& tr : mesh.triangles) t.push_back({tr[0], tr[1], tr[2]});
    auto& b = j["boundary_edges"] = nlohmann::json::array();
    for (const auto& e : mesh.boundary_edges)
        b.push_back({{"v", {e.v[0], e.v[1]}}, {"bc", bc_name(e.bc)}, {"h", e.bc.h}});
    j["h_max"] = mesh.h_max;
    return j.dump();
}

Mesh mesh_from_json(const std::string& text)
{
    Mesh m;
    try {
        auto j = nlohmann::json::parse(text);
        for (const auto& p : j.at("vertices")) m.vertices.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        for (const auto& t : j.at("triangles")) m.triangles.push_back({t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>()});
        for (const auto& e : j.at("boundary_edges"))
            m.boundary_edges.push_back({{e.at("v").at(0).get<int>(), e.at("v").at(1).get<int>()},
                                        parse_bc(e.at("bc").get<std::string>(), e.value("h", 0.0))});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("mesh json: ") + e.what());
    }
    check_indices(m);
    m.update_h_max();
    return m;
}

}  // namespace eigenbranch
