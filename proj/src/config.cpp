#include "eigenbranch/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "eigenbranch/errors.hpp"
#include "eigenbranch/format.hpp"

namespace eigenbranch {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& where, std::initializer_list<const char*> keys)
{
    if (!j.is_object()) throw InvalidInput("config: '" + where + "' must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : j.items())
        if (!allowed.count(k)) throw InvalidInput("config: unknown key '" + k + "' in '" + where + "'");
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput("config: bad value for '" + where + "." + key + "'");
    }
}

void read_seed(const json& j, std::uint64_t& out)
{
    if (!j.contains("seed")) return;
    const auto& s = j.at("seed");
    if (s.is_number_unsigned()) {
        out = s.get<std::uint64_t>();
        return;
    }
    if (s.is_string()) {
        try {
            std::size_t pos = 0;
            auto text = s.get<std::string>();
            out = std::stoull(text, &pos, 16);
            if (pos == text.size()) return;
        } catch (const std::exception&) {
        }
    }
    throw InvalidInput("config: eig.seed must be a non-negative integer or a hex string");
}

BoundaryCondition parse_bc(const json& j)
{
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "dirichlet") return BoundaryCondition::dirichlet();
        if (s == "neumann") return BoundaryCondition::neumann();
        throw InvalidInput("config: bc must be dirichlet, neumann or {\"type\": \"robin\", \"h\": value}");
    }
    reject_unknown(j, "domain.bc", {"type", "h"});
    std::string type;
    double h = 0.0;
    read(j, "type", type, "domain.bc");
    read(j, "h", h, "domain.bc");
    if (type == "dirichlet") return BoundaryCondition::dirichlet();
    if (type == "neumann") return BoundaryCondition::neumann();
    if (type == "robin") {
        if (!(h >= 0) || !std::isfinite(h)) throw InvalidInput("config: Robin coefficient h must be >= 0");
        return BoundaryCondition::robin(h);
    }
    throw InvalidInput("config: unknown boundary condition type '" + type + "'");
}

json bc_to_json(const BoundaryCondition& bc)
{
    if (bc.is_dirichlet()) return "dirichlet";
    return json{{"type", "robin"}, {"h", round_sci(bc.h)}};
}

void validate(const RunConfig& c)
{
    static const std::set<std::string> families{"sine", "star", "triangle", "polygon", "rectangle"};
    if (!families.count(c.domain.family)) throw InvalidInput("config: unknown domain family '" + c.domain.family + "'");
    if (c.domain.family == "polygon" && c.domain.vertices.empty() == false && c.domain.vertices.size() < 3)
        throw InvalidInput("config: polygon needs at least 3 vertices");
    if (!(c.mesh.h_target > 0) || !std::isfinite(c.mesh.h_target)) throw InvalidInput("config: mesh.h_target must be positive");
    if (c.mesh.refinements < 0 || c.mesh.refinements > 6) throw InvalidInput("config: mesh.refinements must be in [0, 6]");
    if (c.eig.k < 1) throw InvalidInput("config: eig.k must be at least 1");
    if (!(c.eig.tol > 0) || c.eig.tol > 1e-4) throw InvalidInput("config: eig.tol must be in (0, 1e-4]");
    if (c.eig.max_iter < 1) throw InvalidInput("config: eig.max_iter must be positive");
    if (!(c.threshold.z0 >= 0)) throw InvalidInput("config: threshold.z0 must be >= 0");
    if (c.threshold.n_samples < 16) throw InvalidInput("config: threshold.n_samples must be at least 16");
    if (c.certify.theorem != "auto" && c.certify.theorem != "1" && c.certify.theorem != "2")
        throw InvalidInput("config: certify.theorem must be auto, 1 or 2");
    if (c.certify.mode < 1 || c.certify.mode > c.eig.k) throw InvalidInput("config: certify.mode must be in [1, eig.k]");
    if (c.certify.grid_points < 2) throw InvalidInput("config: certify.grid_points must be at least 2");
    if (!(c.certify.tol_cert >= 0)) throw InvalidInput("config: certify.tol_cert must be >= 0");
    if (c.certify.eigenvector_file.empty() != c.certify.mesh_file.empty())
        throw InvalidInput("config: certify.eigenvector_file and certify.mesh_file go together");
    const auto& d = c.diagram;
    if (!(d.zeta_min > 0) || !(d.zeta_max > d.zeta_min) || !(d.kappa_min > 0) || !(d.kappa_max >= d.kappa_min) ||
        d.n_zeta < 2 || d.n_kappa < 1)
        throw InvalidInput("config: malformed diagram range");
}

}  // namespace

RunConfig parse_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("config: not valid JSON: ") + e.what());
    }
    reject_unknown(j, "config", {"domain", "mesh", "eig", "threshold", "certify", "diagram", "output"});
    RunConfig c;
    if (j.contains("domain")) {
        const auto& d = j["domain"];
        reject_unknown(d, "domain", {"family", "params", "bc"});
        read(d, "family", c.domain.family, "domain");
        if (d.contains("params")) {
            const auto& p = d["params"];
            reject_unknown(p, "domain.params",
                           {"L", "a", "b", "n_samples", "n_branches", "r_disk", "l_branch", "w_base", "n_disk_samples",
                            "d", "vertices", "split_x", "width", "height"});
            auto& o = c.domain;
            read(p, "L", o.L, "domain.params");
            read(p, "a", o.a, "domain.params");
            read(p, "b", o.b, "domain.params");
            read(p, "n_samples", o.n_samples, "domain.params");
            read(p, "n_branches", o.n_branches, "domain.params");
            read(p, "r_disk", o.r_disk, "domain.params");
            read(p, "l_branch", o.l_branch, "domain.params");
            read(p, "w_base", o.w_base, "domain.params");
            read(p, "n_disk_samples", o.n_disk_samples, "domain.params");
            read(p, "d", o.d, "domain.params");
            read(p, "split_x", o.split_x, "domain.params");
            read(p, "width", o.width, "domain.params");
            read(p, "height", o.height, "domain.params");
            if (p.contains("vertices")) {
                std::vector<std::array<double, 2>> v;
                read(p, "vertices", v, "domain.params");
                for (auto [x, y] : v) o.vertices.push_back({x, y});
            }
        }
        if (d.contains("bc")) c.domain.bc = parse_bc(d["bc"]);
    }
    if (j.contains("mesh")) {
        reject_unknown(j["mesh"], "mesh", {"h_target", "refinements"});
        read(j["mesh"], "h_target", c.mesh.h_target, "mesh");
        read(j["mesh"], "refinements", c.mesh.refinements, "mesh");
    }
    if (j.contains("eig")) {
        reject_unknown(j["eig"], "eig", {"k", "tol", "seed", "max_iter"});
        read(j["eig"], "k", c.eig.k, "eig");
        read(j["eig"], "tol", c.eig.tol, "eig");
        read(j["eig"], "max_iter", c.eig.max_iter, "eig");
        read_seed(j["eig"], c.eig.seed);
    }
    if (j.contains("threshold")) {
        reject_unknown(j["threshold"], "threshold", {"z0", "n_samples"});
        read(j["threshold"], "z0", c.threshold.z0, "threshold");
        read(j["threshold"], "n_samples", c.threshold.n_samples, "threshold");
    }
    if (j.contains("certify")) {
        const auto& s = j["certify"];
        reject_unknown(s, "certify", {"theorem", "mode", "grid_points", "tol_cert", "eigenvector", "mesh"});
        read(s, "theorem", c.certify.theorem, "certify");
        read(s, "mode", c.certify.mode, "certify");
        read(s, "grid_points", c.certify.grid_points, "certify");
        read(s, "tol_cert", c.certify.tol_cert, "certify");
        read(s, "eigenvector", c.certify.eigenvector_file, "certify");
        read(s, "mesh", c.certify.mesh_file, "certify");
    }
    if (j.contains("diagram")) {
        const auto& s = j["diagram"];
        reject_unknown(s, "diagram", {"zeta_min", "zeta_max", "kappa_min", "kappa_max", "n_zeta", "n_kappa"});
        read(s, "zeta_min", c.diagram.zeta_min, "diagram");
        read(s, "zeta_max", c.diagram.zeta_max, "diagram");
        read(s, "kappa_min", c.diagram.kappa_min, "diagram");
        read(s, "kappa_max", c.diagram.kappa_max, "diagram");
        read(s, "n_zeta", c.diagram.n_zeta, "diagram");
        read(s, "n_kappa", c.diagram.n_kappa, "diagram");
    }
    if (j.contains("output")) {
        reject_unknown(j["output"], "output", {"directory"});
        read(j["output"], "directory", c.output_directory, "output");
    }
    validate(c);
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InvalidInput("config: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c)
{
    const auto& d = c.domain;
    json params;
    if (d.family == "sine")
        params = {{"L", d.L}, {"a", d.a}, {"b", d.b}, {"n_samples", d.n_samples}};
    else if (d.family == "star")
        params = {{"n_branches", d.n_branches}, {"r_disk", d.r_disk}, {"l_branch", d.l_branch},
                  {"w_base", d.w_base},         {"n_disk_samples", d.n_disk_samples}};
    else if (d.family == "triangle")
        params = {{"a", d.a}, {"b", d.b}, {"d", d.d}};
    else if (d.family == "polygon") {
        json v = json::array();
        for (auto p : d.vertices) v.push_back({p.x, p.y});
        params = {{"vertices", v}, {"split_x", d.split_x}};
    } else
        params = {{"width", d.width}, {"height", d.height}};
    std::ostringstream seed;
    seed << "0x" << std::hex << c.eig.seed;
    json j{{"domain", {{"family", d.family}, {"params", params}, {"bc", bc_to_json(d.bc)}}},
           {"mesh", {{"h_target", c.mesh.h_target}, {"refinements", c.mesh.refinements}}},
           {"eig", {{"k", c.eig.k}, {"tol", c.eig.tol}, {"seed", seed.str()}, {"max_iter", c.eig.max_iter}}},
           {"threshold", {{"z0", c.threshold.z0}, {"n_samples", c.threshold.n_samples}}},
           {"certify",
            {{"theorem", c.certify.theorem},
             {"mode", c.certify.mode},
             {"grid_points", c.certify.grid_points},
             {"tol_cert", c.certify.tol_cert}}},
           {"diagram",
            {{"zeta_min", c.diagram.zeta_min},
             {"zeta_max", c.diagram.zeta_max},
             {"kappa_min", c.diagram.kappa_min},
             {"kappa_max", c.diagram.kappa_max},
             {"n_zeta", c.diagram.n_zeta},
             {"n_kappa", c.diagram.n_kappa}}},
           {"output", {{"directory", c.output_directory}}}};
    if (!c.certify.eigenvector_file.empty()) {
        j["certify"]["eigenvector"] = c.certify.eigenvector_file;
        j["certify"]["mesh"] = c.certify.mesh_file;
    }
    return j.dump(2);
}

PlanarDomain build_domain(const DomainConfig& d)
{
    PlanarDomain dom;
    if (d.family == "sine") {
        int n = d.n_samples > 0 ? d.n_samples : wall_samples_for(d.a, 1.0);
        dom = build_sine_branch_domain(d.L, d.a, d.b, n);
    } else if (d.family == "star") {
        dom = build_star_domain(d.n_branches, d.r_disk, d.l_branch, d.w_base, d.n_disk_samples);
    } else if (d.family == "triangle") {
        dom = build_right_triangle(d.a, d.b, d.d);
    } else if (d.family == "polygon") {
        dom = build_elongated_polygon(d.vertices.empty() ? default_hexagon_vertices() : d.vertices, d.split_x);
    } else if (d.family == "rectangle") {
        dom = build_rectangle(d.width, d.height);
    } else {
        throw InvalidInput("unknown domain family '" + d.family + "'");
    }
    set_boundary_condition(dom, d.bc);
    return dom;
}

}  // namespace eigenbranch
