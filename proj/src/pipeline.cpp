#include "eigenbranch/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eigenbranch/fem.hpp"
#include "eigenbranch/format.hpp"
#include "eigenbranch/parallel.hpp"
#include "eigenbranch/triangle_localization.hpp"

namespace eigenbranch {

namespace fs = std::filesystem;
using nlohmann::json;

LogLevel log_level()
{
    static const LogLevel level = [] {
        const char* v = std::getenv("EIGENBRANCH_LOG");
        if (!v) return LogLevel::info;
        std::string s(v);
        if (s == "quiet" || s == "0" || s == "off") return LogLevel::quiet;
        if (s == "debug" || s == "2") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

void log_info(const std::string& msg)
{
    if (log_level() != LogLevel::quiet) std::cerr << "eigenbranch: " << msg << '\n';
}

void log_debug(const std::string& msg)
{
    if (log_level() == LogLevel::debug) std::cerr << "eigenbranch: " << msg << '\n';
}

namespace {

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void make_dir(const fs::path& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw InvalidInput("cannot create output directory '" + dir.string() + "': " + ec.message());
}

std::ofstream open_out(const fs::path& p)
{
    std::ofstream os(p, std::ios::binary);
    if (!os) throw InvalidInput("cannot write '" + p.string() + "'");
    return os;
}

void write_file(const fs::path& p, const std::string& text)
{
    auto os = open_out(p);
    os << text;
    if (text.empty() || text.back() != '\n') os << '\n';
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InvalidInput("cannot open '" + p.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json num(double v) { return std::isfinite(v) ? json(round_sci(v)) : json(nullptr); }

std::string domain_to_json(const PlanarDomain& dom)
{
    json pts = json::array(), markers = json::array();
    for (auto p : dom.boundary) pts.push_back({round_sci(p.x), round_sci(p.y)});
    for (const auto& m : dom.markers)
        markers.push_back(m.is_dirichlet() ? json("dirichlet") : json{{"type", "robin"}, {"h", round_sci(m.h)}});
    json j{{"family", dom.family}, {"vertices", pts}, {"markers", markers}, {"area", round_sci(dom.area())}};
    j["split_x"] = dom.split_x ? json(round_sci(*dom.split_x)) : json(nullptr);
    return j.dump(2);
}

void write_mesh_edges(const fs::path& p, const Mesh& mesh)
{
    auto os = open_out(p);
    for (const auto& t : mesh.triangles) {
        for (int k = 0; k <= 3; ++k) {
            Vec2 v = mesh.vertices[t[k % 3]];
            os << format_sci(v.x) << ' ' << format_sci(v.y) << '\n';
        }
        os << '\n';
    }
}

// Values of each field on a regular grid over the mesh bounding box; points
// outside the mesh are skipped.
void write_field_grid(const fs::path& p, const Mesh& mesh, const std::vector<EigenPair>& pairs)
{
    double x0 = mesh.min_x(), x1 = mesh.max_x(), y0 = mesh.vertices[0].y, y1 = y0;
    for (auto v : mesh.vertices) {
        y0 = std::min(y0, v.y);
        y1 = std::max(y1, v.y);
    }
    const double cell = std::max(x1 - x0, y1 - y0) / 200.0;
    const int nx = static_cast<int>(std::ceil((x1 - x0) / cell)) + 1;
    const int ny = static_cast<int>(std::ceil((y1 - y0) / cell)) + 1;
    PointLocator loc(mesh);
    auto os = open_out(p);
    os << "x,y";
    for (const auto& e : pairs) os << ",u" << e.index;
    os << '\n';
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            Vec2 q{x0 + i * cell, y0 + j * cell};
            auto l = loc.locate(q);
            if (!l) continue;
            const auto& t = mesh.triangles[l->triangle];
            os << format_sci(q.x) << ',' << format_sci(q.y);
            for (const auto& e : pairs) {
                double v = l->bary[0] * e.u[t[0]] + l->bary[1] * e.u[t[1]] + l->bary[2] * e.u[t[2]];
                os << ',' << format_sci(v);
            }
            os << '\n';
        }
}

json eigen_summary(const std::vector<EigenPair>& pairs)
{
    json l = json::array();
    for (const auto& p : pairs) l.push_back(round_sci(p.lambda));
    return l;
}

fs::path prefixed(const fs::path& dir, const std::string& prefix, const std::string& name)
{
    return dir / (prefix.empty() ? name : prefix + "_" + name);
}

struct SolveArtifacts {
    MeshedDomain md;
    AssembledSystem sys;
    std::vector<EigenPair> pairs;
    json outputs = json::array();
};

void write_mesh_outputs(const MeshedDomain& md, const fs::path& out, json& outputs)
{
    {
        auto os = open_out(out / "mesh.txt");
        write_mesh_text(os, md.mesh);
    }
    write_file(out / "mesh.json", mesh_to_json(md.mesh));
    write_file(out / "domain.json", domain_to_json(md.domain));
    write_mesh_edges(out / "mesh_edges.dat", md.mesh);
    write_file(out / "mesh.gp",
               "set size ratio -1\nunset key\nplot 'mesh_edges.dat' using 1:2 with lines lw 0.5\n");
    for (const char* f : {"mesh.txt", "mesh.json", "domain.json", "mesh_edges.dat", "mesh.gp"}) outputs.push_back(f);
}

SolveArtifacts run_solve(const RunConfig& cfg, const fs::path& out)
{
    SolveArtifacts a;
    a.md = mesh_domain(cfg);
    write_mesh_outputs(a.md, out, a.outputs);
    Stopwatch sw;
    a.sys = assemble(a.md.mesh);
    a.pairs = smallest_eigenpairs(a.sys, cfg.eig.k, cfg.eig.tol, {cfg.eig.seed, cfg.eig.max_iter});
    log_info("solved " + std::to_string(cfg.eig.k) + " eigenpairs, n = " + std::to_string(a.sys.size()) + " (" +
             format_sci(sw.seconds()) + " s)");
    write_file(out / "eigenpairs.json", eigenpairs_to_json(a.pairs));
    a.outputs.push_back("eigenpairs.json");
    for (const auto& p : a.pairs) {
        std::string name = "eigenvector_" + std::to_string(p.index) + ".txt";
        auto os = open_out(out / name);
        write_eigenvector(os, p);
        a.outputs.push_back(name);
    }
    write_field_grid(out / "field.csv", a.md.mesh, a.pairs);
    std::string gp = "set datafile separator ','\nset size ratio -1\nset view map\n";
    for (const auto& p : a.pairs)
        gp += "set title 'mode " + std::to_string(p.index) + "'\nsplot 'field.csv' using 1:2:" +
              std::to_string(p.index + 2) + " with points pt 5 ps 0.3 palette notitle\npause -1\n";
    write_file(out / "solve.gp", gp);
    a.outputs.push_back("field.csv");
    a.outputs.push_back("solve.gp");
    return a;
}

json certify_summary(const CertifyOutcome& c)
{
    json j{{"theorem", c.theorem},
           {"verdict", to_string(c.report.verdict)},
           {"lambda", num(c.report.lambda)},
           {"mu", num(c.report.mu)},
           {"beta", num(c.report.beta)},
           {"checked", c.report.checked},
           {"violations", c.report.violations}};
    j["fitted_rate"] = c.report.fitted_rate ? num(*c.report.fitted_rate) : json(nullptr);
    if (c.maslov) {
        j["maslov_fraction"] = num(c.maslov->fraction);
        j["maslov_holds"] = c.maslov->holds;
    }
    return j;
}

void write_certify_outputs(const CertifyOutcome& c, const fs::path& out, const std::string& prefix, json& outputs)
{
    write_file(prefixed(out, prefix, "decay_report.json"), decay_report_to_json(c.report));
    {
        auto os = open_out(prefixed(out, prefix, "decay.csv"));
        write_decay_csv(os, c.report);
    }
    const std::string csv = prefixed(fs::path(), prefix, "decay.csv").string();
    const int col = c.report.theorem == "tail" ? 3 : 2;
    write_file(prefixed(out, prefix, "decay.gp"),
               "set datafile separator ','\nset key autotitle columnhead\nset logscale y\nset xlabel 'z'\n"
               "plot '" + csv + "' using 1:" + std::to_string(col) + " with linespoints, '" + csv +
                   "' using 1:4 with lines dt 2\n");
    outputs.push_back(prefixed(fs::path(), prefix, "decay_report.json").string());
    outputs.push_back(csv);
    outputs.push_back(prefixed(fs::path(), prefix, "decay.gp").string());
    if (c.maslov) {
        write_file(prefixed(out, prefix, "maslov.json"), maslov_report_to_json(*c.maslov));
        outputs.push_back(prefixed(fs::path(), prefix, "maslov.json").string());
    }
}

ExitCode verdict_code(Verdict v)
{
    switch (v) {
    case Verdict::pass: return ExitCode::ok;
    case Verdict::fail: return ExitCode::certify_fail;
    case Verdict::not_applicable: return ExitCode::not_applicable;
    }
    return ExitCode::internal;
}

void write_threshold_outputs(const BranchThreshold& th, const fs::path& out, json& outputs)
{
    write_file(out / "threshold.json", threshold_to_json(th.curve));
    {
        auto os = open_out(out / "threshold.csv");
        write_threshold_csv(os, th.curve);
    }
    write_file(out / "threshold.gp",
               "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\nset ylabel 'mu_1(x)'\n"
               "plot 'threshold.csv' using 1:2 with lines\n");
    for (const char* f : {"threshold.json", "threshold.csv", "threshold.gp"}) outputs.push_back(f);
}

void write_diagram_outputs(const Diagram& d, const fs::path& out, json& outputs)
{
    {
        auto os = open_out(out / "diagram.csv");
        write_diagram_csv(os, d);
    }
    write_file(out / "diagram.json", diagram_to_json(d));
    write_file(out / "diagram.gp",
               "set datafile separator ','\nunset key\nset xlabel 'zeta'\nset ylabel 'kappa'\n"
               "plot 'diagram.csv' using 1:($3 > 0 ? $2 : 1/0) with points pt 5 ps 0.4\n");
    for (const char* f : {"diagram.csv", "diagram.json", "diagram.gp"}) outputs.push_back(f);
}

}  // namespace

MeshedDomain mesh_domain(const RunConfig& cfg)
{
    Stopwatch sw;
    MeshedDomain md;
    md.domain = build_domain(cfg.domain);
    md.mesh = triangulate(md.domain, cfg.mesh.h_target);
    for (int r = 0; r < cfg.mesh.refinements; ++r) md.mesh = refine(md.mesh);
    log_info("meshed " + md.domain.family + ": " + std::to_string(md.mesh.num_vertices()) + " vertices, " +
             std::to_string(md.mesh.num_triangles()) + " triangles (" + format_sci(sw.seconds()) + " s)");
    return md;
}

std::optional<BranchThreshold> branch_threshold(const PlanarDomain& dom, const RunConfig& cfg)
{
    if (!dom.split_x) return std::nullopt;
    ThresholdOptions opt;
    opt.n_samples = cfg.threshold.n_samples;
    BranchThreshold th;
    if (dom.branch_profile) {
        const auto& prof = *dom.branch_profile;
        auto wm = branch_wall_monotonicity(prof);
        th.curve = threshold_curve(prof, dom.markers.front(), cfg.threshold.z0, opt);
        th.split_x = *dom.split_x;
        th.monotone = wm.monotone;
        th.closed = prof.closed_end();
    } else {
        const double from = *dom.split_x + cfg.threshold.z0;
        th.curve = threshold_curve_domain(dom, from, dom.max_x(), opt);
        th.split_x = 0.0;
        th.monotone = outward_normal_condition(dom);
        th.closed = false;
    }
    return th;
}

CertifyOutcome certify_pair(const PlanarDomain& dom, const Mesh& mesh, const BranchThreshold& th, double lambda,
                            const Eigen::VectorXd& u, const RunConfig& cfg)
{
    bool robin = false;
    for (const auto& m : dom.markers) robin = robin || !m.is_dirichlet();
    CertifyOutcome c;
    if (cfg.certify.theorem == "auto")
        c.theorem = robin || th.closed ? 2 : 1;
    else
        c.theorem = cfg.certify.theorem == "2" ? 2 : 1;

    DecayOptions opt;
    opt.grid_points = cfg.certify.grid_points;
    opt.tol_cert = cfg.certify.tol_cert;
    const double z0 = th.curve.z0 + th.split_x;
    c.report = c.theorem == 1 ? certify_theorem1(mesh, u, lambda, th.curve.mu, z0, th.monotone, opt)
                              : certify_theorem2(mesh, u, lambda, th.curve.mu, z0, opt);
    if (th.closed && lambda < th.curve.mu) {
        std::vector<double> grid(c.report.z_grid);
        if (grid.size() >= 8) c.maslov = maslov_check(mesh, u, lambda, th.curve.mu, grid);
    }
    return c;
}

StarTipReport star_tip_check(const DomainConfig& d, const Mesh& mesh, const AssembledSystem& sys,
                             const std::vector<EigenPair>& pairs)
{
    const double half = std::asin(0.5 * d.w_base / d.r_disk);
    const double base = d.r_disk * std::cos(half);
    const double len = d.r_disk + d.l_branch - base;
    const double pitch = 2 * M_PI / d.n_branches;

    StarTipReport r;
    for (int v : sys.free_dofs)
        if (norm(mesh.vertices[v]) > base + 0.5 * len) ++r.branch_free_vertices;

    const int n_disk = 65;
    const std::size_t m = pairs.size();
    r.disk_max.assign(m, 0.0);
    r.tip_max.assign(m, 0.0);
    r.ratio.assign(m, 0.0);
    for (std::size_t e = 0; e < m; ++e) {
        const auto& u = pairs[e].u;
        std::vector<double> disk(n_disk), tips(2 * d.n_branches);
        parallel_for(n_disk, [&](std::size_t i) {
            double x = d.r_disk * (-1.0 + 2.0 * (i + 1.0) / (n_disk + 1.0));
            double y = std::sqrt(d.r_disk * d.r_disk - x * x);
            disk[i] = segment_norm(mesh, u, {x, -y}, {x, y});
        });
        parallel_for(tips.size(), [&](std::size_t i) {
            double phi = pitch * static_cast<double>(i / 2);
            double frac = i % 2 == 0 ? 0.5 : 0.75;
            double s = base + frac * len;
            double hw = 0.5 * d.w_base * (1.0 - frac) * 1.1;
            Vec2 axis{std::cos(phi), std::sin(phi)}, nrm{-axis.y, axis.x};
            tips[i] = segment_norm(mesh, u, axis * s - nrm * hw, axis * s + nrm * hw);
        });
        r.disk_max[e] = *std::max_element(disk.begin(), disk.end());
        r.tip_max[e] = *std::max_element(tips.begin(), tips.end());
        r.ratio[e] = r.disk_max[e] > 0 ? r.tip_max[e] / r.disk_max[e] : std::numeric_limits<double>::infinity();
    }
    return r;
}

CommandResult cmd_mesh(const RunConfig& cfg, const fs::path& out)
{
    make_dir(out);
    auto md = mesh_domain(cfg);
    CommandResult res;
    json outputs = json::array();
    write_mesh_outputs(md, out, outputs);
    auto q = mesh_quality(md.mesh, md.domain);
    res.summary = {{"vertices", md.mesh.num_vertices()},
                   {"triangles", md.mesh.num_triangles()},
                   {"h_max", num(md.mesh.h_max)},
                   {"min_angle_deg", num(q.min_angle_regular_deg)},
                   {"outputs", outputs}};
    return res;
}

CommandResult cmd_solve(const RunConfig& cfg, const fs::path& out)
{
    make_dir(out);
    auto a = run_solve(cfg, out);
    CommandResult res;
    json residuals = json::array();
    for (const auto& p : a.pairs) residuals.push_back(num(p.residual));
    res.summary = {{"lambda", eigen_summary(a.pairs)},
                   {"residuals", residuals},
                   {"dofs", a.sys.size()},
                   {"outputs", a.outputs}};
    return res;
}

CommandResult cmd_threshold(const RunConfig& cfg, const fs::path& out)
{
    make_dir(out);
    auto dom = build_domain(cfg.domain);
    auto th = branch_threshold(dom, cfg);
    CommandResult res;
    if (!th) {
        log_info("domain family '" + dom.family + "' has no branch; no threshold to compute");
        res.code = ExitCode::not_applicable;
        res.summary = {{"reason", "domain has no branch"}};
        return res;
    }
    json outputs = json::array();
    write_threshold_outputs(*th, out, outputs);
    res.summary = {{"mu", num(th->curve.mu)}, {"argmin_x", num(th->curve.argmin_x)}, {"outputs", outputs}};
    return res;
}

CommandResult cmd_certify(const RunConfig& cfg, const fs::path& out)
{
    make_dir(out);
    CommandResult res;
    json outputs = json::array();
    MeshedDomain md;
    double lambda = 0.0;
    Eigen::VectorXd u;
    if (!cfg.certify.eigenvector_file.empty()) {
        md.domain = build_domain(cfg.domain);
        fs::path mp = cfg.certify.mesh_file;
        std::string text = read_file(mp);
        if (mp.extension() == ".json") {
            md.mesh = mesh_from_json(text);
        } else {
            std::istringstream is(text);
            md.mesh = read_mesh_text(is);
        }
        std::istringstream vs(read_file(cfg.certify.eigenvector_file));
        u = read_eigenvector(vs, md.mesh.num_vertices());
        auto sys = assemble(md.mesh);
        lambda = rayleigh(sys, u);
    } else {
        auto a = run_solve(cfg, out);
        outputs = a.outputs;
        md = std::move(a.md);
        const auto& p = a.pairs.at(cfg.certify.mode - 1);
        lambda = p.lambda;
        u = p.u;
    }
    auto th = branch_threshold(md.domain, cfg);
    if (!th) {
        log_info("domain family '" + md.domain.family + "' has no branch; certification not applicable");
        res.code = ExitCode::not_applicable;
        res.summary = {{"reason", "domain has no branch"}, {"lambda", num(lambda)}, {"outputs", outputs}};
        return res;
    }
    write_threshold_outputs(*th, out, outputs);
    auto c = certify_pair(md.domain, md.mesh, *th, lambda, u, cfg);
    write_certify_outputs(c, out, "", outputs);
    log_info("mode " + std::to_string(cfg.certify.mode) + ": lambda = " + format_sci(lambda) +
             ", mu = " + format_sci(th->curve.mu) + ", verdict " + to_string(c.report.verdict));
    res.code = verdict_code(c.report.verdict);
    res.summary = certify_summary(c);
    res.summary["mode"] = cfg.certify.mode;
    res.summary["outputs"] = outputs;
    return res;
}

CommandResult cmd_diagram(const DiagramConfig& cfg, const fs::path& out)
{
    make_dir(out);
    auto d = diagram(cfg.zeta_min, cfg.zeta_max, cfg.kappa_min, cfg.kappa_max, cfg.n_zeta, cfg.n_kappa);
    CommandResult res;
    json outputs = json::array();
    write_diagram_outputs(d, out, outputs);
    int nonempty = 0;
    for (const auto& r : d.rows) nonempty += r.interval.has_value();
    res.summary = {{"rows", d.rows.size()}, {"nonempty_rows", nonempty}, {"zeta0", num(zeta0())}, {"outputs", outputs}};
    return res;
}

const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids{"fig2", "fig3", "fig5", "fig6a", "fig6b"};
    return ids;
}

RunConfig figure_config(const std::string& id)
{
    RunConfig c;
    c.output_directory = id;
    if (id == "fig2") {
        c.domain.family = "sine";
        c.domain.L = 1.54;
        c.domain.a = 5.0;
        c.domain.b = 1.0;
        c.mesh.h_target = 0.03;
        c.eig.k = 3;
    } else if (id == "fig3") {
        c.domain.family = "star";
        c.mesh.h_target = 0.015;
        c.eig.k = 5;
    } else if (id == "fig5") {
        // diagram defaults
    } else if (id == "fig6a" || id == "fig6b") {
        c.domain.family = "triangle";
        c.domain.a = id == "fig6a" ? 2.0 : 4.0;
        c.domain.b = 1.0;
        c.domain.d = id == "fig6a" ? 1.32 : 1.07;
        c.mesh.h_target = id == "fig6a" ? 0.03 : 0.05;
        c.eig.k = 1;
        c.certify.theorem = "2";
    } else {
        throw InvalidInput("unknown figure id '" + id + "' (expected fig2, fig3, fig5, fig6a or fig6b)");
    }
    return c;
}

CommandResult cmd_reproduce(const std::string& id, const fs::path& out_root, std::optional<std::uint64_t> seed)
{
    RunConfig cfg = figure_config(id);
    if (seed) cfg.eig.seed = *seed;
    const fs::path out = out_root / id;
    make_dir(out);
    write_file(out / "config.json", config_to_json(cfg));
    json outputs = json::array({"config.json"});
    json verdicts = json::object();
    json manifest{{"figure", id}};

    if (id == "fig5") {
        auto d = diagram(cfg.diagram.zeta_min, cfg.diagram.zeta_max, cfg.diagram.kappa_min, cfg.diagram.kappa_max,
                         cfg.diagram.n_zeta, cfg.diagram.n_kappa);
        write_diagram_outputs(d, out, outputs);
        for (double kappa : {1.0, 2.0}) {
            auto iv = localization_interval(kappa);
            json row{{"empty", !iv.has_value()}};
            if (iv) row["interval"] = {num(iv->first), num(iv->second)};
            verdicts["kappa_" + format_sci(kappa)] = row;
        }
    } else {
        auto a = run_solve(cfg, out);
        for (auto& f : a.outputs) outputs.push_back(f);
        manifest["lambda"] = eigen_summary(a.pairs);
        if (id == "fig3") {
            auto st = star_tip_check(cfg.domain, a.md.mesh, a.sys, a.pairs);
            const double mu = dirichlet_interval_mu(cfg.domain.w_base);
            json modes = json::array();
            bool all = true;
            for (std::size_t e = 0; e < a.pairs.size(); ++e) {
                bool ok = st.ratio[e] < 1e-3;
                all = all && ok;
                modes.push_back({{"index", a.pairs[e].index}, {"tip_to_disk_ratio", num(st.ratio[e])}, {"localized", ok}});
            }
            verdicts["modes"] = modes;
            verdicts["all_localized"] = all;
            verdicts["branch_free_vertices"] = st.branch_free_vertices;
            verdicts["lambda1_below_branch_threshold"] = a.pairs.front().lambda < mu;
            verdicts["branch_threshold"] = num(mu);
        } else {
            auto th = branch_threshold(a.md.domain, cfg);
            write_threshold_outputs(*th, out, outputs);
            json modes = json::array();
            for (const auto& p : a.pairs) {
                auto c = certify_pair(a.md.domain, a.md.mesh, *th, p.lambda, p.u, cfg);
                const std::string prefix = "mode" + std::to_string(p.index);
                write_certify_outputs(c, out, prefix, outputs);
                auto s = certify_summary(c);
                s["index"] = p.index;
                modes.push_back(s);
            }
            verdicts["modes"] = modes;
            if (cfg.domain.family == "triangle") {
                const auto& d = cfg.domain;
                verdicts["zeta"] = num(d.d / d.b - 1.0);
                verdicts["kappa"] = num(d.a / d.b);
                verdicts["q_value"] = num(q_value(d.d / d.b - 1.0, d.a, d.b));
                verdicts["localized_predicate"] = localized_predicate(d.a, d.b, d.d);
                verdicts["lambda1_below_pi2_over_b2"] = a.pairs.front().lambda < M_PI * M_PI / (d.b * d.b);
            }
        }
    }
    manifest["verdicts"] = verdicts;
    manifest["outputs"] = outputs;
    write_file(out / "manifest.json", manifest.dump(2));
    log_info("reproduced " + id + " into " + out.string());

    CommandResult res;
    res.summary = {{"figure", id}, {"manifest", (out / "manifest.json").string()}, {"verdicts", verdicts}};
    return res;
}

}  // namespace eigenbranch
