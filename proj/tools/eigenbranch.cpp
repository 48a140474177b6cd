#include <charconv>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigenbranch/parallel.hpp"
#include "eigenbranch/pipeline.hpp"

using namespace eigenbranch;
using nlohmann::json;

namespace {

std::uint64_t parse_hex(const std::string& s)
{
    std::string_view v(s);
    if (v.starts_with("0x") || v.starts_with("0X")) v.remove_prefix(2);
    std::uint64_t out = 0;
    auto res = std::from_chars(v.data(), v.data() + v.size(), out, 16);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw InvalidInput("--seed expects a hexadecimal integer, got '" + s + "'");
    return out;
}

// "MIN:MAX" or "MIN:MAX:N".
void parse_range(const std::string& s, double& lo, double& hi, int& n, const char* flag)
{
    auto fail = [&] { throw InvalidInput(std::string(flag) + " expects MIN:MAX[:N], got '" + s + "'"); };
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t p; (p = s.find(':', start)) != std::string::npos; start = p + 1) parts.push_back(s.substr(start, p - start));
    parts.push_back(s.substr(start));
    if (parts.size() < 2 || parts.size() > 3) fail();
    auto num = [&](const std::string& t, auto& out) {
        auto res = std::from_chars(t.data(), t.data() + t.size(), out);
        if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size()) fail();
    };
    num(parts[0], lo);
    num(parts[1], hi);
    if (parts.size() == 3) num(parts[2], n);
}

std::string status_name(ExitCode c)
{
    switch (c) {
    case ExitCode::ok: return "ok";
    case ExitCode::certify_fail: return "fail";
    case ExitCode::not_applicable: return "not_applicable";
    default: return "error";
    }
}

int finish(const std::string& command, ExitCode code, json summary)
{
    json status{{"command", command}, {"status", status_name(code)}, {"exit_code", static_cast<int>(code)}};
    for (auto& [k, v] : summary.items()) status[k] = v;
    std::cout << status.dump() << std::endl;
    return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Planar Laplacian eigenproblems on domains with branches"};
    std::string config_path, out_dir, seed_hex, zeta_range, kappa_range, figure;
    unsigned threads = 0;
    app.add_option("--config", config_path, "Run configuration (JSON)");
    app.add_option("--out", out_dir, "Output directory (overrides output.directory)");
    app.add_option("--threads", threads, "Worker cap for parallel loops (0: hardware)");
    app.add_option("--seed", seed_hex, "Starting-block seed, hexadecimal");
    app.require_subcommand(1, 1);
    app.fallthrough();

    auto* sub_mesh = app.add_subcommand("mesh", "Triangulate the configured domain");
    auto* sub_solve = app.add_subcommand("solve", "Compute the smallest eigenpairs");
    auto* sub_threshold = app.add_subcommand("threshold", "Cross-section threshold along the branch");
    auto* sub_certify = app.add_subcommand("certify", "Check the exponential decay bound for one eigenpair");
    auto* sub_diagram = app.add_subcommand("diagram", "Localization diagram for right triangles");
    sub_diagram->add_option("--zeta", zeta_range, "zeta range MIN:MAX[:N]");
    sub_diagram->add_option("--kappa", kappa_range, "kappa range MIN:MAX[:N]");
    auto* sub_reproduce = app.add_subcommand("reproduce", "Run a pinned reproduction recipe");
    sub_reproduce->add_option("figure", figure, "fig2 | fig3 | fig5 | fig6a | fig6b")->required();

    std::string command = "eigenbranch";
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cerr << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "eigenbranch: " << e.what() << '\n';
        return finish(command, ExitCode::usage, {{"error", e.what()}});
    }
    command = app.get_subcommands().front()->get_name();

    try {
        if (threads > 0) set_max_threads(threads);
        std::optional<std::uint64_t> seed;
        if (!seed_hex.empty()) seed = parse_hex(seed_hex);

        RunConfig cfg;
        const bool needs_config = command != "diagram" && command != "reproduce";
        if (!config_path.empty())
            cfg = load_config(config_path);
        else if (needs_config)
            throw InvalidInput("'" + command + "' requires --config PATH");
        if (seed) cfg.eig.seed = *seed;
        std::filesystem::path out = out_dir.empty() ? std::filesystem::path(cfg.output_directory) : std::filesystem::path(out_dir);

        CommandResult res;
        if (*sub_mesh)
            res = cmd_mesh(cfg, out);
        else if (*sub_solve)
            res = cmd_solve(cfg, out);
        else if (*sub_threshold)
            res = cmd_threshold(cfg, out);
        else if (*sub_certify)
            res = cmd_certify(cfg, out);
        else if (*sub_diagram) {
            if (!zeta_range.empty()) parse_range(zeta_range, cfg.diagram.zeta_min, cfg.diagram.zeta_max, cfg.diagram.n_zeta, "--zeta");
            if (!kappa_range.empty())
                parse_range(kappa_range, cfg.diagram.kappa_min, cfg.diagram.kappa_max, cfg.diagram.n_kappa, "--kappa");
            res = cmd_diagram(cfg.diagram, out);
        } else {
            if (out_dir.empty() && config_path.empty()) out = "out";
            res = cmd_reproduce(figure, out, seed);
        }
        return finish(command, res.code, res.summary);
    } catch (const ConvergenceError& e) {
        std::cerr << "eigenbranch: " << e.what() << '\n';
        return finish(command, e.exit_code(), {{"error", e.what()}, {"best_residuals", e.best_residuals()}});
    } catch (const Error& e) {
        std::cerr << "eigenbranch: " << e.what() << '\n';
        return finish(command, e.exit_code(), {{"error", e.what()}});
    } catch (const std::exception& e) {
        std::cerr << "eigenbranch: internal error: " << e.what() << '\n';
        return finish(command, ExitCode::internal, {{"error", e.what()}});
    }
}
