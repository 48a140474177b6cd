#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eigenbranch/config.hpp"
#include "eigenbranch/decay.hpp"
#include "eigenbranch/eigensolver.hpp"
#include "eigenbranch/errors.hpp"
#include "eigenbranch/mesh.hpp"
#include "eigenbranch/thresholds.hpp"

namespace eigenbranch {

// EIGENBRANCH_LOG: quiet | info (default) | debug. Messages go to stderr.
enum class LogLevel { quiet, info, debug };
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

struct CommandResult {
    ExitCode code = ExitCode::ok;
    nlohmann::json summary = nlohmann::json::object();
};

struct MeshedDomain {
    PlanarDomain domain;
    Mesh mesh;
};

MeshedDomain mesh_domain(const RunConfig& cfg);

/// Threshold along the branch right of the split line, starting at local z0.
/// Returns nullopt for domains without a branch.
struct BranchThreshold {
    ThresholdCurve curve;
    double split_x = 0.0;  // global abscissa of local x = 0
    bool monotone = false;
    bool closed = false;
};
std::optional<BranchThreshold> branch_threshold(const PlanarDomain& dom, const RunConfig& cfg);

struct CertifyOutcome {
    DecayReport report;
    std::optional<MaslovReport> maslov;  // closed branches with lambda < mu only
    int theorem = 1;
};

/// Picks the theorem (auto: tail norms for Robin walls or closed branches,
/// slice norms otherwise) and certifies one eigenpair.
CertifyOutcome certify_pair(const PlanarDomain& dom, const Mesh& mesh, const BranchThreshold& th, double lambda,
                            const Eigen::VectorXd& u, const RunConfig& cfg);

/// Branch-tip localization of star eigenfunctions: for each mode, the largest
/// L2 norm over chords perpendicular to a branch axis (at half and three
/// quarters of the branch length) against the largest vertical chord norm
/// inside the disk.
struct StarTipReport {
    std::vector<double> disk_max;
    std::vector<double> tip_max;
    std::vector<double> ratio;
    int branch_free_vertices = 0;  // unknowns beyond the half-length chords
};
StarTipReport star_tip_check(const DomainConfig& d, const Mesh& mesh, const AssembledSystem& sys,
                             const std::vector<EigenPair>& pairs);

CommandResult cmd_mesh(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_solve(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_threshold(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_certify(const RunConfig& cfg, const std::filesystem::path& out);
CommandResult cmd_diagram(const DiagramConfig& cfg, const std::filesystem::path& out);

const std::vector<std::string>& figure_ids();
// Pinned configuration behind each reproduction recipe (diagram-only for fig5).
RunConfig figure_config(const std::string& id);
CommandResult cmd_reproduce(const std::string& id, const std::filesystem::path& out,
                            std::optional<std::uint64_t> seed = std::nullopt);

}  // namespace eigenbranch
