#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eigenbranch/geometry.hpp"

namespace eigenbranch {

struct DomainConfig {
    std::string family = "sine";  // sine | star | triangle | polygon | rectangle
    // sine
    double L = 1.54;
    double a = 5.0;  // branch length (sine) or rectangle length (triangle)
    double b = 1.0;
    int n_samples = 0;  // 0: derived from the sagitta bound
    // star
    int n_branches = 51;
    double r_disk = 1.0;
    double l_branch = 1.5;
    double w_base = 0.08;
    int n_disk_samples = 1024;
    // triangle
    double d = 1.32;
    // polygon
    std::vector<Vec2> vertices;
    double split_x = default_hexagon_split;
    // rectangle
    double width = 1.0;
    double height = 1.0;

    BoundaryCondition bc = BoundaryCondition::dirichlet();
};

struct MeshConfig {
    double h_target = 0.05;
    int refinements = 0;
};

struct EigConfig {
    int k = 3;
    double tol = 1e-8;
    std::uint64_t seed = 0x5eed;
    int max_iter = 500;
};

struct ThresholdConfig {
    double z0 = 0.0;  // branch-local start of the infimum range
    int n_samples = 256;
};

struct CertifyConfig {
    std::string theorem = "auto";  // auto | 1 | 2
    int mode = 1;                  // eigenpair index to certify
    int grid_points = 64;
    double tol_cert = 0.02;
    std::string eigenvector_file;  // optional: certify a stored vector
    std::string mesh_file;         // required with eigenvector_file
};

struct DiagramConfig {
    double zeta_min = 0.005;
    double zeta_max = 1.2;
    double kappa_min = 1.0;
    double kappa_max = 5.0;
    int n_zeta = 240;
    int n_kappa = 81;
};

struct RunConfig {
    DomainConfig domain;
    MeshConfig mesh;
    EigConfig eig;
    ThresholdConfig threshold;
    CertifyConfig certify;
    DiagramConfig diagram;
    std::string output_directory = "out";
};

// Throws InvalidInput on malformed JSON, unknown keys' values, or out-of-range numbers.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string config_to_json(const RunConfig& cfg);

PlanarDomain build_domain(const DomainConfig& cfg);

}  // namespace eigenbranch
