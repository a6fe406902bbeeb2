#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wgband/common.hpp"
#include "wgband/geometry.hpp"

namespace wgband {

// Declarative experiment description, parsed from a versioned JSON file.
// Every field has a default; the file only needs the keys it overrides.
struct ExperimentConfig {
  int version = 1;
  std::uint64_t seed = 20260825;
  int threads = 1;

  struct CrossSection {
    std::string shape = "rectangle";  // rectangle | disk
    double a = 1.0;
    double b = 1.0;
    double radius = 1.0;
    int resolution = 64;
    std::vector<int> richardson_resolutions{32, 64};
  } cross_section;

  struct Cavern {
    std::string shape = "hemisphere";  // hemisphere | box
    double rho = 1.0;
    Eigen::Vector3d half_extents{1.0, 1.0, 1.0};
    double h = 0.2;
    std::vector<double> h_list{0.15, 0.2, 0.25, 0.3};
  } cavern;

  struct CellMesh {
    int base_resolution = -1;   // -1 = auto from h
    int refinement_levels = -1; // -1 = auto from h
  } cell_mesh;

  struct EtaGrid {
    int base_points = 33;
    int window_points = 17;
    double window_factor = 4.0;  // halfwidth = factor * P h^3 / (2 pi)
  } eta_grid;

  struct Solver {
    double tol = 1e-8;
    int p_max = 3;
    int max_iterations = 150;
  } solver;

  struct Polarization {
    double R_inf_factor = 16.0;
    std::vector<double> fit_radii_factors{2.0, 2.5, 3.0};
    int resolution = 16;
  } polarization;

  struct Floquet {
    bool mirror_symmetric_eta = true;
  } floquet;

  struct Asymptotics {
    double beta0 = 0.5;
    double h0 = 0.3;
    double C_Lambda = 0.0;  // 0 = fit empirically where applicable
  } asymptotics;

  struct Verify {
    std::vector<std::string> checks{"all"};
    double budget_factor = 10.0;      // x tol x scale for solver-limited checks
    double monotonicity_budget = 0.02;  // x Lambda for cross-mesh comparisons
    std::optional<double> bracketing_C_upper;  // default 4x predicted coupling
    int resolution = 8;               // base resolution for verify-scale meshes
    int eta_points = 9;               // base eta points for verify-scale grids
  } verify;

  struct Output {
    std::vector<std::string> formats{"csv", "json"};
    bool gnuplot = false;
  } output;

  // Derived helpers.
  CrossSectionShape shape() const;
  CavernSpec cavern_spec(double h) const;
  bool wants(const std::string& format) const;
};

// Parses and validates a config file (ConfigError with diagnostics on any
// syntax/type/range problem, including unknown keys).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& origin = "<inline>");

// Canonical JSON rendering of the effective config (defaults applied, keys
// sorted) and its FNV-1a hash; both embed into every report.
std::string canonical_config(const ExperimentConfig& config);
std::string config_hash(const ExperimentConfig& config);

// Mesh parameters for the cell at cavern scale h: the configured override, or
// the auto table keeping the fine spacing near h/5 with uniform index-space
// collar across the acceptance h-sweep.
std::pair<int, int> cell_mesh_parameters(const ExperimentConfig& config, double h);

}  // namespace wgband
