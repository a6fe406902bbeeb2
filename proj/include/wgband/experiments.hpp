#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wgband/asymptotics.hpp"
#include "wgband/boundary_layer.hpp"
#include "wgband/config.hpp"
#include "wgband/cross_section.hpp"
#include "wgband/floquet.hpp"

namespace wgband {

struct CrossSectionReport {
  std::vector<double> M;               // discrete values at the report resolution
  std::vector<double> M_extrapolated;  // Richardson pair, when configured
  double dnV1 = 0.0;
  bool gap_condition_ok = false;
  double T_threshold = 0.0;
  bool period_admissible = false;  // at the unit period T = 1
};

CrossSectionReport run_cross_section(const ExperimentConfig& config);

struct PolarizationReport {
  PolarizationResult result;
  double energy = 0.0;
  double min_W = 0.0;
};

PolarizationReport run_polarization(const ExperimentConfig& config);

struct BandsReport {
  BandDiagram diagram;
  GapReport gaps;
  AsymptoticPrediction prediction;
};

BandsReport run_bands(const ExperimentConfig& config);

struct ScalingRow {
  double h = 0.0;
  bool ok = false;
  std::string error;  // failure diagnostic when !ok
  double l_measured = 0.0;
  double l_predicted = 0.0;
  double ratio = 0.0;
  double lambda1_pi = 0.0;
  double lambda2_pi = 0.0;
  double gap_lower = 0.0;
  double gap_upper = 0.0;
  BandDiagram diagram;  // kept for CSV emission
};

struct ScalingStudyResult {
  AsymptoticPrediction base;  // h-independent pieces (gap evaluated at h_list front)
  std::vector<ScalingRow> rows;
  bool slope_valid = false;  // only when >= 3 h values succeed
  double slope = 0.0;
  double slope_ci = 0.0;  // 95% halfwidth from residual variance
  bool remainder_valid = false;
  double remainder_exponent = 0.0;  // fit of |l - 2 P h^3| against h
  double C_Lambda_fit = 0.0;        // max |l - 2 P h^3| / h^(7/2)
};

ScalingStudyResult run_gap_scan(const ExperimentConfig& config);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = true;
  std::string warning;
};

// Named checks: coupling_identities, polarization_oracle, bracketing,
// gauge_periodicity, conjugation_symmetry, lipschitz_proxy,
// domain_monotonicity, period_admissibility ("all" expands to every one).
VerifyReport run_verify(const ExperimentConfig& config);
std::vector<std::string> verify_check_names();

// Fitting helpers (exposed for the synthetic-oracle tests).
struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;   // of the log-log line
  double ci_halfwidth = 0.0;  // 95% on the slope, from residual variance
};

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Slope of ln|l - l_pred| against ln h; empty result when fewer than 2 rows
// carry a nonzero remainder.
std::optional<double> fit_remainder_exponent(const std::vector<double>& h,
                                             const std::vector<double>& l,
                                             const std::vector<double>& l_pred);

}  // namespace wgband
