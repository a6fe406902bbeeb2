// wgband: Floquet band structures, spectral-gap detection, and closed-form
// cross-checks for a Dirichlet waveguide with a small periodic surface cavern.
//
// Subcommands: cross-section | polarization | bands | gap-scan | verify
// Exit codes: 0 success, 1 verification failure, 2 config error, 3 solver failure.

#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wgband/experiments.hpp"
#include "wgband/output.hpp"
#include "wgband/version.hpp"

namespace {

using nlohmann::json;
using namespace wgband;

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file (JSON)");
  cmd->add_option("--out", args.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--threads", args.threads, "worker threads for eta solves");
  cmd->add_option("--seed", args.seed, "RNG seed for eigensolver starts");
}

ExperimentConfig load(const CommonArgs& args) {
  ExperimentConfig config =
      args.config_path.empty() ? ExperimentConfig{} : load_config(args.config_path);
  if (args.threads) {
    if (*args.threads < 1) throw ConfigError("--threads must be >= 1");
    config.threads = *args.threads;
  }
  if (args.seed) config.seed = *args.seed;
  return config;
}

std::string out_path(const CommonArgs& args, const std::string& name) {
  std::filesystem::create_directories(args.out_dir);
  return (std::filesystem::path(args.out_dir) / name).string();
}

void emit(const CommonArgs& args, const ExperimentConfig& config,
          const std::string& name, const std::vector<std::string>& header,
          const std::vector<std::vector<double>>& rows) {
  if (config.wants("csv"))
    write_text_file(out_path(args, name + ".csv"), csv_table(header, rows));
  if (config.output.gnuplot)
    write_text_file(out_path(args, name + ".dat"), gnuplot_table(header, rows));
}

void emit_report(const CommonArgs& args, const ExperimentConfig& config,
                 const json& report) {
  if (config.wants("json"))
    write_text_file(out_path(args, "report.json"), report.dump(2) + "\n");
}

json gap_json(const GapReport& gaps) {
  json j;
  j["bands"] = json::array();
  for (const auto& b : gaps.bands)
    j["bands"].push_back({{"lower", b.lower}, {"upper", b.upper},
                          {"hairline", b.hairline}});
  j["gaps"] = json::array();
  for (const auto& g : gaps.gaps)
    j["gaps"].push_back({{"lower", g.lower}, {"upper", g.upper}});
  if (gaps.first_gap_length)
    j["first_gap_length"] = *gaps.first_gap_length;
  else
    j["first_gap_length"] = nullptr;
  return j;
}

json prediction_json(const AsymptoticPrediction& p) {
  return {{"M1", p.M1},
          {"P_theta", p.P_theta},
          {"dnV1", p.dnV1},
          {"P", p.P},
          {"h", p.h},
          {"beta_window", p.beta_window},
          {"predicted_gap", {{"lower", p.gap.lower}, {"upper", p.gap.upper}}},
          {"predicted_gap_length", p.gap.length},
          {"certified_window",
           {{"lower", p.gap.certified_lower},
            {"upper", p.gap.certified_upper},
            {"nonempty", p.gap.certified_nonempty}}}};
}

int cmd_cross_section(const CommonArgs& args) {
  const auto config = load(args);
  const auto r = run_cross_section(config);
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < r.M.size(); ++k)
    rows.push_back({static_cast<double>(k + 1), r.M[k]});
  emit(args, config, "cross_section", {"k", "M_k"}, rows);

  json report = report_skeleton(config, "cross-section");
  report["results"] = {{"M", r.M},
                       {"M_extrapolated", r.M_extrapolated},
                       {"dnV1", r.dnV1},
                       {"gap_condition_ok", r.gap_condition_ok},
                       {"T_threshold", r.T_threshold},
                       {"period_admissible", r.period_admissible}};
  emit_report(args, config, report);
  std::printf("M_1 = %s  M_2 = %s  dnV1 = %s  gap condition %s\n",
              format_sig(r.M[0], 12).c_str(), format_sig(r.M[1], 12).c_str(),
              format_sig(r.dnV1, 12).c_str(), r.gap_condition_ok ? "ok" : "VIOLATED");
  return 0;
}

int cmd_polarization(const CommonArgs& args) {
  const auto config = load(args);
  const auto r = run_polarization(config);
  std::vector<std::vector<double>> rows;
  for (const auto& [R, M] : r.result.moment_samples)
    rows.push_back({R, M, -3 * M});
  emit(args, config, "polarization", {"R", "M_R", "P_R"}, rows);

  json report = report_skeleton(config, "polarization");
  report["results"] = {{"P_theta", r.result.P_theta},
                       {"fit_radii", r.result.fit_radii},
                       {"fit_residual", r.result.fit_residual},
                       {"extrapolated", r.result.extrapolated},
                       {"truncation_radius", r.result.truncation_radius},
                       {"energy", r.energy},
                       {"min_W", r.min_W}};
  emit_report(args, config, report);
  std::printf("P_theta = %s (fit residual %s)\n",
              format_sig(r.result.P_theta, 12).c_str(),
              format_sig(r.result.fit_residual, 6).c_str());
  return 0;
}

int cmd_bands(const CommonArgs& args) {
  const auto config = load(args);
  const auto r = run_bands(config);
  emit(args, config, "bands", band_header(r.diagram), band_rows(r.diagram));

  json report = report_skeleton(config, "bands");
  report["results"] = {{"h", r.diagram.h},
                       {"eta_points", r.diagram.eta_grid.size()},
                       {"spectrum", gap_json(r.gaps)},
                       {"prediction", prediction_json(r.prediction)}};
  emit_report(args, config, report);
  if (r.gaps.first_gap_length)
    std::printf("first gap length %s (predicted %s)\n",
                format_sig(*r.gaps.first_gap_length, 12).c_str(),
                format_sig(r.prediction.gap.length, 12).c_str());
  else
    std::printf("no gap detected\n");
  return 0;
}

int cmd_gap_scan(const CommonArgs& args) {
  const auto config = load(args);
  const auto study = run_gap_scan(config);

  std::vector<std::vector<double>> rows;
  for (const auto& row : study.rows) {
    if (!row.ok) continue;
    rows.push_back({row.h, row.l_measured, row.l_predicted, row.ratio});
    char name[64];
    std::snprintf(name, sizeof name, "bands_h%s", format_sig(row.h, 6).c_str());
    emit(args, config, name, band_header(row.diagram), band_rows(row.diagram));
  }
  emit(args, config, "scaling", {"h", "l_measured", "l_predicted", "ratio"}, rows);

  json report = report_skeleton(config, "gap-scan");
  json jrows = json::array();
  for (const auto& row : study.rows) {
    json jr = {{"h", row.h}, {"ok", row.ok}};
    if (row.ok) {
      jr["l_measured"] = row.l_measured;
      jr["l_predicted"] = row.l_predicted;
      jr["ratio"] = row.ratio;
      jr["lambda1_pi"] = row.lambda1_pi;
      jr["lambda2_pi"] = row.lambda2_pi;
      jr["gap"] = {{"lower", row.gap_lower}, {"upper", row.gap_upper}};
    } else {
      jr["error"] = row.error;
    }
    jrows.push_back(jr);
  }
  report["results"] = {{"rows", jrows},
                       {"prediction", prediction_json(study.base)},
                       {"slope_valid", study.slope_valid},
                       {"slope", study.slope},
                       {"slope_ci", study.slope_ci},
                       {"remainder_valid", study.remainder_valid},
                       {"remainder_exponent", study.remainder_exponent},
                       {"C_Lambda_fit", study.C_Lambda_fit}};
  emit_report(args, config, report);

  for (const auto& row : study.rows) {
    if (row.ok)
      std::printf("h %-8s l %-14s predicted %-14s ratio %s\n",
                  format_sig(row.h, 6).c_str(), format_sig(row.l_measured, 12).c_str(),
                  format_sig(row.l_predicted, 12).c_str(),
                  format_sig(row.ratio, 6).c_str());
    else
      std::printf("h %-8s FAILED: %s\n", format_sig(row.h, 6).c_str(),
                  row.error.c_str());
  }
  if (study.slope_valid)
    std::printf("log-log slope %s +- %s\n", format_sig(study.slope, 6).c_str(),
                format_sig(study.slope_ci, 6).c_str());
  return 0;
}

int cmd_verify(const CommonArgs& args) {
  const auto config = load(args);
  const auto report = run_verify(config);

  json jreport = report_skeleton(config, "verify");
  json jchecks = json::array();
  for (const auto& c : report.checks)
    jchecks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  jreport["results"] = {{"checks", jchecks}, {"all_pass", report.all_pass}};
  if (!report.warning.empty()) jreport["results"]["warning"] = report.warning;
  emit_report(args, config, jreport);

  if (!report.warning.empty()) std::printf("warning: %s\n", report.warning.c_str());
  for (const auto& c : report.checks)
    std::printf("[%s] %-22s %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.c_str());
  if (!report.all_pass) {
    std::printf("verification FAILED\n");
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet band structures and spectral-gap asymptotics for a "
               "periodically perturbed Dirichlet waveguide"};
  app.set_version_flag("--version", kToolkitVersion);
  app.require_subcommand(1);

  CommonArgs args;
  auto* cs = app.add_subcommand("cross-section",
                                "cross-section eigenpairs, normal derivative, "
                                "gap condition");
  auto* pol = app.add_subcommand("polarization",
                                 "exterior problem and polarization coefficient");
  auto* bands = app.add_subcommand("bands", "band diagram and gap report at one h");
  auto* scan = app.add_subcommand("gap-scan", "h-sweep gap scaling study");
  auto* verify = app.add_subcommand("verify", "invariant verification suite");
  for (auto* cmd : {cs, pol, bands, scan, verify}) add_common(cmd, args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are configuration errors
  }

  try {
    if (cs->parsed()) return cmd_cross_section(args);
    if (pol->parsed()) return cmd_polarization(args);
    if (bands->parsed()) return cmd_bands(args);
    if (scan->parsed()) return cmd_gap_scan(args);
    if (verify->parsed()) return cmd_verify(args);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "verification failure: %s\n", e.what());
    return 1;
  } catch (const SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
