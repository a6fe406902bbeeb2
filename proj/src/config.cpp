#include "wgband/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wgband {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw ConfigError("config " + origin + ": " + what);
}

void expect_keys(const json& j, const std::string& origin, const std::string& scope,
                 const std::set<std::string>& allowed) {
  if (!j.is_object()) fail(origin, scope + " must be an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      fail(origin, "unknown key \"" + key + "\" in " + scope);
  }
}

template <class T>
void get_to(const json& j, const char* key, T& out, const std::string& origin,
            const std::string& scope) {
  if (!j.contains(key)) return;
  try {
    j.at(key).get_to(out);
  } catch (const json::exception& e) {
    fail(origin, scope + "." + key + ": " + e.what());
  }
}

void get_vec3(const json& j, const char* key, Eigen::Vector3d& out,
              const std::string& origin, const std::string& scope) {
  if (!j.contains(key)) return;
  std::vector<double> v;
  get_to(j, key, v, origin, scope);
  if (v.size() != 3) fail(origin, scope + "." + std::string(key) + ": needs 3 entries");
  out = Eigen::Vector3d(v[0], v[1], v[2]);
}

void require_positive(double v, const std::string& origin, const std::string& what) {
  if (!(v > 0)) fail(origin, what + " must be positive");
}

}  // namespace

CrossSectionShape ExperimentConfig::shape() const {
  if (cross_section.shape == "rectangle")
    return CrossSectionShape::rectangle(cross_section.a, cross_section.b);
  if (cross_section.shape == "disk")
    return CrossSectionShape::disk(cross_section.radius);
  throw ConfigError("config: unknown cross-section shape \"" + cross_section.shape +
                    "\" (expected rectangle or disk)");
}

CavernSpec ExperimentConfig::cavern_spec(double h) const {
  if (cavern.shape == "hemisphere") return CavernSpec::hemisphere(cavern.rho, h);
  if (cavern.shape == "box") return CavernSpec::box(cavern.half_extents, h);
  throw ConfigError("config: unknown cavern shape \"" + cavern.shape +
                    "\" (expected hemisphere or box)");
}

bool ExperimentConfig::wants(const std::string& format) const {
  return std::find(output.formats.begin(), output.formats.end(), format) !=
         output.formats.end();
}

ExperimentConfig parse_config(const std::string& json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("parse error: ") + e.what());
  }

  ExperimentConfig c;
  expect_keys(j, origin, "top level",
              {"version", "seed", "threads", "cross_section", "cavern", "cell_mesh",
               "eta_grid", "solver", "polarization", "floquet", "asymptotics",
               "verify", "output"});
  get_to(j, "version", c.version, origin, "config");
  if (c.version != 1) fail(origin, "unsupported config version (expected 1)");
  get_to(j, "seed", c.seed, origin, "config");
  get_to(j, "threads", c.threads, origin, "config");
  if (c.threads < 1) fail(origin, "threads must be >= 1");

  if (j.contains("cross_section")) {
    const auto& s = j["cross_section"];
    expect_keys(s, origin, "cross_section",
                {"shape", "a", "b", "radius", "resolution", "richardson_resolutions"});
    get_to(s, "shape", c.cross_section.shape, origin, "cross_section");
    get_to(s, "a", c.cross_section.a, origin, "cross_section");
    get_to(s, "b", c.cross_section.b, origin, "cross_section");
    get_to(s, "radius", c.cross_section.radius, origin, "cross_section");
    get_to(s, "resolution", c.cross_section.resolution, origin, "cross_section");
    get_to(s, "richardson_resolutions", c.cross_section.richardson_resolutions, origin,
           "cross_section");
  }
  require_positive(c.cross_section.a, origin, "cross_section.a");
  require_positive(c.cross_section.b, origin, "cross_section.b");
  require_positive(c.cross_section.radius, origin, "cross_section.radius");
  if (c.cross_section.resolution < 2)
    fail(origin, "cross_section.resolution must be >= 2");
  for (int r : c.cross_section.richardson_resolutions)
    if (r < 2) fail(origin, "richardson resolutions must be >= 2");

  if (j.contains("cavern")) {
    const auto& s = j["cavern"];
    expect_keys(s, origin, "cavern", {"shape", "rho", "half_extents", "h", "h_list"});
    get_to(s, "shape", c.cavern.shape, origin, "cavern");
    get_to(s, "rho", c.cavern.rho, origin, "cavern");
    get_vec3(s, "half_extents", c.cavern.half_extents, origin, "cavern");
    get_to(s, "h", c.cavern.h, origin, "cavern");
    get_to(s, "h_list", c.cavern.h_list, origin, "cavern");
  }
  require_positive(c.cavern.rho, origin, "cavern.rho");
  require_positive(c.cavern.h, origin, "cavern.h");
  for (int k = 0; k < 3; ++k)
    require_positive(c.cavern.half_extents[k], origin, "cavern.half_extents");
  if (c.cavern.h_list.empty()) fail(origin, "cavern.h_list must not be empty");
  for (double h : c.cavern.h_list) require_positive(h, origin, "cavern.h_list entries");
  if (!std::is_sorted(c.cavern.h_list.begin(), c.cavern.h_list.end()))
    fail(origin, "cavern.h_list must be ascending");

  if (j.contains("cell_mesh")) {
    const auto& s = j["cell_mesh"];
    expect_keys(s, origin, "cell_mesh", {"base_resolution", "refinement_levels"});
    get_to(s, "base_resolution", c.cell_mesh.base_resolution, origin, "cell_mesh");
    get_to(s, "refinement_levels", c.cell_mesh.refinement_levels, origin, "cell_mesh");
  }
  if (c.cell_mesh.base_resolution == 0 || c.cell_mesh.base_resolution < -1)
    fail(origin, "cell_mesh.base_resolution must be positive or -1 (auto)");
  if (c.cell_mesh.refinement_levels < -1)
    fail(origin, "cell_mesh.refinement_levels must be >= 0 or -1 (auto)");

  if (j.contains("eta_grid")) {
    const auto& s = j["eta_grid"];
    expect_keys(s, origin, "eta_grid", {"base_points", "window_points", "window_factor"});
    get_to(s, "base_points", c.eta_grid.base_points, origin, "eta_grid");
    get_to(s, "window_points", c.eta_grid.window_points, origin, "eta_grid");
    get_to(s, "window_factor", c.eta_grid.window_factor, origin, "eta_grid");
  }
  if (c.eta_grid.base_points < 9 || c.eta_grid.base_points % 2 == 0)
    fail(origin, "eta_grid.base_points must be odd and >= 9 (so eta = pi is on-grid)");
  if (c.eta_grid.window_points < 0) fail(origin, "eta_grid.window_points must be >= 0");
  if (c.eta_grid.window_factor < 0) fail(origin, "eta_grid.window_factor must be >= 0");

  if (j.contains("solver")) {
    const auto& s = j["solver"];
    expect_keys(s, origin, "solver", {"tol", "p_max", "max_iterations"});
    get_to(s, "tol", c.solver.tol, origin, "solver");
    get_to(s, "p_max", c.solver.p_max, origin, "solver");
    get_to(s, "max_iterations", c.solver.max_iterations, origin, "solver");
  }
  require_positive(c.solver.tol, origin, "solver.tol");
  if (c.solver.p_max < 1) fail(origin, "solver.p_max must be >= 1");
  if (c.solver.max_iterations < 1) fail(origin, "solver.max_iterations must be >= 1");

  if (j.contains("polarization")) {
    const auto& s = j["polarization"];
    expect_keys(s, origin, "polarization",
                {"R_inf_factor", "fit_radii_factors", "resolution"});
    get_to(s, "R_inf_factor", c.polarization.R_inf_factor, origin, "polarization");
    get_to(s, "fit_radii_factors", c.polarization.fit_radii_factors, origin,
           "polarization");
    get_to(s, "resolution", c.polarization.resolution, origin, "polarization");
  }
  if (!(c.polarization.R_inf_factor > 1))
    fail(origin, "polarization.R_inf_factor must exceed 1");
  if (c.polarization.fit_radii_factors.size() < 2)
    fail(origin, "polarization.fit_radii_factors needs at least 2 entries");
  for (double f : c.polarization.fit_radii_factors)
    if (!(f >= 1)) fail(origin, "polarization fit radii must be >= 1 x R_ref");
  if (c.polarization.resolution < 4) fail(origin, "polarization.resolution must be >= 4");

  if (j.contains("floquet")) {
    const auto& s = j["floquet"];
    expect_keys(s, origin, "floquet", {"mirror_symmetric_eta"});
    get_to(s, "mirror_symmetric_eta", c.floquet.mirror_symmetric_eta, origin, "floquet");
  }

  if (j.contains("asymptotics")) {
    const auto& s = j["asymptotics"];
    expect_keys(s, origin, "asymptotics", {"beta0", "h0", "C_Lambda"});
    get_to(s, "beta0", c.asymptotics.beta0, origin, "asymptotics");
    get_to(s, "h0", c.asymptotics.h0, origin, "asymptotics");
    get_to(s, "C_Lambda", c.asymptotics.C_Lambda, origin, "asymptotics");
  }
  require_positive(c.asymptotics.beta0, origin, "asymptotics.beta0");
  require_positive(c.asymptotics.h0, origin, "asymptotics.h0");
  if (c.asymptotics.C_Lambda < 0) fail(origin, "asymptotics.C_Lambda must be >= 0");

  if (j.contains("verify")) {
    const auto& s = j["verify"];
    expect_keys(s, origin, "verify",
                {"checks", "budget_factor", "monotonicity_budget", "bracketing_C_upper",
                 "resolution", "eta_points"});
    get_to(s, "checks", c.verify.checks, origin, "verify");
    get_to(s, "budget_factor", c.verify.budget_factor, origin, "verify");
    get_to(s, "monotonicity_budget", c.verify.monotonicity_budget, origin, "verify");
    if (s.contains("bracketing_C_upper")) {
      double v = 0;
      get_to(s, "bracketing_C_upper", v, origin, "verify");
      c.verify.bracketing_C_upper = v;
    }
    get_to(s, "resolution", c.verify.resolution, origin, "verify");
    get_to(s, "eta_points", c.verify.eta_points, origin, "verify");
  }
  if (c.verify.budget_factor < 0) fail(origin, "verify.budget_factor must be >= 0");
  if (c.verify.monotonicity_budget < 0)
    fail(origin, "verify.monotonicity_budget must be >= 0");
  if (c.verify.resolution < 4) fail(origin, "verify.resolution must be >= 4");
  if (c.verify.eta_points < 9 || c.verify.eta_points % 2 == 0)
    fail(origin, "verify.eta_points must be odd and >= 9 (so eta = pi is on-grid)");

  if (j.contains("output")) {
    const auto& s = j["output"];
    expect_keys(s, origin, "output", {"formats", "gnuplot"});
    get_to(s, "formats", c.output.formats, origin, "output");
    get_to(s, "gnuplot", c.output.gnuplot, origin, "output");
  }
  for (const auto& f : c.output.formats)
    if (f != "csv" && f != "json")
      fail(origin, "output.formats entries must be csv or json");

  // Cross-validate the shape/cavern enums early.
  (void)c.shape();
  (void)c.cavern_spec(c.cavern.h);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config " + path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string canonical_config(const ExperimentConfig& c) {
  json j;
  j["version"] = c.version;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["cross_section"] = {{"shape", c.cross_section.shape},
                        {"a", c.cross_section.a},
                        {"b", c.cross_section.b},
                        {"radius", c.cross_section.radius},
                        {"resolution", c.cross_section.resolution},
                        {"richardson_resolutions", c.cross_section.richardson_resolutions}};
  j["cavern"] = {{"shape", c.cavern.shape},
                 {"rho", c.cavern.rho},
                 {"half_extents",
                  {c.cavern.half_extents[0], c.cavern.half_extents[1],
                   c.cavern.half_extents[2]}},
                 {"h", c.cavern.h},
                 {"h_list", c.cavern.h_list}};
  j["cell_mesh"] = {{"base_resolution", c.cell_mesh.base_resolution},
                    {"refinement_levels", c.cell_mesh.refinement_levels}};
  j["eta_grid"] = {{"base_points", c.eta_grid.base_points},
                   {"window_points", c.eta_grid.window_points},
                   {"window_factor", c.eta_grid.window_factor}};
  j["solver"] = {{"tol", c.solver.tol},
                 {"p_max", c.solver.p_max},
                 {"max_iterations", c.solver.max_iterations}};
  j["polarization"] = {{"R_inf_factor", c.polarization.R_inf_factor},
                       {"fit_radii_factors", c.polarization.fit_radii_factors},
                       {"resolution", c.polarization.resolution}};
  j["floquet"] = {{"mirror_symmetric_eta", c.floquet.mirror_symmetric_eta}};
  j["asymptotics"] = {{"beta0", c.asymptotics.beta0},
                      {"h0", c.asymptotics.h0},
                      {"C_Lambda", c.asymptotics.C_Lambda}};
  j["verify"] = {{"checks", c.verify.checks},
                 {"budget_factor", c.verify.budget_factor},
                 {"monotonicity_budget", c.verify.monotonicity_budget},
                 {"resolution", c.verify.resolution},
                 {"eta_points", c.verify.eta_points}};
  if (c.verify.bracketing_C_upper)
    j["verify"]["bracketing_C_upper"] = *c.verify.bracketing_C_upper;
  j["output"] = {{"formats", c.output.formats}, {"gnuplot", c.output.gnuplot}};
  return j.dump(2);
}

std::string config_hash(const ExperimentConfig& config) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config(config))));
  return std::string("fnv1a64:") + buf;
}

std::pair<int, int> cell_mesh_parameters(const ExperimentConfig& config, double h) {
  int base = config.cell_mesh.base_resolution;
  int levels = config.cell_mesh.refinement_levels;
  if (base > 0 && levels >= 0) return {base, levels};
  // Auto table: fine spacing tracks h/5 so the index-space collar around the
  // cavern (and with it the surface-faceting bias) stays uniform over the
  // acceptance h-sweep.
  int abase, alevels;
  if (h >= 0.28) {
    abase = 12;
    alevels = 1;
  } else if (h >= 0.23) {
    abase = 10;
    alevels = 1;
  } else if (h >= 0.18) {
    abase = 12;
    alevels = 1;
  } else if (h >= 0.13) {
    abase = 16;
    alevels = 1;
  } else {
    abase = 16;
    alevels = 2;
  }
  if (base > 0) abase = base;
  if (levels >= 0) alevels = levels;
  return {abase, alevels};
}

}  // namespace wgband
