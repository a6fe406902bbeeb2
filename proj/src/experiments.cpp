#include "wgband/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace wgband {

namespace {

std::string fmt(double v) { return format_sig(v, 6); }

int index_of_eta(const BandDiagram& d, double eta) {
  for (std::size_t i = 0; i < d.eta_grid.size(); ++i)
    if (std::abs(d.eta_grid[i] - eta) < 1e-12) return static_cast<int>(i);
  return -1;
}

}  // namespace

CrossSectionReport run_cross_section(const ExperimentConfig& config) {
  const auto shape = config.shape();
  const int count = std::max(2, config.solver.p_max);
  auto mesh = build_cross_section_mesh(shape, config.cross_section.resolution);
  auto spectrum =
      solve_cross_section(mesh, count, config.solver.tol, config.seed);

  CrossSectionReport r;
  r.M.assign(spectrum.M.data(), spectrum.M.data() + spectrum.M.size());
  r.dnV1 = normal_derivative_at(spectrum, mesh, shape.anchor());
  r.gap_condition_ok = spectrum.gap_condition_ok;
  r.T_threshold = spectrum.T_threshold;
  r.period_admissible = check_period_admissibility(spectrum, 1.0).ok;

  const auto& rr = config.cross_section.richardson_resolutions;
  if (rr.size() == 2 && rr[0] != rr[1]) {
    const int rc = std::min(rr[0], rr[1]);
    const int rf = std::max(rr[0], rr[1]);
    auto coarse = (rc == config.cross_section.resolution)
                      ? spectrum
                      : solve_cross_section(build_cross_section_mesh(shape, rc), count,
                                            config.solver.tol, config.seed);
    auto fine = (rf == config.cross_section.resolution)
                    ? spectrum
                    : solve_cross_section(build_cross_section_mesh(shape, rf), count,
                                          config.solver.tol, config.seed);
    const double q2 = std::pow(double(rf) / rc, 2);
    for (int k = 0; k < count; ++k)
      r.M_extrapolated.push_back((q2 * fine.M[k] - coarse.M[k]) / (q2 - 1));
  }
  return r;
}

PolarizationReport run_polarization(const ExperimentConfig& config) {
  const auto cavern = config.cavern_spec(config.cavern.h);
  const double R_ref = cavern.R_ref();
  auto halfspace = build_halfspace_mesh(
      cavern, config.polarization.R_inf_factor * R_ref, config.polarization.resolution);
  auto field = solve_exterior(halfspace, cavern);
  std::vector<double> radii;
  for (double f : config.polarization.fit_radii_factors) radii.push_back(f * R_ref);
  PolarizationReport r;
  r.result = extract_polarization(field, halfspace, radii);
  r.energy = field.energy;
  r.min_W = field.W.minCoeff();
  return r;
}

namespace {

struct PredictionBase {
  CrossSectionReport cs;
  PolarizationReport pol;
  double M1 = 0.0;
  double M2 = 0.0;
  double P = 0.0;
};

PredictionBase prediction_base(const ExperimentConfig& config) {
  PredictionBase b;
  b.cs = run_cross_section(config);
  b.pol = run_polarization(config);
  b.M1 = b.cs.M_extrapolated.size() > 0 ? b.cs.M_extrapolated[0] : b.cs.M[0];
  b.M2 = b.cs.M_extrapolated.size() > 1 ? b.cs.M_extrapolated[1] : b.cs.M[1];
  b.P = coupling_constant(b.pol.result.P_theta, b.cs.dnV1);
  return b;
}

BandDiagram diagram_at(const ExperimentConfig& config, double h, double P_hat,
                       bool release_cavern = false) {
  auto [base, levels] = cell_mesh_parameters(config, h);
  auto mesh = build_cell_mesh(config.shape(), config.cavern_spec(h), levels, base);
  EtaGridSpec grid;
  grid.base_points = config.eta_grid.base_points;
  grid.window_points = config.eta_grid.window_points;
  grid.window_halfwidth =
      config.eta_grid.window_factor * P_hat * h * h * h / (2 * pi);
  FloquetOptions fo;
  fo.p_max = config.solver.p_max;
  fo.tol = config.solver.tol;
  fo.max_iterations = config.solver.max_iterations;
  fo.seed = config.seed;
  fo.threads = config.threads;
  fo.h = h;
  fo.mirror_symmetric_eta = config.floquet.mirror_symmetric_eta;
  fo.release_cavern = release_cavern;
  return compute_band_diagram(mesh, grid, fo);
}

}  // namespace

BandsReport run_bands(const ExperimentConfig& config) {
  const auto base = prediction_base(config);
  const double h = config.cavern.h;
  BandsReport r;
  r.prediction =
      make_prediction(base.M1, base.pol.result.P_theta, base.cs.dnV1, h,
                      config.asymptotics.beta0, config.asymptotics.C_Lambda, base.M2);
  r.diagram = diagram_at(config, h, base.P);
  r.gaps = band_edges(r.diagram, config.solver.tol);
  return r;
}

ScalingStudyResult run_gap_scan(const ExperimentConfig& config) {
  if (config.cavern.h_list.size() < 2)
    throw ConfigError("gap scan needs at least 2 h values");
  const auto base = prediction_base(config);
  if (!base.cs.gap_condition_ok)
    throw ConfigError(
        "cross-section is not admissible: M1 + pi^2 >= M2, the second band "
        "buries the predicted gap");

  ScalingStudyResult out;
  out.base = make_prediction(base.M1, base.pol.result.P_theta, base.cs.dnV1,
                             config.cavern.h_list.front(), config.asymptotics.beta0,
                             config.asymptotics.C_Lambda, base.M2);

  std::string first_error;
  for (double h : config.cavern.h_list) {
    ScalingRow row;
    row.h = h;
    try {
      auto diagram = diagram_at(config, h, base.P);
      auto edges = band_edges(diagram, config.solver.tol);
      if (!edges.first_gap_length)
        throw VerificationError("no spectral gap detected at h = " + fmt(h));
      const int ipi = index_of_eta(diagram, pi);
      if (ipi < 0) throw SolverError("eta = pi missing from the grid");
      row.l_measured = *edges.first_gap_length;
      row.gap_lower = edges.gaps.front().lower;
      row.gap_upper = edges.gaps.front().upper;
      row.lambda1_pi = diagram.lambdas(0, ipi);
      if (diagram.p_max > 1) row.lambda2_pi = diagram.lambdas(1, ipi);
      row.l_predicted = 2 * base.P * h * h * h;
      row.ratio = row.l_measured / row.l_predicted;
      row.diagram = std::move(diagram);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
      if (first_error.empty()) first_error = row.error;
    }
    out.rows.push_back(std::move(row));
  }

  std::vector<double> hs, ls, lp;
  for (const auto& row : out.rows) {
    if (!row.ok) continue;
    hs.push_back(row.h);
    ls.push_back(row.l_measured);
    lp.push_back(row.l_predicted);
    out.C_Lambda_fit = std::max(
        out.C_Lambda_fit, std::abs(row.l_measured - row.l_predicted) /
                              std::pow(row.h, 3.5));
  }
  if (hs.empty())
    throw SolverError("gap scan failed at every h; first failure: " + first_error);
  if (hs.size() >= 3) {
    const auto fit = fit_loglog(hs, ls);
    out.slope = fit.slope;
    out.slope_ci = fit.ci_halfwidth;
    out.slope_valid = true;
    if (auto q = fit_remainder_exponent(hs, ls, lp)) {
      out.remainder_exponent = *q;
      out.remainder_valid = true;
    }
  }
  return out;
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  const int n = static_cast<int>(x.size());
  if (n != static_cast<int>(y.size()) || n < 2)
    throw ConfigError("log-log fit needs at least 2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw ConfigError("log-log fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double Sxx = sxx - sx * sx / n;
  if (!(Sxx > 0)) throw ConfigError("log-log fit needs at least 2 distinct abscissae");
  LogLogFit f;
  f.slope = (sxy - sx * sy / n) / Sxx;
  f.intercept = (sy - f.slope * sx) / n;
  if (n > 2) {
    double ssr = 0;
    for (int i = 0; i < n; ++i) {
      const double r = ly[i] - (f.intercept + f.slope * lx[i]);
      ssr += r * r;
    }
    // two-sided 95% t-quantiles for small degrees of freedom
    static const double t95[] = {12.706, 4.303, 3.182, 2.776, 2.571,
                                 2.447,  2.365, 2.306, 2.262, 2.228};
    const int df = n - 2;
    const double t = df <= 10 ? t95[df - 1] : 1.96;
    f.ci_halfwidth = t * std::sqrt(ssr / df / Sxx);
  }
  return f;
}

std::optional<double> fit_remainder_exponent(const std::vector<double>& h,
                                             const std::vector<double>& l,
                                             const std::vector<double>& l_pred) {
  if (h.size() != l.size() || h.size() != l_pred.size())
    throw ConfigError("remainder fit needs matched rows");
  std::vector<double> hs, rs;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double r = std::abs(l[i] - l_pred[i]);
    if (r > 1e-300) {
      hs.push_back(h[i]);
      rs.push_back(r);
    }
  }
  if (hs.size() < 2) return std::nullopt;
  return fit_loglog(hs, rs).slope;
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

namespace {

// Shared, lazily-built artifacts so that selected checks reuse solves.
struct VerifyContext {
  const ExperimentConfig& config;
  explicit VerifyContext(const ExperimentConfig& c) : config(c) {}

  std::optional<CrossSectionReport> cs_;
  std::optional<PolarizationReport> pol_;
  std::optional<Mesh> cell_;       // carved cell at verify scale
  std::optional<Mesh> uniform_;    // uniform unperturbed cell at verify scale
  std::optional<BandDiagram> dh_;  // carved, constrained, mirror off
  std::optional<BandDiagram> d0_;  // carved, released twin
  std::optional<BandDiagram> dt_;  // true unperturbed diagram

  const CrossSectionReport& cs() {
    if (!cs_) cs_ = run_cross_section(config);
    return *cs_;
  }
  const PolarizationReport& pol() {
    if (!pol_) pol_ = run_polarization(config);
    return *pol_;
  }
  double P_hat() { return coupling_constant(pol().result.P_theta, cs().dnV1); }

  const Mesh& cell() {
    if (!cell_)
      cell_ = build_cell_mesh(config.shape(), config.cavern_spec(config.cavern.h), 1,
                              config.verify.resolution);
    return *cell_;
  }
  const Mesh& uniform() {
    if (!uniform_)
      uniform_ = build_cell_mesh(config.shape(), std::nullopt, 0,
                                 config.verify.resolution);
    return *uniform_;
  }

  EtaGridSpec verify_grid() const {
    EtaGridSpec g;
    g.base_points = config.verify.eta_points;
    g.window_points = 0;
    return g;
  }
  FloquetOptions verify_options(bool mirror, bool release) const {
    FloquetOptions fo;
    fo.p_max = config.solver.p_max;
    fo.tol = config.solver.tol;
    fo.max_iterations = config.solver.max_iterations;
    fo.seed = config.seed;
    fo.threads = config.threads;
    fo.h = config.cavern.h;
    fo.mirror_symmetric_eta = mirror;
    fo.release_cavern = release;
    return fo;
  }

  const BandDiagram& diagram_h() {
    if (!dh_)
      dh_ = compute_band_diagram(cell(), verify_grid(), verify_options(false, false));
    return *dh_;
  }
  const BandDiagram& diagram_released() {
    if (!d0_)
      d0_ = compute_band_diagram(cell(), verify_grid(), verify_options(true, true));
    return *d0_;
  }
  const BandDiagram& diagram_true() {
    if (!dt_) {
      auto fo = verify_options(true, false);
      fo.h = 0.0;
      dt_ = compute_band_diagram(uniform(), verify_grid(), fo);
    }
    return *dt_;
  }
};

VerifyCheck check_coupling_identities(VerifyContext& ctx) {
  VerifyCheck c{"coupling_identities", true, ""};
  std::mt19937_64 rng(ctx.config.seed);
  std::uniform_real_distribution<double> beta_d(-10.0, 10.0), P_d(0.1, 500.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double beta = beta_d(rng), P = P_d(rng);
    const auto cm = coupling_matrix(beta, P);
    const double scale = std::max({1.0, P * P, 4 * pi * pi * beta * beta});
    const double trace_err =
        std::abs(cm.lambda_plus + cm.lambda_minus - 2 * P) / std::max(1.0, 2 * P);
    const double det_err =
        std::abs(cm.lambda_plus * cm.lambda_minus + 4 * pi * pi * beta * beta) / scale;
    const double ortho_err = std::max(std::abs(cm.a_plus.dot(cm.a_minus)),
                                      std::max(std::abs(cm.a_plus.norm() - 1),
                                               std::abs(cm.a_minus.norm() - 1)));
    const auto even = coupling_matrix(-beta, P);
    const double even_err =
        std::max(std::abs(even.lambda_plus - cm.lambda_plus),
                 std::abs(even.lambda_minus - cm.lambda_minus)) /
        scale;
    const bool ordered = cm.lambda_minus < cm.lambda_plus;
    worst = std::max({worst, trace_err, det_err, ortho_err, even_err});
    if (trace_err > 1e-12 || det_err > 1e-12 || ortho_err > 1e-12 ||
        even_err > 1e-12 || !ordered)
      c.pass = false;
  }
  c.detail = "100 random pairs, worst identity error " + fmt(worst);
  return c;
}

VerifyCheck check_polarization_oracle(VerifyContext& ctx) {
  VerifyCheck c{"polarization_oracle", true, ""};
  const auto& config = ctx.config;
  const auto cavern = config.cavern_spec(config.cavern.h);
  const double R_ref = cavern.R_ref();
  auto halfspace = build_halfspace_mesh(
      cavern, config.polarization.R_inf_factor * R_ref, config.polarization.resolution);
  auto field = solve_exterior(halfspace, cavern);
  std::vector<double> radii;
  for (double f : config.polarization.fit_radii_factors) radii.push_back(f * R_ref);
  auto pol = extract_polarization(field, halfspace, radii);
  std::ostringstream detail;

  // Maximum-principle sign property.
  const double w_scale = std::max(1.0, field.W.cwiseAbs().maxCoeff());
  if (field.W.minCoeff() < -1e-9 * w_scale) {
    c.pass = false;
    detail << "sign property violated (min W = " << fmt(field.W.minCoeff()) << "); ";
  }

  // Analytic value for the hemisphere.
  if (config.cavern.shape == "hemisphere") {
    const double exact = 2 * pi * std::pow(config.cavern.rho, 3);
    const double err = rel_err(pol.P_theta, exact);
    detail << "P vs analytic rel err " << fmt(err) << "; ";
    if (err > 0.05) c.pass = false;
  }

  // Injected exact dipole must be recovered to roundoff on the same mesh.
  ExteriorField dipole;
  dipole.W.resize(halfspace.mesh.node_count());
  const double a3 = std::pow(R_ref, 3);
  for (int i = 0; i < halfspace.mesh.node_count(); ++i) {
    const auto& p = halfspace.mesh.nodes[i];
    const double r = p.norm();
    dipole.W[i] = r > 0 ? -a3 * p.x() / (r * r * r) : 0.0;
  }
  auto dip = extract_polarization(dipole, halfspace, radii);
  const double dip_err = rel_err(dip.P_theta, 2 * pi * a3);
  detail << "exact-dipole recovery rel err " << fmt(dip_err) << "; ";
  if (dip_err > 1e-10) c.pass = false;

  // Odd extension: the mirrored full problem reproduces P to solver precision.
  auto full = mirror_halfspace_mesh(halfspace);
  auto ffield = solve_exterior(full, cavern);
  auto fpol = extract_polarization(ffield, full, radii);
  const double odd_err = rel_err(fpol.P_theta, pol.P_theta);
  detail << "odd-extension rel err " << fmt(odd_err) << "; ";
  if (odd_err > 1e-8) c.pass = false;

  // Truncation doubling.
  auto far = build_halfspace_mesh(cavern, 2 * config.polarization.R_inf_factor * R_ref,
                                  config.polarization.resolution);
  auto far_field = solve_exterior(far, cavern);
  auto far_pol = extract_polarization(far_field, far, radii);
  const double doubling = rel_err(far_pol.P_theta, pol.P_theta);
  detail << "truncation-doubling change " << fmt(doubling);
  if (doubling > 0.02) c.pass = false;

  c.detail = detail.str();
  return c;
}

VerifyCheck check_bracketing(VerifyContext& ctx) {
  VerifyCheck c{"bracketing", true, ""};
  const auto& config = ctx.config;
  const double tol_eff = config.solver.tol * config.verify.budget_factor / 10.0;
  const auto report =
      wgband::check_bracketing(ctx.diagram_h(), ctx.diagram_released(), tol_eff);
  const double C_upper = config.verify.bracketing_C_upper
                             ? *config.verify.bracketing_C_upper
                             : 4 * ctx.P_hat();
  double C_max = 0.0;
  for (double C : report.C_per_band) C_max = std::max(C_max, C);
  std::ostringstream detail;
  detail << "lower-bound violations " << report.violations << " (worst "
         << fmt(report.worst) << "), empirical C per band max " << fmt(C_max)
         << " vs budget " << fmt(C_upper);
  if (!report.ok) {
    c.pass = false;
    detail << "; lower bracketing exceeded the tolerance budget";
  }
  if (C_max > C_upper) {
    c.pass = false;
    detail << "; upper bracketing constant exceeded the budget";
  }
  c.detail = detail.str();
  return c;
}

VerifyCheck check_gauge_periodicity(VerifyContext& ctx) {
  VerifyCheck c{"gauge_periodicity", true, ""};
  const auto& config = ctx.config;
  auto fo = ctx.verify_options(true, false);
  const double eta = 0.7;
  const auto a = solve_cell(ctx.uniform(), eta, fo);
  const auto b = solve_cell(ctx.uniform(), eta + 2 * pi, fo);
  double worst = 0.0;
  for (int p = 0; p < a.size(); ++p) {
    const double budget = config.verify.budget_factor * config.solver.tol *
                          std::max(1.0, std::abs(a[p]));
    worst = std::max(worst, std::abs(a[p] - b[p]));
    if (std::abs(a[p] - b[p]) > budget) c.pass = false;
  }
  c.detail = "max |Lambda(eta) - Lambda(eta + 2 pi)| = " + fmt(worst);
  return c;
}

VerifyCheck check_conjugation_symmetry(VerifyContext& ctx) {
  VerifyCheck c{"conjugation_symmetry", true, ""};
  const auto& config = ctx.config;
  const auto& d = ctx.diagram_h();
  const int n = static_cast<int>(d.eta_grid.size());
  double worst = 0.0;
  double min_lambda = std::numeric_limits<double>::max();
  for (int i = 0; i < n; ++i) {
    int j = -1;
    for (int k = 0; k < n; ++k)
      if (std::abs(d.eta_grid[k] - (2 * pi - d.eta_grid[i])) < 1e-12) j = k;
    for (int p = 0; p < d.p_max; ++p) {
      min_lambda = std::min(min_lambda, d.lambdas(p, i));
      if (j < 0) continue;
      const double diff = std::abs(d.lambdas(p, i) - d.lambdas(p, j));
      const double budget = config.verify.budget_factor * config.solver.tol *
                            std::max(1.0, std::abs(d.lambdas(p, i)));
      worst = std::max(worst, diff);
      if (diff > budget) c.pass = false;
    }
  }
  if (!(min_lambda > 0)) c.pass = false;
  c.detail = "max mirrored-point difference " + fmt(worst) + ", min Lambda " +
             fmt(min_lambda);
  return c;
}

VerifyCheck check_lipschitz_proxy(VerifyContext& ctx) {
  VerifyCheck c{"lipschitz_proxy", true, ""};
  const auto& config = ctx.config;
  const double h = config.cavern.h;
  const double w =
      config.eta_grid.window_factor * ctx.P_hat() * h * h * h / (2 * pi);

  auto slope_at = [&](int window_points) {
    EtaGridSpec g;
    g.base_points = config.verify.eta_points;
    g.window_points = window_points;
    g.window_halfwidth = w;
    auto d = compute_band_diagram(ctx.cell(), g, ctx.verify_options(true, false));
    double cl = 0.0;
    for (std::size_t i = 0; i + 1 < d.eta_grid.size(); ++i) {
      const double lo = d.eta_grid[i], hi = d.eta_grid[i + 1];
      if (lo < pi - w - 1e-9 || hi > pi + w + 1e-9) continue;
      for (int p = 0; p < d.p_max; ++p)
        cl = std::max(cl, std::abs(d.lambdas(p, i + 1) - d.lambdas(p, i)) / (hi - lo));
    }
    return cl;
  };

  const double coarse = slope_at(9);
  const double fine = slope_at(17);
  c.detail = "window max |dLambda/deta|: " + fmt(coarse) + " (9 pts) -> " +
             fmt(fine) + " (17 pts)";
  if (fine > std::max(2 * coarse, coarse + 1.0) || fine > 1000) c.pass = false;
  return c;
}

VerifyCheck check_domain_monotonicity(VerifyContext& ctx) {
  VerifyCheck c{"domain_monotonicity", true, ""};
  const auto& config = ctx.config;
  const auto& dh = ctx.diagram_h();
  const auto& dt = ctx.diagram_true();
  double worst = -std::numeric_limits<double>::max();
  for (int i = 0; i < static_cast<int>(dh.eta_grid.size()); ++i) {
    for (int p = 0; p < dh.p_max; ++p) {
      const double margin = dt.lambdas(p, i) - dh.lambdas(p, i);  // should be <= 0
      const double budget = config.verify.monotonicity_budget *
                            std::max(1.0, std::abs(dh.lambdas(p, i)));
      worst = std::max(worst, margin - budget);
      if (margin > budget) c.pass = false;
    }
  }
  c.detail = "worst (Lambda_true - Lambda_h - budget) = " + fmt(worst);
  return c;
}

VerifyCheck check_period_admissibility(VerifyContext& ctx) {
  VerifyCheck c{"period_admissibility", true, ""};
  const auto& cs = ctx.cs();
  std::ostringstream detail;
  detail << "gap condition " << (cs.gap_condition_ok ? "ok" : "VIOLATED")
         << ", threshold " << fmt(cs.T_threshold) << " vs period 1";
  if (!cs.gap_condition_ok || !cs.period_admissible) c.pass = false;
  c.detail = detail.str();
  return c;
}

}  // namespace

std::vector<std::string> verify_check_names() {
  return {"coupling_identities", "polarization_oracle",  "bracketing",
          "gauge_periodicity",   "conjugation_symmetry", "lipschitz_proxy",
          "domain_monotonicity", "period_admissibility"};
}

VerifyReport run_verify(const ExperimentConfig& config) {
  VerifyReport report;
  std::vector<std::string> selected = config.verify.checks;
  if (selected.size() == 1 && selected[0] == "all") selected = verify_check_names();
  if (selected.empty()) {
    report.warning = "no checks selected; nothing was verified";
    return report;
  }
  const auto known = verify_check_names();
  for (const auto& name : selected)
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::string valid;
      for (const auto& k : known) valid += (valid.empty() ? "" : ", ") + k;
      throw ConfigError("unknown verify check \"" + name + "\" (valid: " + valid +
                        ", or all)");
    }

  VerifyContext ctx(config);
  for (const auto& name : selected) {
    VerifyCheck check;
    try {
      if (name == "coupling_identities") check = check_coupling_identities(ctx);
      else if (name == "polarization_oracle") check = check_polarization_oracle(ctx);
      else if (name == "bracketing") check = check_bracketing(ctx);
      else if (name == "gauge_periodicity") check = check_gauge_periodicity(ctx);
      else if (name == "conjugation_symmetry") check = check_conjugation_symmetry(ctx);
      else if (name == "lipschitz_proxy") check = check_lipschitz_proxy(ctx);
      else if (name == "domain_monotonicity") check = check_domain_monotonicity(ctx);
      else if (name == "period_admissibility") check = check_period_admissibility(ctx);
    } catch (const std::exception& e) {
      check.name = name;
      check.pass = false;
      check.detail = std::string("exception: ") + e.what();
    }
    report.all_pass = report.all_pass && check.pass;
    report.checks.push_back(std::move(check));
  }
  return report;
}

}  // namespace wgband
