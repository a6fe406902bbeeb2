#include "wgband/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wgband/eigensolve.hpp"
#include "wgband/fem.hpp"
#include "wgband/threading.hpp"

namespace wgband {

std::vector<double> make_eta_grid(const EtaGridSpec& spec) {
  if (spec.base_points < 2)
    throw ConfigError("eta grid needs at least 2 base points");
  std::vector<double> pts;
  pts.reserve(spec.base_points + std::max(spec.window_points, 0) + 1);
  for (int i = 0; i < spec.base_points; ++i)
    pts.push_back(2.0 * pi * i / (spec.base_points - 1));
  if (spec.window_halfwidth > 0 && spec.window_points > 1) {
    // Clamp so the window stays inside the period even at coarse h, where the
    // nominal width can exceed the whole zone.
    const double w = std::min(spec.window_halfwidth, pi / 2);
    const int half = std::max(spec.window_points / 2, 1);
    for (int j = -half; j <= half; ++j) pts.push_back(pi + w * j / half);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return std::abs(a - b) < 1e-12; }),
            pts.end());
  return pts;
}

Eigen::VectorXd solve_cell(const Mesh& mesh, double eta, const FloquetOptions& opts) {
  if (mesh.dim != 3) throw ConfigError("cell solve needs a 3D mesh");
  if (opts.p_max < 1) throw ConfigError("cell solve needs p_max >= 1");
  AssemblyOptions ao;
  ao.constrain_cavern = !opts.release_cavern;
  auto pencil = assemble(mesh, eta, ao);
  EigenOptions eo;
  eo.k = opts.p_max;
  eo.tol = opts.tol;
  eo.seed = opts.seed;
  eo.max_iterations = opts.max_iterations;
  return solve_lowest(pencil, eo).values;
}

BandDiagram compute_band_diagram(const Mesh& mesh, const EtaGridSpec& grid,
                                 const FloquetOptions& opts) {
  const auto etas = make_eta_grid(grid);
  const int n = static_cast<int>(etas.size());
  if (n < 8) throw ConfigError("eta grid needs at least 8 points");
  const auto at = [&](double v) {
    for (int i = 0; i < n; ++i)
      if (std::abs(etas[i] - v) < 1e-12) return i;
    return -1;
  };
  if (at(pi) < 0) throw ConfigError("eta grid must include eta = pi");

  BandDiagram d;
  d.eta_grid = etas;
  d.h = opts.h;
  d.p_max = opts.p_max;
  d.lambdas.resize(opts.p_max, n);

  // Conjugation symmetry: when enabled, solve only eta <= pi and copy the
  // column to the mirrored grid point 2*pi - eta.
  std::vector<int> source(n);
  std::iota(source.begin(), source.end(), 0);
  if (opts.mirror_symmetric_eta) {
    for (int i = 0; i < n; ++i) {
      if (etas[i] <= pi + 1e-12) continue;
      const int j = at(2.0 * pi - etas[i]);
      if (j >= 0) source[i] = j;
    }
  }
  std::vector<int> to_solve;
  for (int i = 0; i < n; ++i)
    if (source[i] == i) to_solve.push_back(i);

  parallel_for(static_cast<int>(to_solve.size()), opts.threads, [&](int k) {
    const int i = to_solve[k];
    d.lambdas.col(i) = solve_cell(mesh, etas[i], opts);
  });
  for (int i = 0; i < n; ++i)
    if (source[i] != i) d.lambdas.col(i) = d.lambdas.col(source[i]);
  return d;
}

GapReport band_edges(const BandDiagram& diagram, double tol) {
  if (diagram.eta_grid.empty() || diagram.lambdas.size() == 0)
    throw ConfigError("band diagram is empty");
  GapReport report;
  const int segments = static_cast<int>(diagram.lambdas.rows());
  for (int p = 0; p < segments; ++p) {
    Band b;
    b.lower = diagram.lambdas.row(p).minCoeff();
    b.upper = diagram.lambdas.row(p).maxCoeff();
    b.hairline = (b.upper - b.lower) < 3 * tol * std::max(1.0, std::abs(b.upper));
    report.bands.push_back(b);
  }

  // Union of the segments with tolerance glueing, then the complement.
  std::vector<std::pair<double, double>> sorted;
  for (const auto& b : report.bands) sorted.emplace_back(b.lower, b.upper);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& seg : sorted) {
    if (!merged.empty()) {
      auto& last = merged.back();
      const double glue = 3 * tol * std::max(1.0, std::abs(last.second));
      if (seg.first <= last.second + glue) {
        last.second = std::max(last.second, seg.second);
        continue;
      }
    }
    merged.push_back(seg);
  }
  for (std::size_t i = 1; i < merged.size(); ++i)
    report.gaps.push_back({merged[i - 1].second, merged[i].first});
  if (!report.gaps.empty()) report.first_gap_length = report.gaps.front().length();
  return report;
}

BracketingReport check_bracketing(const BandDiagram& diagram_h,
                                  const BandDiagram& diagram_0, double solver_tol) {
  const int P = static_cast<int>(diagram_h.lambdas.rows());
  const int N = static_cast<int>(diagram_h.lambdas.cols());
  if (P != diagram_0.lambdas.rows() || N != diagram_0.lambdas.cols() ||
      diagram_h.eta_grid.size() != diagram_0.eta_grid.size())
    throw ConfigError("bracketing check: diagrams use different grids");
  for (int i = 0; i < N; ++i)
    if (std::abs(diagram_h.eta_grid[i] - diagram_0.eta_grid[i]) > 1e-12)
      throw ConfigError("bracketing check: diagrams use different grids");

  BracketingReport r;
  r.tolerance = solver_tol;
  const double h3 = diagram_h.h > 0 ? std::pow(diagram_h.h, 3) : 0.0;
  for (int p = 0; p < P; ++p) {
    double C = 0.0;
    for (int i = 0; i < N; ++i) {
      const double lh = diagram_h.lambdas(p, i);
      const double l0 = diagram_0.lambdas(p, i);
      const double budget =
          10 * solver_tol * std::max({1.0, std::abs(lh), std::abs(l0)});
      if (l0 - lh > budget) {
        ++r.violations;
        r.ok = false;
      }
      r.worst = std::max(r.worst, l0 - lh);
      if (h3 > 0) C = std::max(C, (lh - l0) / h3);
    }
    if (h3 > 0) r.C_per_band.push_back(C);
  }
  return r;
}

}  // namespace wgband
