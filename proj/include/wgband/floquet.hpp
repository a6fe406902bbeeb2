#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "wgband/common.hpp"
#include "wgband/geometry.hpp"

namespace wgband {

// eta sampling grid for band diagrams: uniform samples over the closed
// period [0, 2*pi] plus an optional symmetric refinement window centred on
// eta = pi, where the avoided crossing and the gap edges live.
struct EtaGridSpec {
  int base_points = 33;
  int window_points = 17;         // rounded to the nearest odd count
  double window_halfwidth = 0.0;  // <= 0 disables the window
};

std::vector<double> make_eta_grid(const EtaGridSpec& spec);

struct BandDiagram {
  std::vector<double> eta_grid;  // ascending
  Eigen::MatrixXd lambdas;       // entry (p-1, i) = Lambda_p(eta_i)
  double h = 0.0;                // cavern scale (0 = unperturbed)
  int p_max = 0;
};

struct FloquetOptions {
  int p_max = 3;
  double tol = 1e-8;
  int max_iterations = 150;
  std::uint64_t seed = 20260825;
  int threads = 1;
  double h = 0.0;                    // recorded in the diagram for reporting
  bool mirror_symmetric_eta = true;  // solve eta <= pi, copy to 2*pi - eta
  bool release_cavern = false;       // drop cavern Dirichlet rows (bracketing twin)
};

// The p_max lowest eigenvalues of the quasi-periodic cell problem at one eta,
// ascending.
Eigen::VectorXd solve_cell(const Mesh& mesh, double eta, const FloquetOptions& opts);

// Solves every grid point (concurrently when opts.threads > 1) and assembles
// the Lambda matrix. The grid must contain at least 8 points including pi.
BandDiagram compute_band_diagram(const Mesh& mesh, const EtaGridSpec& grid,
                                 const FloquetOptions& opts);

struct Band {
  double lower = 0.0;
  double upper = 0.0;
  bool hairline = false;  // width below merge resolution; kept as a band, flagged
};

struct Gap {
  double lower = 0.0;
  double upper = 0.0;
  double length() const { return upper - lower; }
};

struct GapReport {
  std::vector<Band> bands;  // per-band segments [Lambda_p^-, Lambda_p^+]
  std::vector<Gap> gaps;    // maximal open intervals in the band-union complement
  std::optional<double> first_gap_length;
};

// Band edges are the grid extrema (no interpolation). Bands whose endpoints
// come within 3*tol*scale of each other are merged before taking the
// complement, to avoid reporting hairline gaps made of solver noise.
GapReport band_edges(const BandDiagram& diagram, double tol = 1e-8);

struct BracketingReport {
  bool ok = true;     // lower bound Lambda_0 <= Lambda_h + budget everywhere
  int violations = 0;
  double worst = 0.0;  // max over grid points of Lambda_0 - Lambda_h
  std::vector<double> C_per_band;  // empirical sup (Lambda_h - Lambda_0) / h^3
  double tolerance = 0.0;          // solver tolerance the budget was built from
};

// Verifies the two-sided bracketing between the perturbed diagram and its
// released twin (same mesh, cavern constraints dropped). The twin is a strict
// subspace restriction, so the lower bound holds to solver precision; the
// upper bound is recorded as the empirical constant per band.
BracketingReport check_bracketing(const BandDiagram& diagram_h,
                                  const BandDiagram& diagram_0, double solver_tol);

}  // namespace wgband
