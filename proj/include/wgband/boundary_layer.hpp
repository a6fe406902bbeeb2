#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "wgband/common.hpp"
#include "wgband/geometry.hpp"

namespace wgband {

struct ExteriorField {
  Eigen::VectorXd W;    // nodal values on the half-space mesh
  double energy = 0.0;  // Dirichlet energy of the discrete solution
};

// Harmonic field on the truncated exterior domain with W = -xi1 on the cavern
// facets and W = 0 on the wall plane and the truncation shell. The cavern
// spec is used to sanity-check that cavern-tagged nodes actually lie on the
// cavern boundary.
ExteriorField solve_exterior(const HalfspaceMesh& halfspace, const CavernSpec& cavern);

struct PolarizationResult {
  double P_theta = 0.0;
  std::vector<std::pair<double, double>> moment_samples;  // (layer radius, M_R)
  bool extrapolated = false;
  std::vector<double> fit_radii;     // recorded layer radii actually used
  double fit_residual = 0.0;         // rms deviation of P(R) around the fit
  double truncation_radius = 0.0;
};

// Hemispherical moment M_R = integral over the recorded shell nearest each
// requested radius of W * xi1 / R, inverted to P(R) = -3 M_R and extrapolated
// linearly in 1/R to strip the higher-multipole residue.
PolarizationResult extract_polarization(const ExteriorField& field,
                                        const HalfspaceMesh& halfspace,
                                        const std::vector<double>& fit_radii);

// Mirror image of the half-space mesh through the wall plane xi1 = 0: the
// truncated exterior of the symmetrized cavern. Wall nodes are shared, wall
// facets disappear (they become interior), every other facet and every shell
// layer gains its mirror copy. Used by the odd-extension consistency check.
HalfspaceMesh mirror_halfspace_mesh(const HalfspaceMesh& halfspace);

}  // namespace wgband
