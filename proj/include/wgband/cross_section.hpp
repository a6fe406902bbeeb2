#pragma once

// cross_section: Dirichlet spectrum of the 2D cross-section, the normal
// derivative of the ground state at the cavern anchor, and the period
// admissibility test. These feed the coupling constant and the gap condition.

#include <Eigen/Dense>

#include "wgband/geometry.hpp"

namespace wgband {

struct CrossSectionSpectrum {
  Eigen::VectorXd M;        // ascending Dirichlet eigenvalues M_1 < M_2 <= ...
  Eigen::VectorXd V1;       // nodal ground state, L2-normalized, positive inside
  double dnV1_at_O = 0.0;   // filled by normal_derivative_at (not by the solve)
  bool gap_condition_ok = false;  // M_1 + pi^2 < M_2
  double T_threshold = 0.0;       // pi (M_2 - M_1)^{-1/2}
};

// Lowest `count` (>= 2) eigenpairs on a 2D Dirichlet mesh. The ground state's
// sign is fixed positive at the interior node nearest the mesh centroid.
CrossSectionSpectrum solve_cross_section(const Mesh& mesh, int count,
                                         double tol = 1e-8,
                                         std::uint64_t seed = 20260825);

// One-sided quadratic recovery of the outward-normal derivative of V1 at the
// boundary node O (negative by the sign convention). The sample line runs
// from O toward the domain centroid; O must be a Dirichlet boundary node.
double normal_derivative_at(const CrossSectionSpectrum& spectrum, const Mesh& mesh,
                            const Eigen::Vector2d& O);

struct PeriodAdmissibility {
  bool ok = false;
  double threshold = 0.0;  // pi (M_2 - M_1)^{-1/2}; ok iff T > threshold strictly
};

PeriodAdmissibility check_period_admissibility(const CrossSectionSpectrum& spectrum,
                                               double T);

}  // namespace wgband
