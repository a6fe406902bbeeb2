#pragma once

// Lowest eigenpairs of the Hermitian pencil (K, M) by shift-invert block
// subspace iteration with dense Rayleigh-Ritz extraction. Complex pencils go
// through the real 2N embedding
//
//     [ Re K  -Im K ]        [ Re M  -Im M ]
//     [ Im K   Re K ],       [ Im M   Re M ],
//
// so one real sparse LDLT factorization drives the whole iteration; each
// complex eigenpair appears twice in the embedding and the copies are merged
// back by an M-orthogonality test.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wgband/fem.hpp"

namespace wgband {

struct EigenOptions {
  int k = 6;                      // eigenpairs wanted
  double tol = 1e-8;              // ||K u - lambda M u|| <= tol * ||K u||
  int max_iterations = 150;
  std::uint64_t seed = 20260825;  // deterministic start block
  double sigma = 0.0;             // factorization shift; keep below the spectrum
};

struct EigenResult {
  Eigen::VectorXd values;                 // ascending
  std::vector<Eigen::VectorXcd> vectors;  // free-dof coefficients, M-orthonormal
  Eigen::VectorXd residuals;              // relative residual per pair
  int iterations = 0;
};

EigenResult solve_lowest(const HermitianPencil& pencil, const EigenOptions& opts = {});

}  // namespace wgband
