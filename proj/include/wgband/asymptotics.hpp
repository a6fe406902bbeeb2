#pragma once

#include <Eigen/Dense>
#include <optional>

#include "wgband/common.hpp"

namespace wgband {

// P = P_theta * dnV1^2, the constant multiplying h^3 in every prediction.
double coupling_constant(double P_theta, double dnV1);

struct CouplingMatrix {
  Eigen::Matrix2d matrix;      // [[2*pi*beta + P, P], [P, -2*pi*beta + P]]
  double lambda_minus = 0.0;   // P - sqrt(P^2 + 4*pi^2*beta^2)
  double lambda_plus = 0.0;    // P + sqrt(P^2 + 4*pi^2*beta^2)
  Eigen::Vector2d a_minus;     // unit eigenvectors, mutually orthogonal
  Eigen::Vector2d a_plus;
};

CouplingMatrix coupling_matrix(double beta, double P);

struct PredictedPair {
  double lambda_minus = 0.0;  // M1 + pi^2 + h^3 (P - sqrt(P^2 + 4*pi^2*beta^2))
  double lambda_plus = 0.0;   // M1 + pi^2 + h^3 (P + sqrt(P^2 + 4*pi^2*beta^2))
  bool within_beta_window = true;  // |beta| <= beta0 * h^(-5/4)
  bool within_h0 = true;           // h <= h0
};

// Main terms of the two eigenvalue branches at eta = pi + beta h^3. Outside
// the validity window the values are still returned; the flags report it.
PredictedPair predict_eigenvalues(double h, double beta, double M1, double P,
                                  double beta0 = 0.5, double h0 = 0.3);

// First-order correction at a simple point away from eta = pi: both branches
// shift by the same amount P.
double simple_point_correction(double P);

struct GapPrediction {
  double lower = 0.0;   // M1 + pi^2
  double upper = 0.0;   // M1 + pi^2 + 2 P h^3
  double length = 0.0;  // 2 P h^3
  // Sub-window certified up to the h^(7/2) remainder with the supplied
  // constant; empty (certified_nonempty = false) when the margin eats it.
  double certified_lower = 0.0;
  double certified_upper = 0.0;
  bool certified_nonempty = false;
};

// Predicted spectral gap. When M2 is supplied the admissibility condition
// M1 + pi^2 < M2 is enforced; violating it is a configuration error (the
// second band buries the gap).
GapPrediction predict_gap(double h, double M1, double P, double C_Lambda = 0.0,
                          std::optional<double> M2 = std::nullopt);

struct AsymptoticPrediction {
  double M1 = 0.0;
  double P_theta = 0.0;
  double dnV1 = 0.0;
  double P = 0.0;
  double h = 0.0;
  double beta_window = 0.0;  // beta0 * h^(-5/4)
  GapPrediction gap;
};

AsymptoticPrediction make_prediction(double M1, double P_theta, double dnV1, double h,
                                     double beta0 = 0.5, double C_Lambda = 0.0,
                                     std::optional<double> M2 = std::nullopt);

}  // namespace wgband
