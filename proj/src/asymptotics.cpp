#include "wgband/asymptotics.hpp"

#include <cmath>

namespace wgband {

double coupling_constant(double P_theta, double dnV1) {
  if (!(P_theta > 0)) throw ConfigError("coupling constant needs P_theta > 0");
  if (dnV1 == 0) throw ConfigError("coupling constant needs a nonzero dnV1");
  return P_theta * dnV1 * dnV1;
}

CouplingMatrix coupling_matrix(double beta, double P) {
  if (!(P > 0)) throw ConfigError("coupling matrix needs P > 0");
  const double t = 2 * pi * beta;
  const double s = std::sqrt(P * P + t * t);
  CouplingMatrix cm;
  cm.matrix << t + P, P, P, -t + P;
  cm.lambda_minus = P - s;
  cm.lambda_plus = P + s;
  cm.a_plus = Eigen::Vector2d(P, -t + s).normalized();
  cm.a_minus = Eigen::Vector2d(P, -t - s).normalized();
  return cm;
}

PredictedPair predict_eigenvalues(double h, double beta, double M1, double P,
                                  double beta0, double h0) {
  if (!(h > 0)) throw ConfigError("eigenvalue prediction needs h > 0");
  const double t = 2 * pi * beta;
  const double s = std::sqrt(P * P + t * t);
  const double base = M1 + pi * pi;
  PredictedPair pp;
  pp.lambda_minus = base + h * h * h * (P - s);
  pp.lambda_plus = base + h * h * h * (P + s);
  pp.within_beta_window = std::abs(beta) <= beta0 * std::pow(h, -1.25);
  pp.within_h0 = h <= h0 * (1 + 1e-12);
  return pp;
}

double simple_point_correction(double P) {
  if (!(P > 0)) throw ConfigError("simple-point correction needs P > 0");
  return P;
}

GapPrediction predict_gap(double h, double M1, double P, double C_Lambda,
                          std::optional<double> M2) {
  if (!(h > 0)) throw ConfigError("gap prediction needs h > 0");
  if (!(P > 0)) throw ConfigError("gap prediction needs P > 0");
  const double base = M1 + pi * pi;
  if (M2 && !(base < *M2))
    throw ConfigError(
        "cross-section is not admissible: M1 + pi^2 >= M2, the second band "
        "buries the predicted gap");
  GapPrediction g;
  g.lower = base;
  g.length = 2 * P * h * h * h;
  g.upper = base + g.length;
  const double margin = C_Lambda * std::pow(h, 3.5);
  g.certified_lower = g.lower + margin;
  g.certified_upper = g.upper - margin;
  g.certified_nonempty = g.certified_upper > g.certified_lower;
  return g;
}

AsymptoticPrediction make_prediction(double M1, double P_theta, double dnV1, double h,
                                     double beta0, double C_Lambda,
                                     std::optional<double> M2) {
  AsymptoticPrediction a;
  a.M1 = M1;
  a.P_theta = P_theta;
  a.dnV1 = dnV1;
  a.P = coupling_constant(P_theta, dnV1);
  a.h = h;
  a.beta_window = beta0 * std::pow(h, -1.25);
  a.gap = predict_gap(h, M1, a.P, C_Lambda, M2);
  return a;
}

}  // namespace wgband
