#include <doctest.h>

#include <cmath>

#include "wgband/asymptotics.hpp"

using namespace wgband;

TEST_SUITE("asymptotics") {

TEST_CASE("coupling constant") {
  // Unit square + unit hemisphere: P_theta = 2 pi, dnV1 = -2 pi, so
  // P = 2 pi * 4 pi^2 = 8 pi^3.
  CHECK(coupling_constant(2 * pi, -2 * pi) ==
        doctest::Approx(8 * pi * pi * pi).epsilon(1e-14));
  CHECK_THROWS_AS(coupling_constant(0.0, -2 * pi), ConfigError);
  CHECK_THROWS_AS(coupling_constant(-1.0, -2 * pi), ConfigError);
  CHECK_THROWS_AS(coupling_constant(2 * pi, 0.0), ConfigError);
}

TEST_CASE("coupling matrix: frozen example and exact identities") {
  // beta = 1, P = 2: eigenvalues 2 -+ sqrt(4 + 4 pi^2).
  const auto cm = coupling_matrix(1.0, 2.0);
  const double s = std::sqrt(4.0 + 4.0 * pi * pi);
  CHECK(cm.lambda_minus == doctest::Approx(2.0 - s).epsilon(1e-12));
  CHECK(cm.lambda_plus == doctest::Approx(2.0 + s).epsilon(1e-12));
  CHECK(cm.lambda_minus == doctest::Approx(-4.59381661895123).epsilon(1e-10));
  CHECK(cm.lambda_plus == doctest::Approx(8.59381661895123).epsilon(1e-10));

  for (double beta : {-3.0, -0.5, 0.0, 0.7, 12.0}) {
    for (double P : {0.3, 2.0, 248.05}) {
      const auto m = coupling_matrix(beta, P);
      const double scale = std::max({1.0, P * P, 4 * pi * pi * beta * beta});
      // Trace 2P, determinant -4 pi^2 beta^2.
      CHECK(std::abs(m.matrix.trace() - 2 * P) <= 1e-12 * std::max(1.0, 2 * P));
      CHECK(std::abs(m.matrix.determinant() + 4 * pi * pi * beta * beta) <=
            1e-12 * scale);
      // Ordering and eigenvector residuals.
      CHECK(m.lambda_minus < m.lambda_plus);
      CHECK((m.matrix * m.a_minus - m.lambda_minus * m.a_minus).norm() <=
            1e-12 * std::max(1.0, std::abs(m.lambda_minus)));
      CHECK((m.matrix * m.a_plus - m.lambda_plus * m.a_plus).norm() <=
            1e-12 * std::max(1.0, m.lambda_plus));
      // Orthonormal basis.
      CHECK(std::abs(m.a_minus.norm() - 1.0) <= 1e-13);
      CHECK(std::abs(m.a_plus.norm() - 1.0) <= 1e-13);
      CHECK(std::abs(m.a_minus.dot(m.a_plus)) <= 1e-13);
      // Eigenvalues are even in beta.
      const auto r = coupling_matrix(-beta, P);
      CHECK(r.lambda_minus == doctest::Approx(m.lambda_minus).epsilon(1e-14));
      CHECK(r.lambda_plus == doctest::Approx(m.lambda_plus).epsilon(1e-14));
    }
  }
}

TEST_CASE("predicted eigenvalue pair and validity windows") {
  const double M1 = 2 * pi * pi, P = 8 * pi * pi * pi;
  const double h = 0.2, h3 = 0.008;

  const auto at0 = predict_eigenvalues(h, 0.0, M1, P);
  CHECK(at0.lambda_minus == doctest::Approx(M1 + pi * pi).epsilon(1e-13));
  CHECK(at0.lambda_plus == doctest::Approx(M1 + pi * pi + 2 * P * h3).epsilon(1e-13));
  CHECK(at0.within_beta_window);
  CHECK(at0.within_h0);

  // |beta| <= beta0 h^{-5/4} with beta0 = 1/2: boundary at ~3.7384.
  CHECK(predict_eigenvalues(h, 3.7, M1, P).within_beta_window);
  CHECK(!predict_eigenvalues(h, 3.8, M1, P).within_beta_window);
  CHECK(!predict_eigenvalues(0.35, 0.0, M1, P).within_h0);
  CHECK_THROWS_AS(predict_eigenvalues(0.0, 0.0, M1, P), ConfigError);

  const double beta = 1.7;
  const auto at = predict_eigenvalues(h, beta, M1, P);
  const double s = std::sqrt(P * P + 4 * pi * pi * beta * beta);
  CHECK(at.lambda_minus == doctest::Approx(M1 + pi * pi + h3 * (P - s)).epsilon(1e-13));
  CHECK(at.lambda_plus == doctest::Approx(M1 + pi * pi + h3 * (P + s)).epsilon(1e-13));
}

TEST_CASE("gap prediction with certification margin") {
  const double M1 = 2 * pi * pi, P = 8 * pi * pi * pi, h = 0.2;
  const double center = M1 + pi * pi;

  const auto g = predict_gap(h, M1, P, 0.0);
  CHECK(g.lower == doctest::Approx(center).epsilon(1e-13));
  CHECK(g.upper == doctest::Approx(center + 2 * P * 0.008).epsilon(1e-13));
  CHECK(g.length == doctest::Approx(2 * P * 0.008).epsilon(1e-13));
  CHECK(g.certified_nonempty);

  // A certification constant shrinks the certified window by C h^{7/2}.
  const double C = 100.0;
  const auto gc = predict_gap(h, M1, P, C);
  const double margin = C * std::pow(h, 3.5);
  CHECK(gc.certified_lower == doctest::Approx(center + margin).epsilon(1e-12));
  CHECK(gc.certified_upper ==
        doctest::Approx(center + 2 * P * 0.008 - margin).epsilon(1e-12));
  CHECK(gc.certified_nonempty);

  // A huge constant swallows the window entirely.
  const auto gbad = predict_gap(h, M1, P, 1e4);
  CHECK(!gbad.certified_nonempty);

  // Admissibility: M2 too close to M1 + pi^2 buries the gap.
  CHECK_THROWS_AS(predict_gap(h, M1, P, 0.0, std::optional<double>(28.0)),
                  ConfigError);
  CHECK_NOTHROW(predict_gap(h, M1, P, 0.0, std::optional<double>(5 * pi * pi)));
}

TEST_CASE("simple point correction is the polarization itself") {
  CHECK(simple_point_correction(3.7) == doctest::Approx(3.7).epsilon(1e-15));
}

TEST_CASE("composed prediction is self-consistent") {
  const double M1 = 2 * pi * pi, P_theta = 2 * pi, dn = -2 * pi, h = 0.2;
  const auto p = make_prediction(M1, P_theta, dn, h, 0.5, 0.0,
                                 std::optional<double>(5 * pi * pi));
  CHECK(p.P == doctest::Approx(P_theta * dn * dn).epsilon(1e-14));
  CHECK(p.M1 == M1);
  CHECK(p.h == h);
  CHECK(p.gap.length == doctest::Approx(2 * p.P * h * h * h).epsilon(1e-13));
  CHECK(p.beta_window == doctest::Approx(0.5 * std::pow(h, -1.25)).epsilon(1e-13));
}

}  // TEST_SUITE
