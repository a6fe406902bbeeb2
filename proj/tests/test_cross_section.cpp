#include <doctest.h>

#include <cmath>

#include "wgband/cross_section.hpp"
#include "wgband/fem.hpp"

using namespace wgband;

TEST_SUITE("cross_section") {

TEST_CASE("unit square: eigenvalues, ground state, normal derivative") {
  const auto shape = CrossSectionShape::rectangle(1, 1);
  const auto mesh = build_cross_section_mesh(shape, 32);
  const auto s = solve_cross_section(mesh, 4, 1e-9);

  CHECK(rel_err(s.M[0], 2 * pi * pi) < 2e-3);
  CHECK(rel_err(s.M[1], 5 * pi * pi) < 5e-3);
  CHECK(s.gap_condition_ok);  // 2 pi^2 + pi^2 < 5 pi^2
  CHECK(s.T_threshold == doctest::Approx(pi / std::sqrt(s.M[1] - s.M[0])).epsilon(1e-12));

  // Ground state: positive inside, L2-normalized against the mass matrix.
  double vmax = 0;
  for (int i = 0; i < s.V1.size(); ++i) vmax = std::max(vmax, std::abs(s.V1[i]));
  for (int i = 0; i < s.V1.size(); ++i) CHECK(s.V1[i] > -1e-9 * vmax);
  const auto pencil = assemble(mesh);
  Eigen::VectorXcd v = s.V1.cast<Complex>();
  const Complex norm2 = v.adjoint() * (Eigen::MatrixXcd(pencil.M) * v);
  CHECK(norm2.real() == doctest::Approx(1.0).epsilon(1e-8));
  // Peak value of 2 sin(pi x) sin(pi y) is 2 at the center.
  CHECK(vmax == doctest::Approx(2.0).epsilon(5e-3));

  const double dn = normal_derivative_at(s, mesh, shape.anchor());
  CHECK(dn < 0.0);
  CHECK(rel_err(dn, -2 * pi) < 0.03);
}

TEST_CASE("rectangle 1 x 2 violates the gap condition") {
  const auto shape = CrossSectionShape::rectangle(1, 2);
  const auto mesh = build_cross_section_mesh(shape, 24);
  const auto s = solve_cross_section(mesh, 2);
  CHECK(rel_err(s.M[0], 1.25 * pi * pi) < 5e-3);
  CHECK(rel_err(s.M[1], 2.0 * pi * pi) < 5e-3);
  CHECK(!s.gap_condition_ok);  // M1 + pi^2 = 2.25 pi^2 > 2 pi^2 = M2

  // Period admissibility: threshold pi / sqrt(M2 - M1) = 2/sqrt(3).
  const auto adm = check_period_admissibility(s, 1.0);
  CHECK(adm.threshold == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(2e-2));
  CHECK(!adm.ok);
  CHECK(check_period_admissibility(s, 1.2).ok);
  CHECK_THROWS_AS(check_period_admissibility(s, 0.0), ConfigError);
}

TEST_CASE("unit square period admissibility at T = 1") {
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 16);
  const auto s = solve_cross_section(mesh, 2);
  // threshold = pi / sqrt(3 pi^2) = 1/sqrt(3) < 1.
  const auto adm = check_period_admissibility(s, 1.0);
  CHECK(adm.ok);
  CHECK(adm.threshold == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(2e-2));
}

TEST_CASE("disk: ground eigenvalue and boundary slope") {
  const auto shape = CrossSectionShape::disk(1.0);
  const auto mesh = build_cross_section_mesh(shape, 32);
  const auto s = solve_cross_section(mesh, 2);
  const double j01 = 2.404825557695773;
  CHECK(rel_err(s.M[0], j01 * j01) < 5e-3);

  // V1 = J0(j01 r) / (sqrt(pi) J1(j01)); outward slope at r=1 is
  // -j01/sqrt(pi).
  const double dn = normal_derivative_at(s, mesh, shape.anchor());
  CHECK(dn < 0.0);
  CHECK(rel_err(dn, -j01 / std::sqrt(pi)) < 0.05);
}

TEST_CASE("input validation") {
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 8);
  CHECK_THROWS_AS(solve_cross_section(mesh, 1), ConfigError);  // need >= 2
  const auto cell = build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 4);
  CHECK_THROWS_AS(solve_cross_section(cell, 2), ConfigError);  // 2D only

  const auto s = solve_cross_section(mesh, 2);
  // Probe point must be a Dirichlet boundary node.
  CHECK_THROWS_AS(normal_derivative_at(s, mesh, {0.5, 0.5}), ConfigError);
  CHECK_THROWS_AS(normal_derivative_at(s, mesh, {0.123456, 0.0}), ConfigError);
}

}  // TEST_SUITE
