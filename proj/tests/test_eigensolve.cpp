#include <doctest.h>

#include <cmath>

#include "wgband/eigensolve.hpp"
#include "wgband/geometry.hpp"

using namespace wgband;

TEST_SUITE("eigensolve") {

TEST_CASE("unit square Dirichlet spectrum with multiplicity") {
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 16);
  const auto pencil = assemble(mesh);
  EigenOptions opts;
  opts.k = 5;
  opts.tol = 1e-9;
  const auto r = solve_lowest(pencil, opts);
  REQUIRE(r.values.size() == 5);

  // pi^2 (m^2 + n^2): upper bounds from a conforming space, within a few
  // percent at this resolution.
  const double exact[5] = {2 * pi * pi, 5 * pi * pi, 5 * pi * pi, 8 * pi * pi,
                           10 * pi * pi};
  for (int i = 0; i < 5; ++i) {
    CHECK(r.values[i] >= exact[i] * (1.0 - 1e-10));  // variational upper bound
    CHECK(r.values[i] <= exact[i] * 1.04);
  }
  for (int i = 1; i < 5; ++i) CHECK(r.values[i] >= r.values[i - 1]);
  // The (1,2)/(2,1) pair is exactly degenerate on the symmetric grid.
  CHECK(std::abs(r.values[1] - r.values[2]) <= 1e-6 * r.values[1]);
  for (int i = 0; i < 5; ++i) CHECK(r.residuals[i] <= opts.tol);
}

TEST_CASE("returned block is M-orthonormal") {
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 12);
  const auto pencil = assemble(mesh);
  EigenOptions opts;
  opts.k = 4;
  const auto r = solve_lowest(pencil, opts);
  const auto M = pencil.free_M();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex g = r.vectors[i].adjoint() * (M * r.vectors[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-7);
    }
}

TEST_CASE("determinism and seed independence of the values") {
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 10);
  const auto pencil = assemble(mesh);
  EigenOptions opts;
  opts.k = 3;
  opts.tol = 1e-9;
  const auto a = solve_lowest(pencil, opts);
  const auto b = solve_lowest(pencil, opts);
  for (int i = 0; i < 3; ++i) CHECK(a.values[i] == b.values[i]);  // bitwise

  EigenOptions other = opts;
  other.seed = 987654321;
  const auto c = solve_lowest(pencil, other);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(a.values[i] - c.values[i]) <= 20 * opts.tol * a.values[i]);
}

TEST_CASE("complex quasi-periodic pencil: values, residuals, shift invariance") {
  const auto mesh = build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 6);
  const auto pencil = assemble(mesh, 0.8);
  REQUIRE(!pencil.real_valued);
  EigenOptions opts;
  opts.k = 3;
  opts.tol = 1e-8;
  const auto r = solve_lowest(pencil, opts);
  for (int i = 1; i < 3; ++i) CHECK(r.values[i] >= r.values[i - 1]);
  for (int i = 0; i < 3; ++i) CHECK(r.residuals[i] <= opts.tol);
  const auto M = pencil.free_M();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j <= i; ++j) {
      const Complex g = r.vectors[i].adjoint() * (M * r.vectors[j]);
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-6);
    }

  EigenOptions shifted = opts;
  shifted.sigma = 5.0;  // below the first eigenvalue (~ 2 pi^2)
  const auto s = solve_lowest(pencil, shifted);
  for (int i = 0; i < 3; ++i)
    CHECK(std::abs(s.values[i] - r.values[i]) <= 100 * opts.tol * r.values[i]);
}

}  // TEST_SUITE
