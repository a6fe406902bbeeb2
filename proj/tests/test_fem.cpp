#include <doctest.h>

#include <cmath>

#include "wgband/fem.hpp"
#include "wgband/geometry.hpp"

using namespace wgband;

namespace {

Eigen::VectorXd nodal_field(const Mesh& mesh, double (*f)(const Eigen::Vector3d&)) {
  Eigen::VectorXd u(mesh.node_count());
  for (int i = 0; i < mesh.node_count(); ++i) u[i] = f(mesh.nodes[i]);
  return u;
}

double sum_all(const Eigen::SparseMatrix<Complex>& A) {
  double s = 0;
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<Complex>::InnerIterator it(A, k); it; ++it)
      s += it.value().real();
  return s;
}

}  // namespace

TEST_SUITE("fem_core") {

TEST_CASE("mass totals the volume; stiffness annihilates constants") {
  const auto m2 = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 5);
  const auto p2 = assemble(m2);
  CHECK(sum_all(p2.M) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sum_all(p2.K) == doctest::Approx(0.0).epsilon(1e-10));

  const auto m3 = build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 4);
  const auto p3 = assemble(m3);
  CHECK(sum_all(p3.M) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sum_all(p3.K) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("energy of linear fields is exact") {
  const auto mesh = build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 4);
  const auto pencil = assemble(mesh);
  const auto ux = nodal_field(mesh, [](const Eigen::Vector3d& p) { return p.x(); });
  const auto uz = nodal_field(mesh, [](const Eigen::Vector3d& p) { return p.z(); });
  CHECK(dirichlet_energy(pencil, ux) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dirichlet_energy(pencil, uz) == doctest::Approx(1.0).epsilon(1e-12));
  const auto uxy = nodal_field(mesh, [](const Eigen::Vector3d& p) {
    return 2.0 * p.x() - 3.0 * p.y() + 0.5 * p.z();
  });
  CHECK(dirichlet_energy(pencil, uxy) ==
        doctest::Approx(4.0 + 9.0 + 0.25).epsilon(1e-12));
}

TEST_CASE("dirichlet_solve reproduces a bilinear harmonic exactly") {
  // u = xy is harmonic and lies in the Q1 space: the discrete solution with
  // boundary data g = xy must be xy at every node.
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 6);
  const auto pencil = assemble(mesh);
  const auto exact = nodal_field(mesh, [](const Eigen::Vector3d& p) {
    return p.x() * p.y();
  });
  const auto u = dirichlet_solve(pencil, exact);
  CHECK((u - exact).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(dirichlet_energy(pencil, u) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));  // int |grad(xy)|^2 over square
}

TEST_CASE("quasi-periodic pencil: phases, Hermiticity, real snap") {
  const auto mesh = build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 4);

  const auto generic = assemble(mesh, 1.0);
  CHECK(generic.quasi_periodic);
  CHECK(!generic.real_valued);
  // Slave nodes share the master dof with phase e^{i eta}.
  int slaves = 0;
  for (int i = 0; i < generic.dof_count(); ++i) CHECK(generic.node_phase.size() > 0);
  for (std::size_t i = 0; i < mesh.periodic_pairs.size(); ++i) {
    auto [lo, hi] = mesh.periodic_pairs[i];
    CHECK(generic.node_dof[hi] == generic.node_dof[lo]);
    CHECK(std::abs(generic.node_phase[hi] - std::polar(1.0, 1.0)) < 1e-14);
    ++slaves;
  }
  CHECK(slaves == 25);
  // Exact Hermiticity of both matrices.
  CHECK((Eigen::MatrixXcd(generic.K) - Eigen::MatrixXcd(generic.K).adjoint()).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK((Eigen::MatrixXcd(generic.M) - Eigen::MatrixXcd(generic.M).adjoint()).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));

  const auto at_pi = assemble(mesh, pi);
  CHECK(at_pi.real_valued);  // phase snaps to -1
  for (auto [lo, hi] : mesh.periodic_pairs)
    CHECK(std::abs(at_pi.node_phase[hi] - Complex(-1.0, 0.0)) < 1e-12);
  const auto at_zero = assemble(mesh, 0.0);
  CHECK(at_zero.real_valued);

  // Dof merging removes exactly one dof per periodic pair.
  const auto free = assemble(mesh);
  CHECK(free.dof_count() == mesh.node_count());
  CHECK(generic.dof_count() == mesh.node_count() - 25);
}

TEST_CASE("eta on a 2D mesh is a config error") {
  const auto mesh = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 4);
  CHECK_THROWS_AS(assemble(mesh, 0.5), ConfigError);
}

TEST_CASE("releasing cavern constraints frees the cavern nodes") {
  const auto cavern = CavernSpec::hemisphere(1.0, 0.25);
  const auto mesh = build_cell_mesh(CrossSectionShape::rectangle(1, 1), cavern, 1, 8);

  AssemblyOptions constrained;
  constrained.constrain_cavern = true;
  AssemblyOptions released;
  released.constrain_cavern = false;
  const auto pc = assemble(mesh, pi, constrained);
  const auto pr = assemble(mesh, pi, released);
  CHECK(pc.dof_count() == pr.dof_count());
  CHECK(pr.free_count() > pc.free_count());

  const auto cavern_nodes = mesh.nodes_with_tag({BoundaryTag::cavern});
  const auto wall_nodes = mesh.nodes_with_tag({BoundaryTag::dirichlet});
  for (int id : cavern_nodes) {
    // Constrained in the carved problem; free in the released one unless the
    // node also touches the outer wall (the cavern rim).
    CHECK(pc.constrained[pc.node_dof[id]]);
    const bool on_wall = std::binary_search(wall_nodes.begin(), wall_nodes.end(), id);
    if (!on_wall) CHECK(!pr.constrained[pr.node_dof[id]]);
  }
}

}  // TEST_SUITE
