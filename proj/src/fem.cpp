#include "wgband/fem.hpp"

#include <cmath>
#include <vector>

#include <Eigen/SparseCholesky>

#include "wgband/detail/element.hpp"

namespace wgband {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// 8x8 stiffness/mass of one trilinear hex, 2x2x2 Gauss. The loops keep a
// fixed summation order so A[a][b] and A[b][a] come out bitwise equal.
void hex_matrices(const Mesh& mesh, const std::array<int, 8>& el, double A[8][8],
                  double B[8][8]) {
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) A[a][b] = B[a][b] = 0.0;
  using detail::gauss2;
  for (int gx = 0; gx < 2; ++gx)
    for (int gy = 0; gy < 2; ++gy)
      for (int gz = 0; gz < 2; ++gz) {
        double dN[8][3];
        detail::hex_dshape(gauss2[gx], gauss2[gy], gauss2[gz], dN);
        const auto N = detail::hex_shape(gauss2[gx], gauss2[gy], gauss2[gz]);
        Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
        for (int a = 0; a < 8; ++a) {
          const Eigen::Vector3d& p = mesh.nodes[el[a]];
          for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) J(r, c) += dN[a][r] * p[c];
        }
        const double det = J.determinant();
        const Eigen::Matrix3d Jinv = J.inverse();
        double g[8][3];
        for (int a = 0; a < 8; ++a)
          for (int c = 0; c < 3; ++c)
            g[a][c] = Jinv(c, 0) * dN[a][0] + Jinv(c, 1) * dN[a][1] +
                      Jinv(c, 2) * dN[a][2];
        for (int a = 0; a < 8; ++a)
          for (int b = 0; b < 8; ++b) {
            A[a][b] += det * (g[a][0] * g[b][0] + g[a][1] * g[b][1] +
                              g[a][2] * g[b][2]);
            B[a][b] += det * (N[a] * N[b]);
          }
      }
}

void quad_matrices(const Mesh& mesh, const std::array<int, 4>& el, double A[4][4],
                   double B[4][4]) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) A[a][b] = B[a][b] = 0.0;
  using detail::gauss2;
  for (int gx = 0; gx < 2; ++gx)
    for (int gy = 0; gy < 2; ++gy) {
      double dN[4][2];
      detail::quad_dshape(gauss2[gx], gauss2[gy], dN);
      const auto N = detail::quad_shape(gauss2[gx], gauss2[gy]);
      Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
      for (int a = 0; a < 4; ++a) {
        const Eigen::Vector3d& p = mesh.nodes[el[a]];
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) J(r, c) += dN[a][r] * p[c];
      }
      const double det = J.determinant();
      const Eigen::Matrix2d Jinv = J.inverse();
      double g[4][2];
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 2; ++c)
          g[a][c] = Jinv(c, 0) * dN[a][0] + Jinv(c, 1) * dN[a][1];
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          A[a][b] += det * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
          B[a][b] += det * (N[a] * N[b]);
        }
    }
}

// Scatter the element pair (a <= b) Hermitian-exactly: the mirror entry is
// pushed as the bitwise conjugate.
template <int N>
void scatter(const double A[N][N], const double B[N][N], const int* el,
             const std::vector<int>& node_dof, const std::vector<Complex>& phase,
             std::vector<Triplet>& tk, std::vector<Triplet>& tm) {
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) {
      const int i = node_dof[el[a]];
      const int j = node_dof[el[b]];
      const Complex w = std::conj(phase[el[a]]) * phase[el[b]];
      const Complex ka = w * A[a][b];
      const Complex mb = w * B[a][b];
      tk.emplace_back(i, j, ka);
      tm.emplace_back(i, j, mb);
      if (a != b) {
        tk.emplace_back(j, i, std::conj(ka));
        tm.emplace_back(j, i, std::conj(mb));
      }
    }
}

}  // namespace

HermitianPencil::SpMatC HermitianPencil::restrict_free(const SpMatC& A) const {
  std::vector<Triplet> t;
  t.reserve(A.nonZeros());
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMatC::InnerIterator it(A, k); it; ++it) {
      const int i = free_index[it.row()];
      const int j = free_index[it.col()];
      if (i >= 0 && j >= 0) t.emplace_back(i, j, it.value());
    }
  SpMatC R(free_count(), free_count());
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

HermitianPencil::SpMatR HermitianPencil::restrict_free_real(const SpMatC& A) const {
  if (!real_valued)
    throw SolverError("real restriction requested for a complex-phase pencil");
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(A.nonZeros());
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMatC::InnerIterator it(A, k); it; ++it) {
      const int i = free_index[it.row()];
      const int j = free_index[it.col()];
      if (i >= 0 && j >= 0) t.emplace_back(i, j, it.value().real());
    }
  SpMatR R(free_count(), free_count());
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

Eigen::VectorXcd HermitianPencil::nodal_values(const Eigen::VectorXcd& free_vec) const {
  if (free_vec.size() != free_count())
    throw SolverError("free-dof vector has the wrong size");
  Eigen::VectorXcd out(node_dof.size());
  for (std::size_t n = 0; n < node_dof.size(); ++n) {
    const int f = free_index[node_dof[n]];
    out[n] = f >= 0 ? node_phase[n] * free_vec[f] : Complex(0.0);
  }
  return out;
}

HermitianPencil assemble(const Mesh& mesh, std::optional<double> eta,
                         const AssemblyOptions& opts) {
  HermitianPencil p;
  const int n_nodes = mesh.node_count();
  p.node_dof.assign(n_nodes, -1);
  p.node_phase.assign(n_nodes, Complex(1.0));

  if (eta) {
    if (mesh.dim != 3)
      throw ConfigError("Floquet parameter requires a 3D periodicity-cell mesh");
    if (mesh.periodic_pairs.empty())
      throw ConfigError("Floquet parameter requires a mesh with a periodic pairing");
    p.eta = *eta;
    p.quasi_periodic = true;

    // Snap the phase to +-1 when eta is (numerically) a multiple of pi; the
    // pencil is then real and the conjugation symmetry K(2 pi - eta) =
    // conj(K(eta)) is exact at the band-edge point eta = pi.
    const double k = std::round(*eta / pi);
    Complex jump;
    if (std::abs(*eta - k * pi) < 1e-12) {
      jump = Complex(std::llround(k) % 2 == 0 ? 1.0 : -1.0, 0.0);
      p.real_valued = true;
    } else {
      jump = Complex(std::cos(*eta), std::sin(*eta));
      p.real_valued = false;
    }
    for (const auto& pr : mesh.periodic_pairs) {
      p.node_dof[pr.second] = -2;  // slave marker, resolved below
      p.node_phase[pr.second] = jump;
    }
  }

  int n_dofs = 0;
  for (int n = 0; n < n_nodes; ++n)
    if (p.node_dof[n] == -1) p.node_dof[n] = n_dofs++;
  if (eta)
    for (const auto& pr : mesh.periodic_pairs) p.node_dof[pr.second] = p.node_dof[pr.first];

  // Dirichlet flags. Truncation facets are always constrained; cavern facets
  // only while constrain_cavern holds.
  std::vector<char> node_fixed(n_nodes, 0);
  for (const auto& f : mesh.facets) {
    const bool fix = f.tag == BoundaryTag::dirichlet || f.tag == BoundaryTag::truncation ||
                     (f.tag == BoundaryTag::cavern && opts.constrain_cavern);
    if (!fix) continue;
    for (int c = 0; c < 4; ++c)
      if (f.n[c] >= 0) node_fixed[f.n[c]] = 1;
  }
  p.constrained.assign(n_dofs, 0);
  for (int n = 0; n < n_nodes; ++n)
    if (node_fixed[n]) p.constrained[p.node_dof[n]] = 1;

  p.free_index.assign(n_dofs, -1);
  for (int d = 0; d < n_dofs; ++d)
    if (!p.constrained[d]) {
      p.free_index[d] = static_cast<int>(p.free_dofs.size());
      p.free_dofs.push_back(d);
    }

  std::vector<Triplet> tk, tm;
  if (mesh.dim == 3) {
    tk.reserve(mesh.hexes.size() * 72);
    tm.reserve(mesh.hexes.size() * 72);
    double A[8][8], B[8][8];
    for (const auto& el : mesh.hexes) {
      hex_matrices(mesh, el, A, B);
      scatter<8>(A, B, el.data(), p.node_dof, p.node_phase, tk, tm);
    }
  } else {
    tk.reserve(mesh.quads.size() * 20);
    tm.reserve(mesh.quads.size() * 20);
    double A[4][4], B[4][4];
    for (const auto& el : mesh.quads) {
      quad_matrices(mesh, el, A, B);
      scatter<4>(A, B, el.data(), p.node_dof, p.node_phase, tk, tm);
    }
  }
  p.K.resize(n_dofs, n_dofs);
  p.M.resize(n_dofs, n_dofs);
  p.K.setFromTriplets(tk.begin(), tk.end());
  p.M.setFromTriplets(tm.begin(), tm.end());
  return p;
}

Eigen::VectorXd dirichlet_solve(const HermitianPencil& pencil,
                                const Eigen::VectorXd& boundary_values) {
  if (pencil.quasi_periodic)
    throw ConfigError("dirichlet_solve needs a plain (non-Floquet) pencil");
  const int n = pencil.dof_count();
  if (boundary_values.size() != n)
    throw ConfigError("boundary data size does not match the mesh");

  const int nf = pencil.free_count();
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(pencil.K.nonZeros());
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int k = 0; k < pencil.K.outerSize(); ++k)
    for (HermitianPencil::SpMatC::InnerIterator it(pencil.K, k); it; ++it) {
      const int i = pencil.free_index[it.row()];
      const int j = pencil.free_index[it.col()];
      if (i < 0) continue;
      if (j >= 0)
        t.emplace_back(i, j, it.value().real());
      else
        rhs[i] -= it.value().real() * boundary_values[it.col()];
    }
  Eigen::SparseMatrix<double> Kff(nf, nf);
  Kff.setFromTriplets(t.begin(), t.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(Kff);
  if (ldlt.info() != Eigen::Success)
    throw SolverError("Dirichlet solve: factorization failed (numerical breakdown)");
  const Eigen::VectorXd x = ldlt.solve(rhs);

  Eigen::VectorXd out(n);
  for (int d = 0; d < n; ++d)
    out[d] = pencil.constrained[d] ? boundary_values[d] : x[pencil.free_index[d]];
  return out;
}

double dirichlet_energy(const HermitianPencil& pencil,
                        const Eigen::VectorXd& nodal_values) {
  if (pencil.quasi_periodic)
    throw ConfigError("dirichlet_energy needs a plain (non-Floquet) pencil");
  if (nodal_values.size() != pencil.dof_count())
    throw ConfigError("field size does not match the mesh");
  double e = 0.0;
  for (int k = 0; k < pencil.K.outerSize(); ++k)
    for (HermitianPencil::SpMatC::InnerIterator it(pencil.K, k); it; ++it)
      e += nodal_values[it.row()] * it.value().real() * nodal_values[it.col()];
  return e;
}

}  // namespace wgband
