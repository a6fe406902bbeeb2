#include "wgband/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wgband/eigensolve.hpp"
#include "wgband/fem.hpp"

namespace wgband {

namespace {

Eigen::Vector3d mesh_centroid(const Mesh& mesh) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : mesh.nodes) c += p;
  return c / static_cast<double>(mesh.node_count());
}

}  // namespace

CrossSectionSpectrum solve_cross_section(const Mesh& mesh, int count, double tol,
                                         std::uint64_t seed) {
  if (mesh.dim != 2) throw ConfigError("cross-section solve needs a 2D mesh");
  if (count < 2) throw ConfigError("cross-section solve needs at least 2 eigenpairs");

  auto pencil = assemble(mesh);
  EigenOptions eo;
  eo.k = count;
  eo.tol = tol;
  eo.seed = seed;
  auto eig = solve_lowest(pencil, eo);

  CrossSectionSpectrum s;
  s.M = eig.values;
  const Eigen::VectorXcd nodal = pencil.nodal_values(eig.vectors[0]);
  s.V1 = nodal.real();  // real pencil; imaginary parts are identically zero

  // Sign fix: positive at the free node nearest the centroid.
  const Eigen::Vector3d c = mesh_centroid(mesh);
  int best = -1;
  double best_d = std::numeric_limits<double>::max();
  for (int n = 0; n < mesh.node_count(); ++n) {
    if (pencil.constrained[pencil.node_dof[n]]) continue;
    const double d = (mesh.nodes[n] - c).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  if (best < 0) throw SolverError("cross-section mesh has no interior node");
  if (s.V1[best] < 0) s.V1 = -s.V1;

  if (!(s.M[1] - s.M[0] > 10 * tol))
    throw ConfigError(
        "cross-section first eigenvalue is numerically multiple; the "
        "perturbation theory needs a simple M1");
  s.gap_condition_ok = s.M[0] + pi * pi < s.M[1];
  s.T_threshold = pi / std::sqrt(s.M[1] - s.M[0]);
  return s;
}

double normal_derivative_at(const CrossSectionSpectrum& spectrum, const Mesh& mesh,
                            const Eigen::Vector2d& O) {
  if (mesh.dim != 2) throw ConfigError("normal derivative recovery needs a 2D mesh");
  if (spectrum.V1.size() != mesh.node_count())
    throw ConfigError("spectrum does not match the mesh");

  const double diam = mesh.diameter();
  const Eigen::Vector3d O3(O.x(), O.y(), 0.0);
  const int o_node = mesh.find_node(O3, 1e-9 * diam);
  if (o_node < 0)
    throw ConfigError("normal derivative point is not a mesh node");
  const auto boundary = mesh.nodes_with_tag({BoundaryTag::dirichlet});
  if (!std::binary_search(boundary.begin(), boundary.end(), o_node))
    throw ConfigError("normal derivative point is not on the Dirichlet boundary");

  // Inward direction: toward the centroid (exact for the supported shapes,
  // whose anchors sit at side/arc midpoints).
  Eigen::Vector3d inward = mesh_centroid(mesh) - O3;
  inward.z() = 0.0;
  inward.normalize();

  // Collect nodes on the inward ray through O.
  std::vector<std::pair<double, int>> line;  // (distance t > 0, node)
  for (int n = 0; n < mesh.node_count(); ++n) {
    const Eigen::Vector3d d = mesh.nodes[n] - O3;
    const double t = d.dot(inward);
    if (t <= 1e-12 * diam) continue;
    const double perp = (d - t * inward).norm();
    if (perp < 1e-9 * diam) line.emplace_back(t, n);
  }
  if (line.size() < 3)
    throw ConfigError("not enough mesh nodes on the normal line through O'");
  std::sort(line.begin(), line.end());

  // Degree-2 Lagrange fit through the 3 interior samples nearest the wall;
  // derivative of the interpolant at t = 0.
  double t[3], v[3];
  for (int i = 0; i < 3; ++i) {
    t[i] = line[i].first;
    v[i] = spectrum.V1[line[i].second];
  }
  double inward_slope = 0.0;  // p'(0) with L_i'(0) = -(t_j+t_k)/((t_i-t_j)(t_i-t_k))
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    inward_slope -= v[i] * (t[j] + t[k]) / ((t[i] - t[j]) * (t[i] - t[k]));
  }
  // The outward-normal derivative is the negative of the inward slope.
  return -inward_slope;
}

PeriodAdmissibility check_period_admissibility(const CrossSectionSpectrum& spectrum,
                                               double T) {
  if (T <= 0) throw ConfigError("period must be positive");
  PeriodAdmissibility r;
  r.threshold = pi / std::sqrt(spectrum.M[1] - spectrum.M[0]);
  r.ok = T > r.threshold;
  return r;
}

}  // namespace wgband
