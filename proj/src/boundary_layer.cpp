#include "wgband/boundary_layer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wgband/detail/element.hpp"
#include "wgband/fem.hpp"

namespace wgband {

ExteriorField solve_exterior(const HalfspaceMesh& halfspace, const CavernSpec& cavern) {
  const Mesh& mesh = halfspace.mesh;
  if (mesh.dim != 3) throw ConfigError("exterior solve needs a 3D mesh");
  bool has_truncation = false;
  for (const auto& f : mesh.facets)
    if (f.tag == BoundaryTag::truncation) has_truncation = true;
  if (!has_truncation)
    throw ConfigError("exterior solve needs a truncated mesh (no truncation facets)");

  // Boundary data: g = -xi1 on the cavern surface, 0 elsewhere. A node on the
  // cavern rim (xi1 = 0) gets 0 either way, so the order is immaterial.
  Eigen::VectorXd g = Eigen::VectorXd::Zero(mesh.node_count());
  const double scale = std::max(cavern.R_ref(), 1e-12);
  for (const auto& f : mesh.facets) {
    if (f.tag != BoundaryTag::cavern) continue;
    for (int a = 0; a < 4; ++a) {
      const int n = f.n[a];
      if (n < 0) continue;
      const Eigen::Vector3d& p = mesh.nodes[n];
      const double r = p.norm();
      if (r > 1e-12 * scale) {
        // theta is mirror-symmetric in xi1, so folding the direction into the
        // material half-space covers mirrored meshes as well.
        Eigen::Vector3d dir = p / r;
        dir.x() = -std::abs(dir.x());
        const double rb = cavern.radial(dir);
        if (std::abs(r - rb) > 1e-6 * scale)
          throw ConfigError("cavern-tagged node is not on the cavern boundary");
      }
      g[n] = -p.x();
    }
  }

  auto pencil = assemble(mesh);
  ExteriorField field;
  field.W = dirichlet_solve(pencil, g);
  field.energy = dirichlet_energy(pencil, field.W);
  return field;
}

namespace {

// 2x2 Gauss integrals over one bilinear facet on a shell of radius R:
// accumulates the raw moment integral of W * xi1 / R dS and the weight
// integral of (xi1 / R)^2 dS used to normalize away surface faceting.
void facet_moment(const Mesh& mesh, const Eigen::VectorXd& W,
                  const std::array<int, 4>& f, double R, double& num, double& den) {
  Eigen::Vector3d p[4];
  double w[4];
  for (int a = 0; a < 4; ++a) {
    p[a] = mesh.nodes[f[a]];
    w[a] = W[f[a]];
  }
  for (int gu = 0; gu < 2; ++gu) {
    for (int gv = 0; gv < 2; ++gv) {
      const double u = detail::gauss2[gu], v = detail::gauss2[gv];
      double N[4], dNu[4], dNv[4];
      for (int a = 0; a < 4; ++a) {
        const double su = detail::quad_sign[a][0], sv = detail::quad_sign[a][1];
        N[a] = 0.25 * (1 + su * u) * (1 + sv * v);
        dNu[a] = 0.25 * su * (1 + sv * v);
        dNv[a] = 0.25 * sv * (1 + su * u);
      }
      Eigen::Vector3d x = Eigen::Vector3d::Zero(), tu = Eigen::Vector3d::Zero(),
                      tv = Eigen::Vector3d::Zero();
      double wg = 0.0;
      for (int a = 0; a < 4; ++a) {
        x += N[a] * p[a];
        tu += dNu[a] * p[a];
        tv += dNv[a] * p[a];
        wg += N[a] * w[a];
      }
      const double dS = tu.cross(tv).norm();
      num += wg * (x.x() / R) * dS;
      den += (x.x() / R) * (x.x() / R) * dS;
    }
  }
}

}  // namespace

PolarizationResult extract_polarization(const ExteriorField& field,
                                        const HalfspaceMesh& halfspace,
                                        const std::vector<double>& fit_radii) {
  const auto& radii = halfspace.layer_radii;
  if (radii.size() < 2)
    throw ConfigError("half-space mesh records fewer than 2 shell layers");
  if (fit_radii.size() < 2)
    throw ConfigError("polarization extraction needs at least 2 fit radii");
  if (field.W.size() != halfspace.mesh.node_count())
    throw ConfigError("field does not match the half-space mesh");

  // Recorded layers are the exactly-spherical shells; the outermost is the
  // truncation shell, which is excluded from fitting (every fit radius must
  // sit at least one layer inside it).
  const double r_lo = radii.front();
  const double r_hi = radii[radii.size() - 2];
  PolarizationResult result;
  result.truncation_radius = radii.back();

  std::set<int> layers;
  for (double R : fit_radii) {
    if (!(R >= r_lo - 1e-9 && R <= r_hi + 1e-9))
      throw ConfigError("fit radius " + std::to_string(R) +
                        " is outside the recorded layer range");
    int best = 0;
    for (int i = 0; i + 1 < static_cast<int>(radii.size()); ++i)
      if (std::abs(radii[i] - R) < std::abs(radii[best] - R)) best = i;
    layers.insert(best);
  }
  if (layers.size() < 2)
    throw ConfigError("fit radii collapse onto fewer than 2 distinct shell layers");

  for (int li : layers) {
    const double R = radii[li];
    double num = 0.0, den = 0.0;
    for (const auto& f : halfspace.layer_shells[li])
      facet_moment(halfspace.mesh, field.W, f, R, num, den);
    if (!(den > 0))
      throw ConfigError("shell layer nearest R = " + std::to_string(R) +
                        " has no recorded facets");
    // Normalizing by the discrete weight integral makes M_R exact on pure
    // dipole fields regardless of surface faceting; the hemisphere weight is
    // 2 pi R^2 / 3, and the num/den ratio is insensitive to whether the
    // recorded shell covers the half or the mirrored full sphere.
    const double M = (2 * pi * R * R / 3) * (num / den);
    result.moment_samples.emplace_back(R, M);
    result.fit_radii.push_back(R);
  }

  // P(R) = -3 M_R, extrapolated linearly in 1/R.
  const int n = static_cast<int>(result.moment_samples.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = 1.0;
    A(i, 1) = 1.0 / result.moment_samples[i].first;
    b[i] = -3.0 * result.moment_samples[i].second;
  }
  const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  result.P_theta = c[0];
  result.extrapolated = true;
  result.fit_residual = std::sqrt((A * c - b).squaredNorm() / n);
  if (!(result.P_theta > 0))
    throw VerificationError(
        "extracted polarization is not positive; the exterior solve or the "
        "moment quadrature is unreliable at this resolution");
  return result;
}

HalfspaceMesh mirror_halfspace_mesh(const HalfspaceMesh& halfspace) {
  const Mesh& src = halfspace.mesh;
  const double tol = 1e-9 * std::max(1.0, src.diameter());

  HalfspaceMesh out;
  Mesh& dst = out.mesh;
  dst.dim = 3;
  dst.period = src.period;
  dst.nodes = src.nodes;

  // Wall nodes (xi1 = 0) are shared between the two halves.
  std::vector<int> image(src.node_count());
  for (int n = 0; n < src.node_count(); ++n) {
    const Eigen::Vector3d& p = src.nodes[n];
    if (std::abs(p.x()) <= tol) {
      image[n] = n;
    } else {
      image[n] = dst.node_count();
      dst.nodes.emplace_back(-p.x(), p.y(), p.z());
    }
  }

  // Mirrored hexes: reflecting flips orientation; composing with the
  // reference-cube mirror (swap 0<->1, 3<->2, 4<->5, 7<->6) restores it.
  dst.hexes = src.hexes;
  for (const auto& h : src.hexes)
    dst.hexes.push_back({image[h[1]], image[h[0]], image[h[3]], image[h[2]],
                         image[h[5]], image[h[4]], image[h[7]], image[h[6]]});

  // Wall facets become interior; everything else gains a mirror copy.
  for (const auto& f : src.facets) {
    if (f.tag == BoundaryTag::dirichlet) continue;
    dst.facets.push_back(f);
    Facet m = f;
    for (int a = 0; a < 4; ++a)
      if (m.n[a] >= 0) m.n[a] = image[m.n[a]];
    dst.facets.push_back(m);
  }

  out.layer_radii = halfspace.layer_radii;
  out.layer_shells.resize(halfspace.layer_shells.size());
  for (std::size_t li = 0; li < halfspace.layer_shells.size(); ++li) {
    for (const auto& f : halfspace.layer_shells[li]) {
      out.layer_shells[li].push_back(f);
      out.layer_shells[li].push_back(
          {image[f[0]], image[f[1]], image[f[2]], image[f[3]]});
    }
  }

  dst.validate();
  return out;
}

}  // namespace wgband
