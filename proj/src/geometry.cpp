#include "wgband/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "wgband/detail/element.hpp"

namespace wgband {

namespace {

int even_up(int n) { return n % 2 ? n + 1 : n; }

}  // namespace

// ---------------------------------------------------------------------------
// CrossSectionShape / CavernSpec

CrossSectionShape CrossSectionShape::rectangle(double a, double b) {
  if (!(a > 0) || !(b > 0)) throw GeometryError("rectangle sides must be positive");
  CrossSectionShape s;
  s.kind = ShapeKind::rectangle;
  s.a = a;
  s.b = b;
  return s;
}

CrossSectionShape CrossSectionShape::disk(double radius) {
  if (!(radius > 0)) throw GeometryError("disk radius must be positive");
  CrossSectionShape s;
  s.kind = ShapeKind::disk;
  s.radius = radius;
  return s;
}

Eigen::Vector2d CrossSectionShape::anchor() const {
  if (kind == ShapeKind::rectangle) return {a * 0.5, 0.0};
  return {radius, 0.0};
}

Eigen::Vector2d CrossSectionShape::anchor_inward_normal() const {
  if (kind == ShapeKind::rectangle) return {0.0, 1.0};
  return {-1.0, 0.0};
}

double CrossSectionShape::diameter() const {
  if (kind == ShapeKind::rectangle) return std::hypot(a, b);
  return 2 * radius;
}

CavernSpec CavernSpec::hemisphere(double rho, double h) {
  CavernSpec c;
  c.kind = CavernKind::hemisphere;
  c.rho = rho;
  c.h = h;
  c.validate();
  return c;
}

CavernSpec CavernSpec::box(const Eigen::Vector3d& half_extents, double h) {
  CavernSpec c;
  c.kind = CavernKind::box;
  c.half_extents = half_extents;
  c.h = h;
  c.validate();
  return c;
}

void CavernSpec::validate() const {
  if (!(h > 0)) throw GeometryError("cavern scale h must be positive");
  if (kind == CavernKind::hemisphere) {
    if (!(rho > 0)) throw GeometryError("hemisphere radius must be positive");
  } else {
    if (!(half_extents.minCoeff() > 0))
      throw GeometryError("box half-extents must be positive");
  }
}

double CavernSpec::R_ref() const {
  if (kind == CavernKind::hemisphere) return rho;
  return half_extents.norm();
}

double CavernSpec::radial(const Eigen::Vector3d& dir) const {
  if (kind == CavernKind::hemisphere) return rho;
  // Box (-b1, 0(depth)) x (-b2, b2) x (-b3, b3), star-shaped about the origin
  // on its xi1 = 0 face: first wall crossed along dir sets the radius.
  const double m = std::max({std::abs(dir.x()) / half_extents.x(),
                             std::abs(dir.y()) / half_extents.y(),
                             std::abs(dir.z()) / half_extents.z()});
  if (m <= 0) throw GeometryError("degenerate direction for box radial function");
  return 1.0 / m;
}

// ---------------------------------------------------------------------------
// Mesh

double Mesh::diameter() const {
  if (nodes.empty()) return 0;
  Eigen::Vector3d lo = nodes.front(), hi = nodes.front();
  for (const auto& p : nodes) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

namespace {

double hex_jacobian(const Mesh& mesh, const std::array<int, 8>& el, double x,
                    double y, double z) {
  double dN[8][3];
  detail::hex_dshape(x, y, z, dN);
  Eigen::Matrix3d J = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 8; ++a)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J(i, j) += dN[a][j] * mesh.nodes[el[a]][i];
  return J.determinant();
}

double quad_jacobian(const Mesh& mesh, const std::array<int, 4>& el, double x,
                     double y) {
  double dN[4][2];
  detail::quad_dshape(x, y, dN);
  Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) J(i, j) += dN[a][j] * mesh.nodes[el[a]][i];
  return J.determinant();
}

}  // namespace

double Mesh::volume() const {
  double vol = 0;
  if (dim == 2) {
    for (const auto& el : quads)
      for (double gx : detail::gauss2)
        for (double gy : detail::gauss2) vol += quad_jacobian(*this, el, gx, gy);
  } else {
    for (const auto& el : hexes)
      for (double gx : detail::gauss2)
        for (double gy : detail::gauss2)
          for (double gz : detail::gauss2)
            vol += hex_jacobian(*this, el, gx, gy, gz);
  }
  return vol;
}

void Mesh::validate() const {
  const int n = node_count();
  auto check_ids = [&](auto const& tuple, const char* what) {
    for (int id : tuple)
      if (id < -1 || id >= n)
        throw GeometryError(std::string("node index out of range in ") + what);
  };
  if (dim == 2) {
    for (size_t e = 0; e < quads.size(); ++e) {
      check_ids(quads[e], "quad");
      for (double gx : detail::gauss2)
        for (double gy : detail::gauss2)
          if (!(quad_jacobian(*this, quads[e], gx, gy) > 0))
            throw GeometryError("nonpositive Jacobian in quad " + std::to_string(e));
    }
  } else {
    for (size_t e = 0; e < hexes.size(); ++e) {
      check_ids(hexes[e], "hex");
      for (double gx : detail::gauss2)
        for (double gy : detail::gauss2)
          for (double gz : detail::gauss2)
            if (!(hex_jacobian(*this, hexes[e], gx, gy, gz) > 0))
              throw GeometryError("nonpositive Jacobian in hex " + std::to_string(e));
    }
  }
  for (const auto& f : facets) check_ids(f.n, "facet");

  // Periodic pairing: bijection, identical (x, y), z offset exactly one period.
  std::set<int> lo_seen, hi_seen;
  for (auto [lo, hi] : periodic_pairs) {
    if (lo < 0 || lo >= n || hi < 0 || hi >= n)
      throw GeometryError("periodic pair index out of range");
    if (!lo_seen.insert(lo).second || !hi_seen.insert(hi).second)
      throw GeometryError("periodic pairing is not a bijection");
    const Eigen::Vector3d &pl = nodes[lo], &ph = nodes[hi];
    if (pl.x() != ph.x() || pl.y() != ph.y())
      throw GeometryError("paired nodes differ in (x, y)");
    if (ph.z() - pl.z() != period)
      throw GeometryError("paired nodes must differ in z by exactly one period");
  }
}

std::vector<int> Mesh::nodes_with_tag(
    std::initializer_list<BoundaryTag> tags) const {
  std::vector<int> out;
  for (const auto& f : facets) {
    bool hit = false;
    for (BoundaryTag t : tags) hit = hit || f.tag == t;
    if (!hit) continue;
    for (int id : f.n)
      if (id >= 0) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int Mesh::find_node(const Eigen::Vector3d& p, double tol) const {
  int best = -1;
  double best_d = tol;
  for (int i = 0; i < node_count(); ++i) {
    const double d = (nodes[i] - p).norm();
    if (d <= best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// 2D cross-section meshes

namespace {

// Elliptic square->disk map: boundary of the square lands exactly on the
// circle; interior cells stay mildly distorted quads.
Eigen::Vector2d disk_map(double u, double v) {
  return {u * std::sqrt(1.0 - 0.5 * v * v), v * std::sqrt(1.0 - 0.5 * u * u)};
}

}  // namespace

Mesh build_cross_section_mesh(const CrossSectionShape& shape, int resolution) {
  if (resolution < 2)
    throw ConfigError("invalid resolution " + std::to_string(resolution) +
                      ": cross-section meshes need resolution >= 2");
  // Keep the boundary anchor O' on the grid: even cell counts only.
  const int n = even_up(resolution);
  Mesh mesh;
  mesh.dim = 2;
  const int stride = n + 1;
  auto idx = [&](int i, int j) { return j * stride + i; };
  mesh.nodes.reserve(stride * stride);

  if (shape.kind == ShapeKind::rectangle) {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i)
        mesh.nodes.emplace_back(shape.a * (double(i) / n), shape.b * (double(j) / n),
                                0.0);
  } else {
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const double u = 2.0 * i / n - 1.0, v = 2.0 * j / n - 1.0;
        const Eigen::Vector2d p = shape.radius * disk_map(u, v);
        mesh.nodes.emplace_back(p.x(), p.y(), 0.0);
      }
  }

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      mesh.quads.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)});

  for (int i = 0; i < n; ++i) {
    mesh.facets.push_back({{idx(i, 0), idx(i + 1, 0), -1, -1}, BoundaryTag::dirichlet});
    mesh.facets.push_back({{idx(i, n), idx(i + 1, n), -1, -1}, BoundaryTag::dirichlet});
    mesh.facets.push_back({{idx(0, i), idx(0, i + 1), -1, -1}, BoundaryTag::dirichlet});
    mesh.facets.push_back({{idx(n, i), idx(n, i + 1), -1, -1}, BoundaryTag::dirichlet});
  }
  mesh.validate();
  return mesh;
}

// ---------------------------------------------------------------------------
// Graded axis

namespace {

// One-sided offsets 0 = d_0 < d_1 < ... < d_m = extent with uniform spacing
// `fine` on [0, window], then geometric growth (ratio <= 1.6) capped at
// `coarse`, rescaled so the last node lands exactly on `extent`.
std::vector<double> axis_offsets(double extent, double window, double fine,
                                 double coarse) {
  std::vector<double> offs{0.0};
  if (extent <= 0) return offs;
  if (window + 0.5 * fine >= extent) {
    // Everything fine: uniform spacing as close to `fine` as fits exactly.
    const int m = std::max(1, (int)std::lround(extent / fine));
    for (int j = 1; j < m; ++j) offs.push_back(extent * (double(j) / m));
    offs.push_back(extent);
    return offs;
  }
  const int mw = std::max(1, (int)std::ceil(window / fine - 1e-9));
  for (int j = 1; j <= mw; ++j) offs.push_back(j * fine);
  const double rem = extent - offs.back();

  auto tail_sizes = [&](int count) {
    std::vector<double> s(count);
    double cur = fine;
    for (int j = 0; j < count; ++j) {
      cur = std::min(cur * 1.6, coarse);
      s[j] = cur;
    }
    return s;
  };
  // Pick the tail cell count whose uniform rescale stays closest to 1.
  int best_count = -1;
  double best_scale = 0;
  for (int count = 1; count < 4096; ++count) {
    const auto s = tail_sizes(count);
    double sum = 0;
    for (double v : s) sum += v;
    const double scale = rem / sum;
    if (best_count < 0 || std::abs(std::log(scale)) < std::abs(std::log(best_scale))) {
      best_count = count;
      best_scale = scale;
    }
    if (sum > rem && scale < 1) break;  // growing further only shrinks cells
  }
  auto s = tail_sizes(best_count);
  double acc = offs.back();
  for (int j = 0; j < best_count - 1; ++j) {
    acc += s[j] * best_scale;
    offs.push_back(acc);
  }
  offs.push_back(extent);
  return offs;
}

}  // namespace

std::vector<double> graded_axis(double center, double half_extent_lo,
                                double half_extent_hi, double fine_halfwidth,
                                double fine_spacing, double coarse_spacing) {
  const auto lo = axis_offsets(half_extent_lo, fine_halfwidth, fine_spacing,
                               coarse_spacing);
  const auto hi = (half_extent_lo == half_extent_hi)
                      ? lo
                      : axis_offsets(half_extent_hi, fine_halfwidth, fine_spacing,
                                     coarse_spacing);
  std::vector<double> coords;
  coords.reserve(lo.size() + hi.size() - 1);
  for (size_t j = lo.size(); j-- > 1;) coords.push_back(center - lo[j]);
  coords.push_back(center);
  for (size_t j = 1; j < hi.size(); ++j) coords.push_back(center + hi[j]);
  return coords;
}

// ---------------------------------------------------------------------------
// 3D cell meshes

namespace {

struct TensorGrid {
  std::vector<double> xs, ys, zs;
  int nx() const { return (int)xs.size() - 1; }
  int ny() const { return (int)ys.size() - 1; }
  int nz() const { return (int)zs.size() - 1; }
  int idx(int i, int j, int k) const {
    return (k * (int)ys.size() + j) * (int)xs.size() + i;
  }
};

// Boundary facets of a hex mesh found by face-count: classify and tag.
// classify(face nodes) returns the tag; throwing happens on unclassifiable
// faces so construction bugs surface immediately.
template <typename Classify>
void collect_boundary_facets(Mesh& mesh, Classify classify) {
  static constexpr int face_local[6][4] = {{0, 3, 2, 1}, {4, 5, 6, 7},
                                           {0, 1, 5, 4}, {2, 3, 7, 6},
                                           {1, 2, 6, 5}, {3, 0, 4, 7}};
  std::map<std::array<int, 4>, std::pair<std::array<int, 4>, int>> count;
  for (const auto& el : mesh.hexes)
    for (const auto& fl : face_local) {
      std::array<int, 4> f{el[fl[0]], el[fl[1]], el[fl[2]], el[fl[3]]};
      std::array<int, 4> key = f;
      std::sort(key.begin(), key.end());
      auto [it, inserted] = count.try_emplace(key, std::make_pair(f, 0));
      it->second.second += 1;
    }
  for (const auto& [key, val] : count)
    if (val.second == 1)
      mesh.facets.push_back({val.first, classify(val.first)});
}

}  // namespace

Mesh build_cell_mesh(const CrossSectionShape& shape,
                     const std::optional<CavernSpec>& cavern,
                     int refinement_levels, int base_resolution) {
  if (base_resolution < 2)
    throw ConfigError("invalid resolution " + std::to_string(base_resolution) +
                      ": cell meshes need base_resolution >= 2");
  if (refinement_levels < 0)
    throw ConfigError("refinement_levels must be nonnegative");
  const double T = 1.0;  // normalized period

  if (!cavern) {
    // Unperturbed cell: uniform tensor grid (rectangle) or extruded 2D mesh
    // (disk). z nodes are built symmetric about 0 so the periodic pairing is
    // exact by construction.
    std::vector<double> zs(base_resolution + 1);
    for (int k = 0; k <= base_resolution; ++k)
      zs[k] = T * (double(k) / base_resolution - 0.5);

    Mesh m2 = build_cross_section_mesh(shape, base_resolution);
    Mesh mesh;
    mesh.dim = 3;
    mesh.period = T;
    const int n2 = m2.node_count();
    const int layers = (int)zs.size();
    mesh.nodes.reserve(size_t(n2) * layers);
    for (int k = 0; k < layers; ++k)
      for (int i = 0; i < n2; ++i)
        mesh.nodes.emplace_back(m2.nodes[i].x(), m2.nodes[i].y(), zs[k]);
    for (int k = 0; k + 1 < layers; ++k)
      for (const auto& q : m2.quads)
        mesh.hexes.push_back({q[0] + k * n2, q[1] + k * n2, q[2] + k * n2,
                              q[3] + k * n2, q[0] + (k + 1) * n2, q[1] + (k + 1) * n2,
                              q[2] + (k + 1) * n2, q[3] + (k + 1) * n2});
    // Lateral walls from the 2D boundary edges; z faces periodic.
    for (int k = 0; k + 1 < layers; ++k)
      for (const auto& e : m2.facets)
        mesh.facets.push_back({{e.n[0] + k * n2, e.n[1] + k * n2,
                                e.n[1] + (k + 1) * n2, e.n[0] + (k + 1) * n2},
                               BoundaryTag::dirichlet});
    for (const auto& q : m2.quads) {
      mesh.facets.push_back({{q[0], q[3], q[2], q[1]}, BoundaryTag::periodic_lo});
      const int off = (layers - 1) * n2;
      mesh.facets.push_back(
          {{q[0] + off, q[1] + off, q[2] + off, q[3] + off}, BoundaryTag::periodic_hi});
    }
    for (int i = 0; i < n2; ++i)
      mesh.periodic_pairs.emplace_back(i, i + (layers - 1) * n2);
    mesh.validate();
    return mesh;
  }

  // Perturbed cell. Only the rectangle carries a cavern: the disk's mesh is
  // not tensor-aligned near the anchor, so carving there is unsupported.
  if (shape.kind != ShapeKind::rectangle)
    throw ConfigError(
        "cavern carving is implemented for the rectangle cross-section only");
  cavern->validate();

  const double a = shape.a, b = shape.b;
  const Eigen::Vector3d O(shape.anchor().x(), shape.anchor().y(), 0.0);
  const double r_out = cavern->h * cavern->R_ref();
  const double min_half = std::min({T / 2, a / 2, b});
  if (!(r_out < 0.98 * min_half))
    throw GeometryError(
        "cavern does not fit in the periodicity cell (scaled radius " +
        std::to_string(r_out) + " vs available " + std::to_string(min_half) + ")");

  const double a0 = 1.0 / base_resolution;
  const double af = a0 / double(1 << refinement_levels);

  // Collar geometry in units of the fine spacing: inner cube (index radius
  // c0i) maps onto the cavern surface, outer cube (ci) stays put.
  int c0i = std::max(2, (int)std::lround(r_out / af));
  int ci = c0i + std::max(3, (int)std::ceil(0.6 * c0i));
  const int ci_cap = (int)std::floor((min_half - 2.05 * af) / af);
  ci = std::min(ci, ci_cap);
  if (ci < c0i + 2) {
    // Tight fit: pull the inner cube inward to keep at least 2 collar layers.
    c0i = ci - 2;
    if (c0i < 2 || !(c0i * af * 0.6 < r_out))
      throw GeometryError("cavern too large for the collar construction");
  }
  const double c_phys = ci * af;
  const double window = (ci + 2) * af;

  TensorGrid g;
  g.xs = graded_axis(a * 0.5, a * 0.5, a * 0.5, window, af, a0);
  g.ys = graded_axis(0.0, 0.0, b, window, af, a0);
  g.zs = graded_axis(0.0, T / 2, T / 2, window, af, a0);

  const int NX = (int)g.xs.size(), NY = (int)g.ys.size(), NZ = (int)g.zs.size();
  const int n_nodes = NX * NY * NZ;

  // Index-space infinity-radius around O for nodes inside the uniform window;
  // INT_MAX outside. Grid offsets in the window are exact multiples of af, so
  // the rounding below is exact integer recovery.
  std::vector<int> mrad(n_nodes, std::numeric_limits<int>::max());
  std::vector<Eigen::Vector3d> pos(n_nodes);
  for (int k = 0; k < NZ; ++k)
    for (int j = 0; j < NY; ++j)
      for (int i = 0; i < NX; ++i) {
        const int id = g.idx(i, j, k);
        pos[id] = {g.xs[i], g.ys[j], g.zs[k]};
        const Eigen::Vector3d d = pos[id] - O;
        const double linf = d.cwiseAbs().maxCoeff();
        if (linf <= window + 0.25 * af) mrad[id] = (int)std::lround(linf / af);
      }

  // Move collar nodes: layer m in [c0i, ci) interpolates radially between the
  // cavern surface (its exact radial function) and the unmoved outer cube.
  for (int id = 0; id < n_nodes; ++id) {
    const int m = mrad[id];
    if (m < c0i || m >= ci || m == std::numeric_limits<int>::max()) continue;
    const Eigen::Vector3d d = pos[id] - O;
    const double r_cur = d.norm();
    if (r_cur == 0) continue;
    const Eigen::Vector3d dir = d / r_cur;
    // Local cavern frame: xi1 = -y (material side y > 0), xi2 = x - a/2, xi3 = z.
    const Eigen::Vector3d xi_dir(-dir.y(), dir.x(), dir.z());
    const double r_target = cavern->h * cavern->radial(xi_dir);
    const double linf = d.cwiseAbs().maxCoeff();
    const double r_outer = c_phys * (r_cur / linf);
    const double t = double(m - c0i) / double(ci - c0i);
    const double r_new = (1 - t) * r_target + t * r_outer;
    pos[id] = O + dir * r_new;
  }

  // Drop cells inside the closed inner cube and nodes strictly inside it.
  std::vector<int> renum(n_nodes, -1);
  Mesh mesh;
  mesh.dim = 3;
  mesh.period = T;
  auto keep_node = [&](int id) { return mrad[id] >= c0i; };
  for (int id = 0; id < n_nodes; ++id)
    if (keep_node(id)) {
      renum[id] = mesh.node_count();
      mesh.nodes.push_back(pos[id]);
    }
  std::vector<int> node_m(mesh.node_count());
  for (int id = 0; id < n_nodes; ++id)
    if (renum[id] >= 0)
      node_m[renum[id]] = mrad[id] == std::numeric_limits<int>::max() ? -1 : mrad[id];

  for (int k = 0; k < NZ - 1; ++k)
    for (int j = 0; j < NY - 1; ++j)
      for (int i = 0; i < NX - 1; ++i) {
        const std::array<int, 8> el{g.idx(i, j, k),         g.idx(i + 1, j, k),
                                    g.idx(i + 1, j + 1, k), g.idx(i, j + 1, k),
                                    g.idx(i, j, k + 1),     g.idx(i + 1, j, k + 1),
                                    g.idx(i + 1, j + 1, k + 1), g.idx(i, j + 1, k + 1)};
        bool inside = true;
        for (int id : el) inside = inside && (mrad[id] <= c0i);
        if (inside) continue;
        std::array<int, 8> out;
        for (int c = 0; c < 8; ++c) {
          out[c] = renum[el[c]];
          if (out[c] < 0)
            throw GeometryError("kept cell references a deleted node");
        }
        mesh.hexes.push_back(out);
      }

  const double tol = 1e-12 * std::max({a, b, T});
  collect_boundary_facets(mesh, [&](const std::array<int, 4>& f) {
    auto all = [&](auto pred) {
      for (int id : f)
        if (!pred(mesh.nodes[id], node_m[id])) return false;
      return true;
    };
    if (all([&](const Eigen::Vector3d& p, int) { return std::abs(p.z() + T / 2) < tol; }))
      return BoundaryTag::periodic_lo;
    if (all([&](const Eigen::Vector3d& p, int) { return std::abs(p.z() - T / 2) < tol; }))
      return BoundaryTag::periodic_hi;
    if (all([&](const Eigen::Vector3d&, int m) { return m == c0i; }))
      return BoundaryTag::cavern;
    if (all([&](const Eigen::Vector3d& p, int) {
          return std::abs(p.x()) < tol || std::abs(p.x() - a) < tol ||
                 std::abs(p.y()) < tol || std::abs(p.y() - b) < tol;
        }))
      return BoundaryTag::dirichlet;
    throw GeometryError("unclassifiable boundary facet in cell mesh");
  });

  // Periodic pairing over the full (x, y) grid; the cavern never reaches the
  // z faces, so every column of nodes survives there.
  for (int j = 0; j < NY; ++j)
    for (int i = 0; i < NX; ++i) {
      const int lo = renum[g.idx(i, j, 0)], hi = renum[g.idx(i, j, NZ - 1)];
      if (lo < 0 || hi < 0)
        throw GeometryError("periodic face node unexpectedly deleted");
      mesh.periodic_pairs.emplace_back(lo, hi);
    }

  mesh.validate();
  return mesh;
}

// ---------------------------------------------------------------------------
// Exterior half-space mesh

HalfspaceMesh build_halfspace_mesh(const CavernSpec& cavern, double R_inf,
                                   int resolution) {
  cavern.validate();
  const double Rr = cavern.R_ref();
  if (!(R_inf >= 4 * Rr))
    throw GeometryError("truncation radius too tight: R_inf = " +
                        std::to_string(R_inf) + " < 4 R_ref = " +
                        std::to_string(4 * Rr));
  if (resolution < 2)
    throw ConfigError("invalid resolution for half-space mesh");
  const int n = even_up(resolution);

  // Angular grid: square -> elliptic disk -> polar cap of the unit hemisphere
  // {n1 <= 0}. The rim (|u| = 1 or |v| = 1) is forced exactly onto n1 = 0.
  const int stride = n + 1;
  std::vector<Eigen::Vector3d> dirs(stride * stride);
  auto aidx = [&](int i, int j) { return j * stride + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) {
      const double u = 2.0 * i / n - 1.0, v = 2.0 * j / n - 1.0;
      const Eigen::Vector2d e = disk_map(u, v);
      const double rho = e.norm();
      if (rho < 1e-14) {
        dirs[aidx(i, j)] = {-1.0, 0.0, 0.0};
        continue;
      }
      const double alpha = std::min(rho, 1.0) * (pi / 2);
      const double n1 = rho >= 1.0 - 1e-14 ? 0.0 : -std::cos(alpha);
      const double s = std::sin(alpha) / rho;
      Eigen::Vector3d d(n1, s * e.x(), s * e.y());
      dirs[aidx(i, j)] = d / d.norm();
    }

  // Radial layers: geometric, aspect ~1 against the angular arc; the first
  // `shape_layers` shells morph from the cavern surface to an exact sphere.
  const double growth = 1.0 + (pi / 2) / n;
  int n_r = std::max(4, (int)std::ceil(std::log(R_inf / Rr) / std::log(growth)));
  const double gfit = std::pow(R_inf / Rr, 1.0 / n_r);
  std::vector<double> R(n_r + 1);
  for (int l = 0; l <= n_r; ++l) R[l] = Rr * std::pow(gfit, l);
  R[n_r] = R_inf;
  const int shape_layers =
      cavern.kind == CavernKind::hemisphere ? 0 : std::max(2, n / 4);

  HalfspaceMesh hm;
  Mesh& mesh = hm.mesh;
  mesh.dim = 3;
  const int n_ang = stride * stride;
  mesh.nodes.reserve(size_t(n_ang) * (n_r + 1));
  for (int l = 0; l <= n_r; ++l)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n; ++i) {
        const Eigen::Vector3d& d = dirs[aidx(i, j)];
        double r;
        if (l == 0) {
          r = cavern.radial(d);
        } else {
          const double tau = shape_layers == 0 ? 1.0
                                               : std::min(1.0, double(l) / shape_layers);
          r = ((1 - tau) * cavern.radial(d) / Rr + tau) * R[l];
        }
        mesh.nodes.push_back(d * r);
      }

  auto nid = [&](int i, int j, int l) { return l * n_ang + aidx(i, j); };
  for (int l = 0; l < n_r; ++l)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        // Angular quads reversed so (e_u x e_v) points inward and the radial
        // direction closes a positively oriented hex.
        mesh.hexes.push_back({nid(i, j, l), nid(i, j + 1, l), nid(i + 1, j + 1, l),
                              nid(i + 1, j, l), nid(i, j, l + 1), nid(i, j + 1, l + 1),
                              nid(i + 1, j + 1, l + 1), nid(i + 1, j, l + 1)});

  // Facets: cavern surface (l = 0), truncation sphere (l = n_r), wall strip
  // along the rim between consecutive layers.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      mesh.facets.push_back(
          {{nid(i, j, 0), nid(i + 1, j, 0), nid(i + 1, j + 1, 0), nid(i, j + 1, 0)},
           BoundaryTag::cavern});
      mesh.facets.push_back({{nid(i, j, n_r), nid(i + 1, j, n_r),
                              nid(i + 1, j + 1, n_r), nid(i, j + 1, n_r)},
                             BoundaryTag::truncation});
    }
  auto rim_strip = [&](int i0, int j0, int i1, int j1) {
    for (int l = 0; l < n_r; ++l)
      mesh.facets.push_back({{nid(i0, j0, l), nid(i1, j1, l), nid(i1, j1, l + 1),
                              nid(i0, j0, l + 1)},
                             BoundaryTag::dirichlet});
  };
  for (int i = 0; i < n; ++i) {
    rim_strip(i, 0, i + 1, 0);
    rim_strip(i, n, i + 1, n);
    rim_strip(0, i, 0, i + 1);
    rim_strip(n, i, n, i + 1);
  }

  // Record every exactly-spherical shell, truncation sphere included; the
  // moment extraction relies on the outermost recorded layer being the
  // truncation shell (it is excluded from fitting).
  for (int l = 1; l <= n_r; ++l) {
    if (l < shape_layers) continue;  // not yet an exact sphere
    hm.layer_radii.push_back(R[l]);
    std::vector<std::array<int, 4>> shell;
    shell.reserve(size_t(n) * n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        shell.push_back(
            {nid(i, j, l), nid(i + 1, j, l), nid(i + 1, j + 1, l), nid(i, j + 1, l)});
    hm.layer_shells.push_back(std::move(shell));
  }

  mesh.validate();
  return hm;
}

}  // namespace wgband
