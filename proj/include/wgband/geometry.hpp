#pragma once

// Geometry: cross-section shapes, cavern specification, and structured-hex
// mesh builders for the three domains the toolkit needs:
//   - 2D cross-section omega (rectangle or disk),
//   - 3D periodicity cell omega x (-T/2, T/2) minus the scaled cavern,
//   - 3D truncated exterior half-space around the unit-scale cavern.
//
// Local cavern frame: xi = (xi1, xi2, xi3) with xi1 < 0 the material side
// (waveguide interior), xi1 = 0 the wall tangent plane at the anchor O', and
// (xi2, xi3) tangential. In cell coordinates with the anchor at a side
// midpoint O' = (a/2, 0) this is xi = (-y, x - a/2, z).

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wgband/common.hpp"

namespace wgband {

enum class ShapeKind { rectangle, disk };

struct CrossSectionShape {
  ShapeKind kind = ShapeKind::rectangle;
  double a = 1.0;       // rectangle side along x
  double b = 1.0;       // rectangle side along y
  double radius = 1.0;  // disk radius

  static CrossSectionShape rectangle(double a, double b);
  static CrossSectionShape disk(double radius);

  // Boundary anchor O' where the cavern sits: rectangle -> midpoint of the
  // side y = 0; disk -> (radius, 0). Both are away from corners.
  Eigen::Vector2d anchor() const;
  // Unit inward normal at the anchor.
  Eigen::Vector2d anchor_inward_normal() const;
  double diameter() const;
};

enum class CavernKind { hemisphere, box };

// Reference cavern set theta at unit scale, star-shaped about the origin,
// contained in the material half-space {xi1 < 0}; the physical cavern is the
// h-dilate translated to O'.
struct CavernSpec {
  CavernKind kind = CavernKind::hemisphere;
  double rho = 1.0;                              // hemisphere radius
  Eigen::Vector3d half_extents{1.0, 1.0, 1.0};   // box: depth (|xi1|), xi2, xi3
  double h = 0.2;                                // dilation scale

  static CavernSpec hemisphere(double rho, double h);
  static CavernSpec box(const Eigen::Vector3d& half_extents, double h);

  // Radius of the smallest half-ball {|xi| < R_ref, xi1 < 0} containing theta.
  double R_ref() const;
  // Star-shaped radial function: distance from the origin to the boundary of
  // theta along unit direction dir (dir.x() <= 0 for interior directions;
  // equatorial directions dir.x() == 0 give the rim).
  double radial(const Eigen::Vector3d& dir) const;
  void validate() const;
};

enum class BoundaryTag { dirichlet, cavern, periodic_lo, periodic_hi, truncation };

// `cavern` facets are Dirichlet facets too; they carry their own tag so the
// cell problem can release them (shared-mesh bracketing) and the exterior
// problem can apply the inhomogeneous data g = -xi1 on them.

struct Facet {
  std::array<int, 4> n{{-1, -1, -1, -1}};  // 2D boundary edges use n[0], n[1]
  BoundaryTag tag = BoundaryTag::dirichlet;
};

struct Mesh {
  int dim = 3;
  std::vector<Eigen::Vector3d> nodes;  // 2D meshes keep z = 0
  std::vector<std::array<int, 4>> quads;  // 2D elements (CCW)
  std::vector<std::array<int, 8>> hexes;  // 3D elements (VTK ordering)
  std::vector<Facet> facets;
  // (node at z = -T/2, node at z = +T/2); 3D cell meshes only.
  std::vector<std::pair<int, int>> periodic_pairs;
  double period = 1.0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int element_count() const {
    return static_cast<int>(dim == 2 ? quads.size() : hexes.size());
  }
  double diameter() const;
  // Sum of element measures by Gauss quadrature (area in 2D, volume in 3D).
  double volume() const;
  // Positive-Jacobian scan at all quadrature points plus periodic-pairing
  // round-trip checks; throws GeometryError on the first violation.
  void validate() const;
  // Nodes incident to facets with any of the given tags, sorted, deduplicated.
  std::vector<int> nodes_with_tag(std::initializer_list<BoundaryTag> tags) const;
  int find_node(const Eigen::Vector3d& p, double tol) const;  // -1 if absent
};

// Exterior mesh plus the radial-layer bookkeeping the polarization moment
// quadrature needs: every recorded layer is an exact sphere of the stored
// radius (nodes on it up to roundoff).
struct HalfspaceMesh {
  Mesh mesh;
  std::vector<double> layer_radii;
  std::vector<std::vector<std::array<int, 4>>> layer_shells;  // facets per layer
};

Mesh build_cross_section_mesh(const CrossSectionShape& shape, int resolution);

// Periodicity cell (period T = 1): omega x (-1/2, 1/2) minus the scaled
// cavern. With a cavern the grid is graded: spacing halved `refinement_levels`
// times inside a window around O = (O', 0), with an O-grid collar fitting a
// hex layer exactly onto the cavern surface. base_resolution is the coarse
// cells-per-unit-length away from the cavern (and the uniform resolution when
// no cavern is present).
Mesh build_cell_mesh(const CrossSectionShape& shape,
                     const std::optional<CavernSpec>& cavern,
                     int refinement_levels, int base_resolution);

// Truncated exterior domain {|xi| < R_inf, xi1 < 0} \ closure(theta) at unit
// cavern scale. resolution = angular cells per side of the underlying square
// grid; radial layers are geometric with near-unit cell aspect.
HalfspaceMesh build_halfspace_mesh(const CavernSpec& cavern, double R_inf,
                                   int resolution);

// Small utilities shared with tests.
std::vector<double> graded_axis(double center, double half_extent_lo,
                                double half_extent_hi, double fine_halfwidth,
                                double fine_spacing, double coarse_spacing);

}  // namespace wgband
