#include <doctest.h>

#include <cmath>

#include "wgband/geometry.hpp"

using namespace wgband;

TEST_SUITE("geometry") {

TEST_CASE("shape anchors and normals") {
  const auto rect = CrossSectionShape::rectangle(2.0, 3.0);
  CHECK(rect.anchor().x() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rect.anchor().y() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rect.anchor_inward_normal().x() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(rect.anchor_inward_normal().y() == doctest::Approx(1.0).epsilon(1e-14));

  const auto disk = CrossSectionShape::disk(2.0);
  CHECK(disk.anchor().x() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(disk.anchor().y() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(disk.anchor_inward_normal().x() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(rect.diameter() == doctest::Approx(std::sqrt(13.0)));
  CHECK(disk.diameter() == doctest::Approx(4.0));
}

TEST_CASE("cavern radial function and reference radius") {
  const auto hemi = CavernSpec::hemisphere(1.5, 0.2);
  CHECK(hemi.R_ref() == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(hemi.radial({-1, 0, 0}) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(hemi.radial(Eigen::Vector3d(-1, 1, 1).normalized()) ==
        doctest::Approx(1.5).epsilon(1e-12));
  CHECK(hemi.radial({0, 1, 0}) == doctest::Approx(1.5).epsilon(1e-12));

  const auto box = CavernSpec::box({1.0, 2.0, 3.0}, 0.2);
  CHECK(box.R_ref() == doctest::Approx(Eigen::Vector3d(1, 2, 3).norm()).epsilon(1e-14));
  CHECK(box.radial({-1, 0, 0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(box.radial({0, 1, 0}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(box.radial({0, 0, -1}) == doctest::Approx(3.0).epsilon(1e-12));
  // Star-shaped: along the diagonal the nearest face (depth 1) limits.
  const Eigen::Vector3d diag = Eigen::Vector3d(-1, -1, -1).normalized();
  CHECK(box.radial(diag) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("degenerate cavern input is rejected") {
  CavernSpec bad = CavernSpec::hemisphere(1.0, 0.2);
  bad.rho = -1.0;
  CHECK_THROWS_AS(bad.validate(), GeometryError);
  bad = CavernSpec::hemisphere(1.0, 0.2);
  bad.h = 0.0;
  CHECK_THROWS_AS(bad.validate(), GeometryError);
  bad = CavernSpec::box({1, 1, 1}, 0.2);
  bad.half_extents.y() = 0.0;
  CHECK_THROWS_AS(bad.validate(), GeometryError);
}

TEST_CASE("cross-section meshes: area, tags, validity") {
  const auto square = build_cross_section_mesh(CrossSectionShape::rectangle(1, 1), 8);
  CHECK(square.dim == 2);
  CHECK(square.node_count() == 81);
  CHECK(square.volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_NOTHROW(square.validate());
  for (const auto& f : square.facets) CHECK(f.tag == BoundaryTag::dirichlet);
  // Every boundary edge uses the 2D sentinel layout.
  for (const auto& f : square.facets) {
    CHECK(f.n[2] == -1);
    CHECK(f.n[3] == -1);
  }

  const auto disk8 = build_cross_section_mesh(CrossSectionShape::disk(1.0), 8);
  CHECK(disk8.volume() == doctest::Approx(pi).epsilon(0.03));
  CHECK_NOTHROW(disk8.validate());
  const auto disk16 = build_cross_section_mesh(CrossSectionShape::disk(1.0), 16);
  CHECK(disk16.volume() == doctest::Approx(pi).epsilon(0.008));
  // The anchor node must exist on the Dirichlet boundary (the normal
  // derivative probe depends on it).
  const int anchor = disk16.find_node({1.0, 0.0, 0.0}, 1e-9);
  REQUIRE(anchor >= 0);
  const auto boundary = disk16.nodes_with_tag({BoundaryTag::dirichlet});
  CHECK(std::binary_search(boundary.begin(), boundary.end(), anchor));
}

TEST_CASE("uniform periodicity cell") {
  const auto mesh =
      build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 8);
  CHECK(mesh.dim == 3);
  CHECK(mesh.volume() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mesh.periodic_pairs.size() == 81);
  CHECK_NOTHROW(mesh.validate());
  int lo = 0, hi = 0;
  for (const auto& f : mesh.facets) {
    lo += f.tag == BoundaryTag::periodic_lo;
    hi += f.tag == BoundaryTag::periodic_hi;
  }
  CHECK(lo == 64);
  CHECK(hi == 64);
  for (auto [a, b] : mesh.periodic_pairs) {
    CHECK(mesh.nodes[a].z() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(mesh.nodes[b].z() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK((mesh.nodes[a] - mesh.nodes[b]).head<2>().norm() < 1e-12);
  }
}

TEST_CASE("carved periodicity cell removes the cavern volume") {
  const auto cavern = CavernSpec::hemisphere(1.0, 0.25);
  const auto mesh =
      build_cell_mesh(CrossSectionShape::rectangle(1, 1), cavern, 1, 10);
  CHECK_NOTHROW(mesh.validate());
  const double cavern_volume = (2.0 / 3.0) * pi * std::pow(0.25, 3);
  CHECK(mesh.volume() ==
        doctest::Approx(1.0 - cavern_volume).epsilon(0.15 * cavern_volume));
  // Cavern facets exist and their nodes sit on the scaled cavern surface
  // around the anchor O = (1/2, 0, 0).
  const auto cavern_nodes = mesh.nodes_with_tag({BoundaryTag::cavern});
  REQUIRE(cavern_nodes.size() > 10);
  const Eigen::Vector3d O(0.5, 0.0, 0.0);
  for (int id : cavern_nodes) {
    const Eigen::Vector3d d = mesh.nodes[id] - O;
    CHECK(d.norm() == doctest::Approx(0.25).epsilon(1e-7));
    CHECK(mesh.nodes[id].y() >= -1e-12);  // carved into the material side y > 0
  }
  // Periodic pairing survives the carving.
  CHECK(!mesh.periodic_pairs.empty());
  for (auto [a, b] : mesh.periodic_pairs)
    CHECK((mesh.nodes[a] - mesh.nodes[b]).head<2>().norm() < 1e-12);
}

TEST_CASE("carving is rectangle-only") {
  const auto cavern = CavernSpec::hemisphere(1.0, 0.2);
  CHECK_THROWS_AS(build_cell_mesh(CrossSectionShape::disk(1.0), cavern, 1, 10),
                  ConfigError);
}

TEST_CASE("validate catches broken meshes") {
  auto mesh = build_cell_mesh(CrossSectionShape::rectangle(1, 1), std::nullopt, 0, 4);
  auto broken = mesh;
  std::swap(broken.hexes[0][0], broken.hexes[0][1]);  // inverted element
  CHECK_THROWS_AS(broken.validate(), GeometryError);
  broken = mesh;
  broken.periodic_pairs[0].second = broken.periodic_pairs[1].second;
  CHECK_THROWS_AS(broken.validate(), GeometryError);
}

TEST_CASE("halfspace mesh: layers, tags, volume") {
  const auto cavern = CavernSpec::hemisphere(1.0, 0.2);
  const auto hs = build_halfspace_mesh(cavern, 8.0, 8);
  CHECK_NOTHROW(hs.mesh.validate());
  REQUIRE(hs.layer_radii.size() >= 2);
  REQUIRE(hs.layer_radii.size() == hs.layer_shells.size());
  for (std::size_t i = 1; i < hs.layer_radii.size(); ++i)
    CHECK(hs.layer_radii[i] > hs.layer_radii[i - 1]);
  CHECK(hs.layer_radii.back() <= 8.0 + 1e-9);

  // Every recorded shell is an exact sphere of its radius.
  for (std::size_t l = 0; l < hs.layer_radii.size(); ++l) {
    const double R = hs.layer_radii[l];
    REQUIRE(!hs.layer_shells[l].empty());
    for (const auto& f : hs.layer_shells[l])
      for (int id : f) {
        CHECK(hs.mesh.nodes[id].norm() == doctest::Approx(R).epsilon(1e-9));
        CHECK(hs.mesh.nodes[id].x() <= 1e-12);  // material side xi1 <= 0
      }
  }

  bool has_truncation = false, has_cavern = false;
  for (const auto& f : hs.mesh.facets) {
    has_truncation |= f.tag == BoundaryTag::truncation;
    has_cavern |= f.tag == BoundaryTag::cavern;
  }
  CHECK(has_truncation);
  CHECK(has_cavern);

  const double expected = (2.0 / 3.0) * pi * (std::pow(8.0, 3) - 1.0);
  CHECK(hs.mesh.volume() == doctest::Approx(expected).epsilon(0.08));
}

TEST_CASE("graded axis spans the interval with bounded growth") {
  const auto xs = graded_axis(0.5, 0.5, 0.5, 0.1, 0.02, 0.1);
  REQUIRE(xs.size() >= 8);
  CHECK(xs.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(xs.back() == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);
  double fine = 1e9;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    fine = std::min(fine, d);
    // The tail is rescaled to land exactly on the endpoint, so cells may
    // exceed the nominal coarse spacing by the (near-1) rescale factor.
    CHECK(d <= 0.1 * 1.25);
  }
  CHECK(fine <= 0.02 * (1.0 + 1e-9));
  for (std::size_t i = 2; i < xs.size(); ++i) {
    const double r = (xs[i] - xs[i - 1]) / (xs[i - 1] - xs[i - 2]);
    CHECK(r < 2.3);
    CHECK(r > 1.0 / 2.3);
  }
}

}  // TEST_SUITE
