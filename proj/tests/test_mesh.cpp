#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "sfrac/errors.hpp"
#include "sfrac/mesh.hpp"
#include "support.hpp"

using namespace sfrac;

TEST_CASE("interval mesh") {
  const auto one = build_interval_mesh(1.0, 1);
  CHECK(one.nodes == std::vector<double>{0.0, 1.0});

  const auto bar = build_interval_mesh(6.0, 1000);
  CHECK(bar.node_count() == 1001);
  CHECK(bar.cell_size(17) == doctest::Approx(0.006));
  CHECK(bar.nodes.back() == 6.0);

  const auto five = build_interval_mesh(6.0, 5);
  const double expect[] = {0.0, 1.2, 2.4, 3.6, 4.8, 6.0};
  for (int i = 0; i < 6; ++i) CHECK(five.nodes[i] == doctest::Approx(expect[i]).epsilon(1e-15));

  CHECK_THROWS_AS(build_interval_mesh(6.0, 0), InvalidArgument);
  CHECK_THROWS_AS(build_interval_mesh(-1.0, 3), InvalidArgument);
}

TEST_CASE("anti-plane mesh invariants") {
  for (auto region : {RefineRegion::band, RefineRegion::block, RefineRegion::whole}) {
    CAPTURE(to_string(region));
    MeshSizing sizing;
    sizing.h_min = 0.05;
    sizing.h_max = 0.1;
    sizing.band_width = 0.2;
    sizing.region = region;
    const auto mesh = build_antiplane_mesh(AntiplaneGeometry{}, sizing);
    REQUIRE(mesh.node_count() > 100);
    CHECK(min_signed_area(mesh) > 0.0);

    // Disc with one hole: V - E + F = 0. The slit runs to the boundary and does
    // not change the topology.
    const auto V = static_cast<long>(mesh.node_count());
    const auto E = static_cast<long>(mesh_edges(mesh).size());
    const auto F = static_cast<long>(mesh.triangle_count());
    CHECK(V - E + F == 0);

    // Total area = 4 - pi R^2 up to the polygonal hole approximation.
    double area = 0.0;
    for (std::size_t t = 0; t < mesh.triangle_count(); ++t) area += signed_area(mesh, t);
    CHECK(area == doctest::Approx(4.0 - std::numbers::pi * 0.04).epsilon(5e-3));

    // Hole nodes lie on the circle.
    for (std::size_t n = 0; n < mesh.node_count(); ++n)
      if (mesh.markers[n] == NodeMarker::hole)
        CHECK(norm(mesh.nodes[n] - Point2{0.3, 0.3}) == doctest::Approx(0.2).epsilon(1e-12));
    REQUIRE(mesh.slit_tip_node >= 0);
    CHECK(mesh.nodes[mesh.slit_tip_node] == Point2{1.0, 1.5});
  }
}

TEST_CASE("slit faces are decoupled") {
  const auto mesh = test::coarse_mesh();
  std::size_t left = 0, right = 0;
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    bool has_left = false, has_right = false;
    double cx = 0.0;
    for (auto n : tri) {
      has_left |= mesh.markers[n] == NodeMarker::slit_left;
      has_right |= mesh.markers[n] == NodeMarker::slit_right;
      cx += mesh.nodes[n].x / 3.0;
    }
    CHECK_FALSE((has_left && has_right));
    if (has_left) CHECK(cx < 1.0);
    if (has_right) CHECK(cx > 1.0);
    left += has_left;
    right += has_right;
  }
  CHECK(left > 0);
  CHECK(right > 0);

  // Loaded nodes: left half of the top edge is dir_minus, right half dir_plus.
  for (std::size_t n = 0; n < mesh.node_count(); ++n) {
    if (mesh.markers[n] == NodeMarker::dir_minus) CHECK((mesh.nodes[n].y == 2.0 && mesh.nodes[n].x <= 1.0));
    if (mesh.markers[n] == NodeMarker::dir_plus) CHECK((mesh.nodes[n].y == 2.0 && mesh.nodes[n].x >= 1.0));
  }
}

TEST_CASE("mesh size parameters are validated") {
  MeshSizing bad;
  bad.h_min = 0.1;
  bad.h_max = 0.05;
  CHECK_THROWS_AS(build_antiplane_mesh(AntiplaneGeometry{}, bad), InvalidArgument);
  AntiplaneGeometry g;
  g.radius = 0.4;  // cuts the boundary
  CHECK_THROWS_AS(build_antiplane_mesh(g, MeshSizing{}), GeometryError);
}

TEST_CASE("hole deformation") {
  const auto mesh = test::coarse_mesh();
  const double blend = 0.16;

  SUBCASE("constant radius leaves the mesh unchanged") {
    const auto same = deform_hole_boundary(mesh, [](double) { return 0.2; }, blend);
    CHECK(same.nodes == mesh.nodes);
  }
  SUBCASE("cosine perturbation moves hole nodes onto the new circle") {
    auto r = [](double phi) { return 0.2 + 0.02 * std::cos(phi); };
    const auto moved = deform_hole_boundary(mesh, r, blend);
    CHECK(min_signed_area(moved) > 0.0);
    for (std::size_t n = 0; n < mesh.node_count(); ++n) {
      const auto d = moved.nodes[n] - Point2{0.3, 0.3};
      if (mesh.markers[n] == NodeMarker::hole) {
        CHECK(norm(d) == doctest::Approx(r(std::atan2(d.y, d.x))).epsilon(1e-12));
      } else if (norm(mesh.nodes[n] - Point2{0.3, 0.3}) >= 0.2 + blend) {
        CHECK(moved.nodes[n] == mesh.nodes[n]);
      }
    }
  }
  SUBCASE("blend band stops at the outer boundary") {
    // The circle is 0.1 from the left and bottom edges, closer than the band.
    MeshSizing sizing;
    sizing.h_min = 0.02;
    sizing.h_max = 0.04;
    const auto fine = build_antiplane_mesh(AntiplaneGeometry{}, sizing);
    auto r = [](double phi) { return 0.2 + 0.035 * std::cos(3.0 * phi) - 0.01 * std::sin(5.0 * phi); };
    const auto moved = deform_hole_boundary(fine, r, blend);
    CHECK(min_signed_area(moved) > 0.0);
    for (std::size_t n = 0; n < fine.node_count(); ++n) {
      CHECK(moved.nodes[n].x >= 0.0);
      CHECK(moved.nodes[n].y >= 0.0);
      if (on_outer_boundary(fine, fine.nodes[n])) CHECK(norm(moved.nodes[n] - fine.nodes[n]) < 1e-12);
    }
  }
  SUBCASE("too large a perturbation is rejected") {
    CHECK_THROWS_AS(deform_hole_boundary(mesh, [](double) { return 0.29; }, blend), InvalidArgument);
  }
}

TEST_CASE("point location and line probe") {
  const auto mesh = test::coarse_mesh();
  PointLocator locator(mesh);

  // Sample at a mesh node: barycentric coordinates form a unit vector.
  const auto node = mesh.nodes[mesh.slit_tip_node + 3];
  const auto loc = locator.locate(node);
  REQUIRE(loc);
  const auto& b = loc->bary;
  CHECK(std::max({b[0], b[1], b[2]}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!locator.locate({0.3, 0.3}));  // hole centre

  SUBCASE("endpoints") {
    const auto probe = build_line_probe(mesh, {0.0, 1.0}, {1.5, -1.0}, 2);
    CHECK(probe.point(0.0) == Point2{0.0, 1.0});
    CHECK(probe.point(1.0) == Point2{1.5, 0.0});
    CHECK(probe.inside_count() == 2);
  }
  SUBCASE("P1 interpolation is exact for linear fields") {
    std::vector<double> field(mesh.node_count());
    for (std::size_t n = 0; n < field.size(); ++n) field[n] = mesh.nodes[n].x + mesh.nodes[n].y;
    const auto probe = build_line_probe(mesh, {0.0, 1.0}, {1.5, -1.0}, 101);
    for (std::size_t k = 0; k < probe.s.size(); ++k) {
      if (!probe.samples[k]) continue;
      const auto p = probe.point(probe.s[k]);
      CHECK(interpolate(mesh, *probe.samples[k], field) == doctest::Approx(p.x + p.y).epsilon(1e-12));
    }
  }
  SUBCASE("line outside the domain") {
    CHECK_THROWS_AS(build_line_probe(mesh, {5.0, 5.0}, {1.0, 0.0}, 11), InvalidArgument);
  }
}

TEST_CASE("VTK round trip") {
  const auto mesh = test::coarse_mesh();
  std::vector<double> alpha(mesh.node_count());
  for (std::size_t n = 0; n < alpha.size(); ++n) alpha[n] = std::sin(double(n)) * 0.5 + 0.5;
  std::ostringstream os;
  const NamedField fields[] = {{"alpha", alpha}};
  write_vtk(os, mesh, fields);
  CHECK(os.str().find("SCALARS alpha float 1") != std::string::npos);
  std::istringstream is(os.str());
  const auto data = read_vtk(is);
  CHECK(data.nodes.size() == mesh.node_count());
  CHECK(data.triangles == mesh.triangles);
  REQUIRE(data.field("alpha"));
  CHECK(test::max_abs_diff(*data.field("alpha"), alpha) == 0.0);
  CHECK(data.field("missing") == nullptr);
}
