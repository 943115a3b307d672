#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sfrac/analysis.hpp"
#include "sfrac/errors.hpp"
#include "sfrac/solvers.hpp"
#include "sfrac/stochastic.hpp"
#include "support.hpp"

using namespace sfrac;

namespace {

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a, ap = p - a;
  const double t = std::clamp((ap.x * ab.x + ap.y * ab.y) / (ab.x * ab.x + ab.y * ab.y), 0.0, 1.0);
  return norm(p - (a + t * ab));
}

// alpha = 1 within `half_width` of any of the segments, 0 elsewhere.
std::vector<double> cracks(const TriMesh& mesh, std::initializer_list<std::pair<Point2, Point2>> segments,
                           double half_width = 0.06) {
  std::vector<double> alpha(mesh.node_count(), 0.0);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (const auto& [a, b] : segments)
      if (segment_distance(mesh.nodes[i], a, b) <= half_width) alpha[i] = 1.0;
  return alpha;
}

const Point2 tip{1.0, 1.5}, centre{0.3, 0.3};

}  // namespace

TEST_CASE("2D crack classification on synthetic fields") {
  const auto mesh = test::coarse_mesh();
  CHECK(classify_crack_2d(std::vector<double>(mesh.node_count(), 0.0), mesh) == CrackClass::other);
  CHECK(classify_crack_2d(cracks(mesh, {{tip, {1.0, 0.0}}}), mesh) == CrackClass::type1);
  CHECK(classify_crack_2d(cracks(mesh, {{tip, centre}, {{0.3, 0.1}, {0.3, 0.0}}}), mesh) == CrackClass::type2);
  CHECK(classify_crack_2d(cracks(mesh, {{tip, centre}, {{0.1, 0.3}, {0.0, 0.3}}}), mesh) == CrackClass::type3);
  // Reaches both edges.
  CHECK(classify_crack_2d(cracks(mesh, {{tip, centre}, {{0.1, 0.3}, {0.0, 0.3}}, {{0.3, 0.1}, {0.3, 0.0}}}), mesh) ==
        CrackClass::other);
  // Partial crack.
  CHECK(classify_crack_2d(cracks(mesh, {{tip, {1.0, 0.8}}}), mesh) == CrackClass::other);
  // A crack that does not start at the slit tip does not count.
  CHECK(classify_crack_2d(cracks(mesh, {{{1.5, 1.0}, {1.5, 0.0}}}), mesh) == CrackClass::other);

  auto bad = std::vector<double>(mesh.node_count(), 0.0);
  bad[3] = 1.2;
  CHECK_THROWS_AS(classify_crack_2d(bad, mesh), InvalidArgument);

  for (auto c : {CrackClass::type1, CrackClass::type2, CrackClass::type3, CrackClass::other, CrackClass::failed})
    CHECK(crack_class_from_string(to_string(c)) == c);
}

TEST_CASE("1D crack classification") {
  const auto grid = build_interval_mesh(6.0, 300);
  const double attractors[] = {1.0, 4.0};
  std::vector<double> alpha(grid.node_count(), 0.0);
  CHECK(!classify_crack_1d(alpha, grid.nodes, attractors));

  const std::size_t at402 = 201;  // x = 4.02
  alpha[at402] = 0.97;
  auto hit = classify_crack_1d(alpha, grid.nodes, attractors);
  REQUIRE(hit);
  CHECK(*hit == 1);

  std::fill(alpha.begin(), alpha.end(), 0.0);
  alpha[50] = alpha[200] = 1.0;  // x = 1 and x = 4
  hit = classify_crack_1d(alpha, grid.nodes, attractors);
  REQUIRE(hit);
  CHECK(*hit == 0);
  CHECK(argmax_position(alpha, grid.nodes) == 1.0);

  std::fill(alpha.begin(), alpha.end(), 0.0);
  alpha[125] = 1.0;  // x = 2.5, outside both windows
  CHECK(!classify_crack_1d(alpha, grid.nodes, attractors));
}

TEST_CASE("line intersection coordinate") {
  const auto mesh = test::coarse_mesh(0.025, 0.1);
  const Point2 anchor{0.0, 1.0}, dir{1.5, -1.0};
  const auto probe = build_line_probe(mesh, anchor, dir, 1001);
  const auto coarse = build_line_probe(mesh, anchor, dir, 101);

  CHECK(intersection_coordinate(std::vector<double>(mesh.node_count(), 0.3), mesh, probe) == 0.0);

  const Point2 mid = anchor + 0.5 * dir;
  std::vector<double> bump(mesh.node_count());
  for (std::size_t i = 0; i < bump.size(); ++i) bump[i] = std::exp(-norm(mesh.nodes[i] - mid) / 0.04);
  const double s = intersection_coordinate(bump, mesh, probe);
  CHECK(std::abs(s - 0.5) <= 0.01);
  CHECK(std::abs(intersection_coordinate(bump, mesh, coarse) - s) < 0.01);
}

TEST_CASE("kernel density estimate") {
  SUBCASE("single sample gives a Gaussian bump") {
    const double x[] = {0.4};
    const auto d = kde_1d(x, {0.05, 0.0, 1.0, 1001});
    CHECK(d.integral() == doctest::Approx(1.0).epsilon(1e-12));
    const double peak = 1.0 / (0.05 * std::sqrt(2.0 * std::numbers::pi));
    CHECK(d(0.4) == doctest::Approx(peak).epsilon(1e-3));
    CHECK(d(0.45) / d(0.4) == doctest::Approx(std::exp(-0.5)).epsilon(1e-3));
    CHECK(d(2.0) == 0.0);
  }
  SUBCASE("double-V crack positions: two modes with mass ratio 1:2") {
    const auto grid = build_interval_mesh(6.0, 1000);
    std::vector<double> pos;
    for (std::uint64_t i = 0; i < 3000; ++i) {
      Rng rng(4, i);
      pos.push_back(sharp_crack_location(white_noise_perturb(DissipationProfile{ProfileKind::double_u, {}, {}}, grid,
                                                             0.1, rng),
                                         grid.nodes)
                        .position);
    }
    const auto d = kde_1d(pos, {std::nullopt, 0.0, 6.0, 1201});
    CHECK(d.integral() == doctest::Approx(1.0).epsilon(0.02));
    double left = 0.0, right = 0.0;
    for (std::size_t k = 1; k < d.s.size(); ++k) {
      const double m = 0.5 * (d.f[k] + d.f[k - 1]) * (d.s[k] - d.s[k - 1]);
      (d.s[k] < 2.5 ? left : right) += m;
    }
    CHECK(right / left == doctest::Approx(2.0).epsilon(0.15));

    const auto counts = histogram(pos, 2, 0.0, 5.0);
    CHECK(counts[0] + counts[1] == pos.size());
    CHECK(double(counts[1]) / double(counts[0]) == doctest::Approx(2.0).epsilon(0.15));
  }
  SUBCASE("Silverman bandwidth") {
    const double x[] = {0.0, 1.0};
    CHECK(silverman_bandwidth(x) == doctest::Approx(1.06 * std::sqrt(0.5) * std::pow(2.0, -0.2)));
  }
}

TEST_CASE("Bayes conditioning") {
  const double priors[] = {0.2, 0.3, 0.5};
  const double equal[] = {1.7, 1.7, 1.7};
  const auto post = bayes_condition(priors, equal, 1.7);
  for (int i = 0; i < 3; ++i) CHECK(post[i] == doctest::Approx(priors[i]));

  const double some_zero[] = {0.0, 2.0, 1.0};
  const auto p2 = bayes_condition(priors, some_zero, 1.1);
  CHECK(p2[0] == 0.0);
  CHECK(p2[1] + p2[2] == doctest::Approx(1.0));

  CHECK_THROWS_AS(bayes_condition(priors, equal, 0.0), UndefinedObservation);
  const double two[] = {1.0, 1.0};
  CHECK_THROWS_AS(bayes_condition(priors, two, 1.0), InvalidArgument);
}

TEST_CASE("histogram") {
  const double one[] = {0.5};
  CHECK(histogram(one, 2, 0.0, 1.0) == std::vector<std::size_t>{1, 0});
  const double edges[] = {0.0, 0.25, 1.0, 1.5, -0.1};
  CHECK(histogram(edges, 4, 0.0, 1.0) == std::vector<std::size_t>{2, 0, 0, 1});
  CHECK_THROWS_AS(histogram(one, 0, 0.0, 1.0), InvalidArgument);
}
