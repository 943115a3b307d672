#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "sfrac/errors.hpp"
#include "sfrac/fem.hpp"
#include "support.hpp"

using namespace sfrac;

namespace {

TriMesh single_triangle() {
  TriMesh m;
  m.nodes = {{0, 0}, {1, 0}, {0, 1}};
  m.triangles = {{0, 1, 2}};
  m.markers.assign(3, NodeMarker::free);
  return m;
}

// Unit square with interior nodes jittered, for patch tests.
TriMesh distorted_square(int n, unsigned seed) {
  auto m = test::unit_square(n);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-0.2 / n, 0.2 / n);
  for (auto& p : m.nodes)
    if (p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1) p = {p.x + d(gen), p.y + d(gen)};
  return m;
}

std::vector<std::int32_t> square_boundary(const TriMesh& m) {
  std::vector<std::int32_t> b;
  for (std::size_t i = 0; i < m.node_count(); ++i) {
    const auto p = m.nodes[i];
    if (p.x == 0 || p.x == 1 || p.y == 0 || p.y == 1) b.push_back(static_cast<std::int32_t>(i));
  }
  return b;
}

std::vector<double> random_field(std::size_t n, unsigned seed, double lo, double hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

}  // namespace

TEST_CASE("element stiffness on the reference triangle") {
  const auto mesh = single_triangle();
  P1Space space(mesh);
  CHECK(space.area(0) == 0.5);
  const auto k = space.element_stiffness(0);
  const double expect[9] = {1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5};
  for (int i = 0; i < 9; ++i) CHECK(k[i] == doctest::Approx(expect[i]).epsilon(1e-15));

  const double w1[] = {1.0};
  const auto sys = assemble_weighted_stiffness(space, w1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(sys.matrix.at(i, j) == doctest::Approx(expect[3 * i + j]));
  const double w0[] = {0.0};
  const auto zero = assemble_weighted_stiffness(space, w0);
  for (double v : zero.matrix.values) CHECK(v == 0.0);
}

TEST_CASE("stiffness kills constants and matches an independent dense assembly") {
  const auto mesh = test::coarse_mesh(0.1, 0.2);
  P1Space space(mesh);
  const auto weights = random_field(mesh.triangle_count(), 3, 0.1, 2.0);
  const auto sys = assemble_weighted_stiffness(space, weights);

  std::vector<double> ones(mesh.node_count(), 1.0), y(mesh.node_count());
  sys.matrix.multiply(ones, y);
  for (double v : y) CHECK(std::abs(v) < 1e-12);

  // Oracle: gradients from the inverse of the affine map, via Eigen.
  const auto n = static_cast<Eigen::Index>(mesh.node_count());
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    Eigen::Matrix3d P;
    for (int a = 0; a < 3; ++a) P.row(a) << 1.0, mesh.nodes[tri[a]].x, mesh.nodes[tri[a]].y;
    const Eigen::Matrix3d C = P.inverse();  // column a: coefficients of hat function a
    const double area = 0.5 * std::abs(P.determinant());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        K(tri[a], tri[b]) += weights[t] * area * (C(1, a) * C(1, b) + C(2, a) * C(2, b));
  }
  double err = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) err = std::max(err, std::abs(K(i, j) - sys.matrix.at(i, j)));
  CHECK(err < 1e-12);
}

TEST_CASE("patch test: linear fields are reproduced exactly") {
  const auto mesh = distorted_square(8, 11);
  P1Space space(mesh);
  const std::vector<double> w(mesh.triangle_count(), 1.0);
  auto sys = assemble_weighted_stiffness(space, w);
  const auto bnd = square_boundary(mesh);
  std::vector<double> vals;
  for (auto i : bnd) vals.push_back(2.0 * mesh.nodes[i].x - 3.0 * mesh.nodes[i].y + 0.5);
  apply_dirichlet(sys, bnd, vals);
  const auto u = solve_spd(sys, {1e-14, 0});
  double err = 0.0;
  for (std::size_t i = 0; i < mesh.node_count(); ++i)
    err = std::max(err, std::abs(u[i] - (2.0 * mesh.nodes[i].x - 3.0 * mesh.nodes[i].y + 0.5)));
  CHECK(err < 1e-12);
}

TEST_CASE("conjugate gradients") {
  SUBCASE("Laplace with u = x on the boundary") {
    const auto mesh = test::unit_square(16);
    P1Space space(mesh);
    auto sys = assemble_weighted_stiffness(space, std::vector<double>(mesh.triangle_count(), 1.0));
    const auto bnd = square_boundary(mesh);
    std::vector<double> vals;
    for (auto i : bnd) vals.push_back(mesh.nodes[i].x);
    apply_dirichlet(sys, bnd, vals);
    const auto u = solve_spd(sys);
    for (std::size_t i = 0; i < mesh.node_count(); ++i) CHECK(u[i] == doctest::Approx(mesh.nodes[i].x).epsilon(1e-8));
  }
  SUBCASE("agrees with a dense Cholesky solve") {
    const auto mesh = test::coarse_mesh(0.1, 0.2);
    P1Space space(mesh);
    auto sys = assemble_weighted_stiffness(space, random_field(mesh.triangle_count(), 5, 0.01, 1.0));
    std::vector<std::int32_t> dofs;
    std::vector<double> vals;
    for (std::size_t i = 0; i < mesh.node_count(); ++i)
      if (mesh.markers[i] == NodeMarker::dir_minus || mesh.markers[i] == NodeMarker::dir_plus) {
        dofs.push_back(static_cast<std::int32_t>(i));
        vals.push_back(mesh.markers[i] == NodeMarker::dir_plus ? 1.0 : -1.0);
      }
    apply_dirichlet(sys, dofs, vals);
    const auto u = solve_spd(sys, {1e-13, 0});
    const auto n = static_cast<Eigen::Index>(mesh.node_count());
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      b(i) = sys.rhs[i];
      for (Eigen::Index j = 0; j < n; ++j) A(i, j) = sys.matrix.at(i, j);
    }
    const Eigen::VectorXd ref = A.llt().solve(b);
    double err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) err = std::max(err, std::abs(ref(i) - u[i]));
    CHECK(err < 1e-9);
  }
  SUBCASE("identity system") {
    const auto mesh = test::unit_square(2);
    P1Space space(mesh);
    auto sys = assemble_weighted_stiffness(space, std::vector<double>(mesh.triangle_count(), 0.0));
    std::vector<std::int32_t> all;
    std::vector<double> vals;
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
      all.push_back(static_cast<std::int32_t>(i));
      vals.push_back(double(i) * 0.25);
    }
    apply_dirichlet(sys, all, vals);
    CHECK(test::max_abs_diff(solve_spd(sys), vals) < 1e-14);
  }
  SUBCASE("indefinite input is reported") {
    const auto mesh = test::unit_square(3);
    P1Space space(mesh);
    CHECK_THROWS_AS(assemble_weighted_stiffness(space, std::vector<double>(mesh.triangle_count(), -1.0)),
                    InvalidArgument);
    auto sys = assemble_weighted_stiffness(space, std::vector<double>(mesh.triangle_count(), 1.0));
    for (auto& v : sys.matrix.values) v = -v;
    sys.rhs.assign(mesh.node_count(), 1.0);
    CHECK_THROWS_AS(solve_spd(sys), InvalidArgument);
  }
}

TEST_CASE("energy closed forms") {
  const auto mesh = test::unit_square(6);
  P1Space space(mesh);
  PhaseFieldParams pp;
  const std::vector<double> zero(mesh.node_count(), 0.0);

  auto e = evaluate_energy(space, zero, zero, zero, pp);
  CHECK(e.total == 0.0);

  std::vector<double> ramp(mesh.node_count());
  const double g = 1.7;
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = g * mesh.nodes[i].x;
  e = evaluate_energy(space, ramp, zero, zero, pp);
  CHECK(e.elastic == doctest::Approx(g * g / 2.0).epsilon(1e-13));
  CHECK(e.fracture == 0.0);
  CHECK(e.penalty == 0.0);

  // alpha = 1 everywhere: (G_c / c_w) * (1 / ell) * area.
  const std::vector<double> one(mesh.node_count(), 1.0);
  e = evaluate_energy(space, ramp, one, zero, pp);
  CHECK(e.elastic == 0.0);
  CHECK(e.fracture == doctest::Approx(1.0 / 2.0 / 0.04).epsilon(1e-13));
}

TEST_CASE("phase residual special cases") {
  const auto mesh = test::unit_square(5);
  P1Space space(mesh);
  PhaseFieldParams pp;
  pp.gamma = 0.0;
  const auto u = random_field(mesh.node_count(), 1, -1, 1);
  const std::vector<double> one(mesh.node_count(), 1.0), zero(mesh.node_count(), 0.0);

  // alpha = 1: only (G_c / c_w) (2 / ell) int phi_i remains; with the centroid rule
  // int phi_i = sum over adjacent triangles of area / 3.
  const auto r = assemble_phase_residual(space, u, one, zero, pp);
  std::vector<double> lumped(mesh.node_count(), 0.0);
  for (std::size_t t = 0; t < mesh.triangle_count(); ++t)
    for (auto n : mesh.triangles[t]) lumped[n] += space.area(t) / 3.0;
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == doctest::Approx(1.0 / 2.0 * 2.0 / 0.04 * lumped[i]));

  // Constant u: no driving term, so alpha = 0 is stationary.
  const std::vector<double> c(mesh.node_count(), 0.3);
  for (double v : assemble_phase_residual(space, c, zero, zero, pp)) CHECK(v == 0.0);

  // alpha = alpha_prev: the penalty is inactive.
  pp.gamma = 1e5;
  const auto a = random_field(mesh.node_count(), 2, 0.0, 1.0);
  const auto with = assemble_phase_residual(space, u, a, a, pp);
  pp.gamma = 0.0;
  const auto without = assemble_phase_residual(space, u, a, a, pp);
  CHECK(test::max_abs_diff(with, without) == 0.0);
}

TEST_CASE("residuals are gradients of the discrete energy") {
  const auto mesh = test::coarse_mesh(0.1, 0.2);
  P1Space space(mesh);
  for (auto model : {WModel::at2, WModel::at1}) {
    CAPTURE(to_string(model));
    PhaseFieldParams pp;
    pp.model = model;
    pp.gamma = 50.0;
    const auto n = mesh.node_count();
    const auto u = random_field(n, 7, -1.0, 1.0);
    const auto alpha = random_field(n, 8, 0.0, 0.8);
    const auto prev = random_field(n, 9, 0.0, 0.8);  // penalty active on part of the mesh
    const auto ru = assemble_displacement_residual(space, u, alpha, pp);
    const auto ra = assemble_phase_residual(space, u, alpha, prev, pp);

    // Central differences along random directions.
    for (unsigned trial = 0; trial < 4; ++trial) {
      const auto d = random_field(n, 100 + trial, -1.0, 1.0);
      const double h = 1e-6;
      auto shifted = [&](const std::vector<double>& base, double s) {
        auto v = base;
        for (std::size_t i = 0; i < n; ++i) v[i] += s * d[i];
        return v;
      };
      const double fd_u = (evaluate_energy(space, shifted(u, h), alpha, prev, pp).total -
                           evaluate_energy(space, shifted(u, -h), alpha, prev, pp).total) /
                          (2 * h);
      double an_u = 0.0;
      for (std::size_t i = 0; i < n; ++i) an_u += ru[i] * d[i];
      CHECK(std::abs(fd_u - an_u) <= 1e-5 * std::abs(an_u));

      const double fd_a = (evaluate_energy(space, u, shifted(alpha, h), prev, pp).total -
                           evaluate_energy(space, u, shifted(alpha, -h), prev, pp).total) /
                          (2 * h);
      double an_a = 0.0;
      for (std::size_t i = 0; i < n; ++i) an_a += ra[i] * d[i];
      CHECK(std::abs(fd_a - an_a) <= 1e-5 * std::abs(an_a));
    }
  }
}

TEST_CASE("phase Jacobian matches differences of the residual") {
  const auto mesh = test::coarse_mesh(0.1, 0.2);
  P1Space space(mesh);
  PhaseFieldParams pp;
  pp.gamma = 50.0;
  const auto n = mesh.node_count();
  const auto u = random_field(n, 17, -1.0, 1.0);
  const auto alpha = random_field(n, 18, 0.0, 0.8);
  // Penalty either clearly active or clearly inactive per element.
  std::vector<double> prev(n);
  for (std::size_t i = 0; i < n; ++i) prev[i] = i % 2 ? alpha[i] + 0.5 : alpha[i] - 0.5;
  const auto J = assemble_phase_jacobian(space, u, alpha, prev, pp);
  const auto d = random_field(n, 19, -1.0, 1.0);
  std::vector<double> Jd(n);
  J.multiply(d, Jd);
  const double h = 1e-7;
  auto a_plus = alpha, a_minus = alpha;
  for (std::size_t i = 0; i < n; ++i) {
    a_plus[i] += h * d[i];
    a_minus[i] -= h * d[i];
  }
  const auto rp = assemble_phase_residual(space, u, a_plus, prev, pp);
  const auto rm = assemble_phase_residual(space, u, a_minus, prev, pp);
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    err = std::max(err, std::abs((rp[i] - rm[i]) / (2 * h) - Jd[i]));
    scale = std::max(scale, std::abs(Jd[i]));
  }
  CHECK(err <= 1e-6 * scale);
}

TEST_CASE("bar energy, residuals and tridiagonal solve") {
  const auto grid = build_interval_mesh(6.0, 60);
  const std::vector<double> gc(grid.node_count(), 1.0);
  const BarCoefficients c{1e4, 0.1, gc};

  // alpha = 1, G_cA = 1, L = 6, ell = 0.1: fracture = (1/2) L / ell = 30.
  const std::vector<double> one(grid.node_count(), 1.0), zero(grid.node_count(), 0.0);
  auto e = evaluate_bar_energy(grid, zero, one, c);
  CHECK(e.fracture == doctest::Approx(30.0).epsilon(1e-13));
  CHECK(e.elastic == 0.0);

  // FD check of both residuals.
  const auto u = random_field(grid.node_count(), 21, -0.01, 0.01);
  const auto alpha = random_field(grid.node_count(), 22, 0.0, 1.0);
  const auto dir = random_field(grid.node_count(), 23, -1.0, 1.0);
  const double h = 1e-7;
  auto shift = [&](std::vector<double> v, double s) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += s * dir[i];
    return v;
  };
  const auto ru = bar_displacement_residual(grid, u, alpha, c);
  const auto ra = bar_phase_residual(grid, u, alpha, c);
  double an_u = 0.0, an_a = 0.0;
  for (std::size_t i = 0; i < dir.size(); ++i) {
    an_u += ru[i] * dir[i];
    an_a += ra[i] * dir[i];
  }
  const double fd_u = (evaluate_bar_energy(grid, shift(u, h), alpha, c).total -
                       evaluate_bar_energy(grid, shift(u, -h), alpha, c).total) / (2 * h);
  const double fd_a = (evaluate_bar_energy(grid, u, shift(alpha, h), c).total -
                       evaluate_bar_energy(grid, u, shift(alpha, -h), c).total) / (2 * h);
  CHECK(std::abs(fd_u - an_u) <= 1e-5 * std::abs(an_u));
  CHECK(std::abs(fd_a - an_a) <= 1e-5 * std::abs(an_a));

  // The linear alpha system is the stationarity condition of the residual.
  const auto sys = assemble_bar_phase_system(grid, u, c);
  const auto solved = solve_tridiagonal(sys.matrix, sys.rhs);
  for (double r : bar_phase_residual(grid, u, solved, c)) CHECK(std::abs(r) < 1e-9);

  // Thomas against a dense solve.
  const auto n = static_cast<Eigen::Index>(grid.node_count());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = sys.matrix.diag[i];
    if (i > 0) A(i, i - 1) = sys.matrix.lower[i];
    if (i + 1 < n) A(i, i + 1) = sys.matrix.upper[i];
    b(i) = sys.rhs[i];
  }
  const Eigen::VectorXd ref = A.partialPivLu().solve(b);
  for (Eigen::Index i = 0; i < n; ++i) CHECK(solved[i] == doctest::Approx(ref(i)).epsilon(1e-10));

  Tridiagonal singular(3);
  CHECK_THROWS_AS(solve_tridiagonal(singular, std::vector<double>(3, 1.0)), InvalidArgument);
}
