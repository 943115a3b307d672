#include <cmath>

#include "sfrac/errors.hpp"
#include "sfrac/fem.hpp"

namespace sfrac {

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
  const auto n = size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = diag[i] * x[i];
    if (i > 0) y[i] += lower[i] * x[i - 1];
    if (i + 1 < n) y[i] += upper[i] * x[i + 1];
  }
  return y;
}

std::vector<double> solve_tridiagonal(const Tridiagonal& m, std::span<const double> rhs) {
  const auto n = m.size();
  if (rhs.size() != n) throw InvalidArgument("solve_tridiagonal: size mismatch");
  if (n == 0) return {};
  std::vector<double> c(n, 0.0), d(n, 0.0);
  double pivot = m.diag[0];
  if (pivot == 0.0) throw InvalidArgument("solve_tridiagonal: zero pivot");
  c[0] = n > 1 ? m.upper[0] / pivot : 0.0;
  d[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = m.diag[i] - m.lower[i] * c[i - 1];
    if (pivot == 0.0) throw InvalidArgument("solve_tridiagonal: zero pivot");
    c[i] = i + 1 < n ? m.upper[i] / pivot : 0.0;
    d[i] = (rhs[i] - m.lower[i] * d[i - 1]) / pivot;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

namespace {

void check_bar(const IntervalMesh& mesh, std::span<const double> f, const BarCoefficients& c) {
  if (f.size() != mesh.node_count() || c.dissipation.size() != mesh.node_count())
    throw InvalidArgument("bar fields must match the interval mesh");
  if (!(c.ell > 0.0)) throw InvalidArgument("regularisation length must be positive");
}

struct CellData {
  double h, gc, du, dalpha, alpha_mid;
};

CellData cell_data(const IntervalMesh& mesh, std::size_t e, std::span<const double> u, std::span<const double> alpha,
                   const BarCoefficients& c) {
  const auto i = mesh.cells[e][0], j = mesh.cells[e][1];
  const double h = mesh.nodes[j] - mesh.nodes[i];
  return {h, 0.5 * (c.dissipation[i] + c.dissipation[j]), (u[j] - u[i]) / h, (alpha[j] - alpha[i]) / h,
          0.5 * (alpha[i] + alpha[j])};
}

}  // namespace

EnergyBreakdown evaluate_bar_energy(const IntervalMesh& mesh, std::span<const double> u,
                                    std::span<const double> alpha, const BarCoefficients& c) {
  check_bar(mesh, u, c);
  check_bar(mesh, alpha, c);
  EnergyBreakdown e;
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const auto d = cell_data(mesh, k, u, alpha, c);
    const double g = 1.0 - d.alpha_mid;
    e.elastic += 0.5 * d.h * g * g * c.youngs_area * d.du * d.du;
    e.fracture += 0.5 * d.h * d.gc * (d.alpha_mid * d.alpha_mid / c.ell + c.ell * d.dalpha * d.dalpha);
  }
  e.total = e.elastic + e.fracture + e.penalty - e.external;
  return e;
}

std::vector<double> bar_displacement_residual(const IntervalMesh& mesh, std::span<const double> u,
                                              std::span<const double> alpha, const BarCoefficients& c) {
  check_bar(mesh, u, c);
  check_bar(mesh, alpha, c);
  std::vector<double> r(mesh.node_count(), 0.0);
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const auto d = cell_data(mesh, k, u, alpha, c);
    const double g = 1.0 - d.alpha_mid;
    const double force = g * g * c.youngs_area * d.du;
    r[mesh.cells[k][0]] -= force;
    r[mesh.cells[k][1]] += force;
  }
  return r;
}

std::vector<double> bar_phase_residual(const IntervalMesh& mesh, std::span<const double> u,
                                       std::span<const double> alpha, const BarCoefficients& c) {
  check_bar(mesh, u, c);
  check_bar(mesh, alpha, c);
  std::vector<double> r(mesh.node_count(), 0.0);
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const auto d = cell_data(mesh, k, u, alpha, c);
    const double local =
        0.5 * d.h * (-(1.0 - d.alpha_mid) * c.youngs_area * d.du * d.du + d.gc * d.alpha_mid / c.ell);
    const double flux = d.gc * c.ell * d.dalpha;
    r[mesh.cells[k][0]] += local - flux;
    r[mesh.cells[k][1]] += local + flux;
  }
  return r;
}

BarPhaseSystem assemble_bar_phase_system(const IntervalMesh& mesh, std::span<const double> u,
                                         const BarCoefficients& c) {
  check_bar(mesh, u, c);
  const auto n = mesh.node_count();
  BarPhaseSystem sys{Tridiagonal(n), std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const auto i = static_cast<std::size_t>(mesh.cells[k][0]), j = static_cast<std::size_t>(mesh.cells[k][1]);
    const double h = mesh.nodes[j] - mesh.nodes[i];
    const double gc = 0.5 * (c.dissipation[i] + c.dissipation[j]);
    const double du = (u[j] - u[i]) / h;
    const double drive = c.youngs_area * du * du;
    const double mass = 0.25 * h * (drive + gc / c.ell);
    const double stiff = gc * c.ell / h;
    sys.matrix.diag[i] += mass + stiff;
    sys.matrix.diag[j] += mass + stiff;
    sys.matrix.upper[i] += mass - stiff;
    sys.matrix.lower[j] += mass - stiff;
    sys.rhs[i] += 0.5 * h * drive;
    sys.rhs[j] += 0.5 * h * drive;
  }
  return sys;
}

Tridiagonal assemble_bar_stiffness(const IntervalMesh& mesh, std::span<const double> alpha,
                                   const BarCoefficients& c) {
  check_bar(mesh, alpha, c);
  Tridiagonal K(mesh.node_count());
  for (std::size_t k = 0; k < mesh.cell_count(); ++k) {
    const auto i = static_cast<std::size_t>(mesh.cells[k][0]), j = static_cast<std::size_t>(mesh.cells[k][1]);
    const double h = mesh.nodes[j] - mesh.nodes[i];
    const double g = 1.0 - 0.5 * (alpha[i] + alpha[j]);
    const double k_e = c.youngs_area * g * g / h;
    K.diag[i] += k_e;
    K.diag[j] += k_e;
    K.upper[i] -= k_e;
    K.lower[j] -= k_e;
  }
  return K;
}

}  // namespace sfrac
