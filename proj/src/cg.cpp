#include <cmath>

#include "sfrac/errors.hpp"
#include "sfrac/fem.hpp"
#include "sfrac/kernels.hpp"

namespace sfrac {

SolveReport solve_spd(const SparseSystem& system, std::span<double> x, const SolveOptions& options) {
  const auto& A = system.matrix;
  const std::size_t n = A.n;
  if (system.rhs.size() != n || x.size() != n) throw InvalidArgument("solve_spd: size mismatch");
  const std::size_t max_iter = options.max_iter > 0 ? options.max_iter : 20 * std::max<std::size_t>(n, 1);

  std::vector<double> inv_diag = A.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw InvalidArgument("solve_spd: matrix has a non-positive diagonal entry");
    d = 1.0 / d;
  }

  const std::span<const double> b(system.rhs);
  const double b_norm = std::sqrt(kernels::dot(b, b));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }
  const double target = options.rel_tol * b_norm;

  std::vector<double> r(n), z(n), p(n), q(n);
  A.multiply(x, r);
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
  double r_norm = std::sqrt(kernels::dot(r, r));
  if (r_norm <= target) return {0, r_norm};

  kernels::hadamard(inv_diag, r, z);
  p = z;
  double rz = kernels::dot(r, z);
  for (std::size_t it = 1; it <= max_iter; ++it) {
    A.multiply(p, q);
    const double pq = kernels::dot(p, q);
    if (!(pq > 0.0)) throw InvalidArgument("solve_spd: breakdown, matrix is not positive definite");
    const double step = rz / pq;
    kernels::axpy(step, p, x);
    kernels::axpy(-step, q, r);
    r_norm = std::sqrt(kernels::dot(r, r));
    if (r_norm <= target) return {it, r_norm};
    kernels::hadamard(inv_diag, r, z);
    const double rz_next = kernels::dot(r, z);
    kernels::xpby(z, rz_next / rz, p);
    rz = rz_next;
  }
  throw ConvergenceError("conjugate gradients did not converge", r_norm, max_iter);
}

std::vector<double> solve_spd(const SparseSystem& system, const SolveOptions& options) {
  std::vector<double> x(system.matrix.n, 0.0);
  solve_spd(system, x, options);
  return x;
}

}  // namespace sfrac
