#include <cmath>

#include "sfrac/errors.hpp"
#include "sfrac/solvers.hpp"

namespace sfrac {

double double_well_energy(double x, double eta_q) { return x * x * (1.0 - x) * (1.0 - x) + eta_q * x; }

namespace {

double newton_from(double x, double eta_q) {
  for (int it = 0; it < 100; ++it) {
    const double grad = 2.0 * x * (1.0 - x) * (1.0 - 2.0 * x) + eta_q;
    if (std::abs(grad) < 1e-14) break;
    const double hess = 2.0 * (1.0 - 6.0 * x + 6.0 * x * x);
    x -= grad / hess;
  }
  return x;
}

}  // namespace

double double_well_minimize(double eta, double q) {
  const double eta_q = eta * q;
  // Beyond |eta q| ~ 0.096 one of the two wells disappears.
  if (!(std::abs(eta_q) < 0.09)) throw InvalidArgument("double well: |eta*q| must stay below 0.09");
  const double near_zero = newton_from(0.0, eta_q);
  const double near_one = newton_from(1.0, eta_q);
  return double_well_energy(near_zero, eta_q) <= double_well_energy(near_one, eta_q) ? near_zero : near_one;
}

}  // namespace sfrac
