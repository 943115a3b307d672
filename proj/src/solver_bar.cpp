#include <algorithm>
#include <cmath>

#include "sfrac/errors.hpp"
#include "sfrac/kernels.hpp"
#include "sfrac/solvers.hpp"

namespace sfrac {

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::double_v: return "double_V";
    case ProfileKind::double_u: return "double_U";
    case ProfileKind::u_v: return "U_V";
    case ProfileKind::table: return "table";
  }
  return "double_V";
}

ProfileKind profile_kind_from_string(const std::string& s) {
  if (s == "double_V") return ProfileKind::double_v;
  if (s == "double_U") return ProfileKind::double_u;
  if (s == "U_V") return ProfileKind::u_v;
  if (s == "table") return ProfileKind::table;
  throw InvalidArgument("unknown dissipation profile '" + s + "'");
}

double dissipation_profile(ProfileKind kind, double x) {
  if (!(x >= -1e-12 && x <= 6.0 + 1e-12)) throw InvalidArgument("dissipation profile evaluated outside [0, 6]");
  const bool left = x < 2.0;
  switch (kind) {
    case ProfileKind::double_v:
      return left ? 1.0 + std::abs(x - 1.0) : 1.0 + std::abs(x - 4.0) / 2.0;
    case ProfileKind::double_u:
      return left ? 1.0 + (x - 1.0) * (x - 1.0) : 1.0 + 0.25 * (x - 4.0) * (x - 4.0);
    case ProfileKind::u_v:
      return left ? 1.0 + (x - 1.0) * (x - 1.0) : 1.0 + std::abs(x - 4.0) / 2.0;
    case ProfileKind::table:
      break;
  }
  throw InvalidArgument("tabulated profiles need data; use DissipationProfile");
}

double DissipationProfile::operator()(double x) const {
  if (kind != ProfileKind::table) return dissipation_profile(kind, x);
  if (xs.size() < 2 || xs.size() != values.size()) throw InvalidArgument("profile table needs >= 2 matching points");
  if (x < xs.front() || x > xs.back()) throw InvalidArgument("profile table evaluated out of range");
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
  const auto i = j - 1;
  const double t = (x - xs[i]) / (xs[j] - xs[i]);
  return (1.0 - t) * values[i] + t * values[j];
}

std::vector<double> DissipationProfile::sample(const IntervalMesh& grid) const {
  std::vector<double> v(grid.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)(grid.nodes[i]);
  return v;
}

BarSolution solve_bar_phasefield(const IntervalMesh& grid, std::span<const double> dissipation,
                                 const BarParams& params, std::span<const double> schedule) {
  const auto n = grid.node_count();
  if (dissipation.size() != n) throw InvalidArgument("dissipation must be given per grid node");
  if (!(params.ell > 0.0) || !(params.youngs_area > 0.0)) throw InvalidArgument("ell and YA must be positive");
  for (double g : dissipation)
    if (!(g > 0.0)) throw InvalidArgument("dissipation must be positive");
  for (std::size_t k = 1; k < schedule.size(); ++k)
    if (!(schedule[k] >= schedule[k - 1])) throw InvalidArgument("tension schedule must be monotone");

  const BarCoefficients coeffs{params.youngs_area, params.ell, dissipation};
  BarSolution sol;
  sol.u.assign(n, 0.0);
  sol.alpha.assign(n, 0.0);
  std::vector<double> rhs(n), diff(n);

  for (std::size_t step = 0; step < schedule.size(); ++step) {
    const double ubar = schedule[step];
    double change = 0.0;
    std::size_t k = 1;
    for (;; ++k) {
      if (k > params.max_staggered)
        throw ConvergenceError("bar staggered iteration did not converge at step " + std::to_string(step + 1),
                               change, params.max_staggered);
      Tridiagonal K = assemble_bar_stiffness(grid, sol.alpha, coeffs);
      std::fill(rhs.begin(), rhs.end(), 0.0);
      // u(0) = 0, u(L) = ubar, eliminated symmetrically.
      K.diag[0] = 1.0;
      K.upper[0] = 0.0;
      if (n > 1) K.lower[1] = 0.0;
      rhs[n - 1] = ubar;
      if (n > 1) {
        rhs[n - 2] -= K.upper[n - 2] * ubar;
        K.upper[n - 2] = 0.0;
      }
      K.diag[n - 1] = 1.0;
      K.lower[n - 1] = 0.0;
      sol.u = solve_tridiagonal(K, rhs);

      const auto phase = assemble_bar_phase_system(grid, sol.u, coeffs);
      auto next = solve_tridiagonal(phase.matrix, phase.rhs);
      for (std::size_t i = 0; i < n; ++i) diff[i] = next[i] - sol.alpha[i];
      change = std::sqrt(kernels::dot(diff, diff));
      sol.alpha.swap(next);
      if (change < params.stag_tol) break;
    }
    sol.iterations.push_back(k);
    sol.energy.push_back(evaluate_bar_energy(grid, sol.u, sol.alpha, coeffs));
  }
  return sol;
}

std::size_t sharp_crack_location(std::span<const double> samples) {
  if (samples.empty()) throw InvalidArgument("sharp_crack_location needs at least one sample");
  return kernels::argmin(samples);
}

CrackPoint sharp_crack_location(std::span<const double> samples, std::span<const double> grid_nodes) {
  if (samples.size() != grid_nodes.size()) throw InvalidArgument("samples and grid nodes differ in length");
  const auto i = sharp_crack_location(samples);
  return {i, grid_nodes[i]};
}

}  // namespace sfrac
