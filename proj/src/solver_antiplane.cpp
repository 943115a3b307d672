#include <cmath>

#include "sfrac/errors.hpp"
#include "sfrac/kernels.hpp"
#include "sfrac/solvers.hpp"

namespace sfrac {

double SolverParams::gamma() const {
  if (gamma_override) return *gamma_override;
  return G_c / ell * (1.0 / (tol_ir * tol_ir) - 1.0);
}

PhaseFieldParams SolverParams::phase_params() const { return {mu, G_c, ell, gamma(), model}; }

void SolverParams::validate() const {
  if (!(ell > 0.0)) throw InvalidArgument("ell must be positive");
  if (!(mu > 0.0) || !(G_c > 0.0)) throw InvalidArgument("mu and G_c must be positive");
  if (!(tol_ir > 0.0) || !(tol_nr > 0.0) || !(tol_stag > 0.0)) throw InvalidArgument("tolerances must be positive");
  if (gamma() < 0.0) throw InvalidArgument("penalty weight must be non-negative");
  if (max_staggered == 0 || max_newton == 0) throw InvalidArgument("iteration caps must be positive");
}

AntiplaneProblem::AntiplaneProblem(TriMesh mesh) : mesh_(std::move(mesh)), space_(mesh_) {
  for (std::size_t n = 0; n < mesh_.node_count(); ++n) {
    if (mesh_.markers[n] == NodeMarker::dir_minus) {
      dir_nodes_.push_back(static_cast<std::int32_t>(n));
      dir_sign_.push_back(-1.0);
    } else if (mesh_.markers[n] == NodeMarker::dir_plus) {
      dir_nodes_.push_back(static_cast<std::int32_t>(n));
      dir_sign_.push_back(1.0);
    }
  }
}

std::vector<double> AntiplaneProblem::dirichlet_values(double ubar) const {
  std::vector<double> v(dir_sign_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = dir_sign_[k] * ubar;
  return v;
}

FractureState AntiplaneProblem::pristine() const {
  FractureState s;
  s.u.assign(mesh_.node_count(), 0.0);
  s.alpha.assign(mesh_.node_count(), 0.0);
  return s;
}

namespace {

double l2norm(std::span<const double> v) { return std::sqrt(kernels::dot(v, v)); }

// Semismooth Newton for the alpha-equation at fixed u with an exact line search.
// `residual` holds R(alpha) on entry and exit.
void solve_phase(const P1Space& space, std::span<const double> u, std::vector<double>& alpha,
                 std::span<const double> alpha_prev, const PhaseFieldParams& pp, const SolverParams& params,
                 std::vector<double>& residual) {
  double r_norm = l2norm(residual);
  const auto n = alpha.size();
  std::vector<double> delta(n), trial(n);
  for (std::size_t it = 0; it < params.max_newton; ++it) {
    if (r_norm <= params.tol_nr) return;
    SparseSystem sys;
    sys.matrix = assemble_phase_jacobian(space, u, alpha, alpha_prev, pp);
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) sys.rhs[i] = -residual[i];
    std::fill(delta.begin(), delta.end(), 0.0);
    solve_spd(sys, delta, {params.cg_rel_tol, 0});

    // The alpha-subproblem is convex and piecewise quadratic along delta, so the
    // directional derivative g(t) = R(alpha + t delta) . delta is monotone and
    // piecewise linear; find its root by Illinois regula falsi on [0, 1].
    auto directional = [&](double t, std::vector<double>& r_out) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = alpha[i] + t * delta[i];
      r_out = assemble_phase_residual(space, u, trial, alpha_prev, pp);
      return kernels::dot(r_out, delta);
    };
    const double g0 = kernels::dot(residual, delta);
    std::vector<double> r_trial;
    double g = directional(1.0, r_trial);
    if (g0 < 0.0 && g > 0.0) {
      double t_lo = 0.0, g_lo = g0, t_hi = 1.0, g_hi = g;
      int side = 0;
      for (int k = 0; k < 30 && std::abs(g) > 1e-3 * std::abs(g0); ++k) {
        const double step = (t_lo * g_hi - t_hi * g_lo) / (g_hi - g_lo);
        g = directional(step, r_trial);
        if (g > 0.0) {
          t_hi = step;
          g_hi = g;
          if (side == 1) g_lo *= 0.5;
          side = 1;
        } else {
          t_lo = step;
          g_lo = g;
          if (side == -1) g_hi *= 0.5;
          side = -1;
        }
      }
    }
    alpha.swap(trial);
    residual.swap(r_trial);
    r_norm = l2norm(residual);
  }
  if (r_norm <= params.tol_nr) return;
  throw ConvergenceError("phase-field Newton iteration did not converge", r_norm, params.max_newton);
}

}  // namespace

FractureState staggered_step(const AntiplaneProblem& problem, const FractureState& prev, double ubar,
                             const SolverParams& params, StaggeredTrace* trace) {
  params.validate();
  const auto& space = problem.space();
  const auto pp = params.phase_params();
  if (prev.u.size() != space.node_count() || prev.alpha.size() != space.node_count())
    throw InvalidArgument("previous state does not match the mesh");

  FractureState state;
  state.applied = ubar;
  state.step = prev.step + 1;
  state.u = prev.u;
  state.alpha = prev.alpha;
  const std::vector<double>& alpha_prev = prev.alpha;
  const auto dir_values = problem.dirichlet_values(ubar);

  std::vector<double> residual = assemble_phase_residual(space, state.u, state.alpha, alpha_prev, pp);
  double r_norm = 0.0;
  for (std::size_t k = 1; k <= params.max_staggered; ++k) {
    solve_phase(space, state.u, state.alpha, alpha_prev, pp, params, residual);

    SparseSystem sys = assemble_weighted_stiffness(space, element_weights_degraded(space, state.alpha, pp.mu));
    apply_dirichlet(sys, problem.dirichlet_nodes(), dir_values);
    solve_spd(sys, state.u, {params.cg_rel_tol, 0});

    residual = assemble_phase_residual(space, state.u, state.alpha, alpha_prev, pp);
    r_norm = l2norm(residual);
    if (trace) {
      trace->total_energy.push_back(evaluate_energy(space, state.u, state.alpha, alpha_prev, pp).total);
      trace->residual.push_back(r_norm);
    }
    if (r_norm <= params.tol_stag) {
      state.staggered_iterations = k;
      state.stag_residual = r_norm;
      state.energy = evaluate_energy(space, state.u, state.alpha, alpha_prev, pp);
      return state;
    }
  }
  throw ConvergenceError("staggered iteration did not converge", r_norm, params.max_staggered);
}

std::vector<double> loading_schedule(double increment, std::size_t n_steps) {
  std::vector<double> s(n_steps);
  for (std::size_t n = 0; n < n_steps; ++n) s[n] = static_cast<double>(n + 1) * increment;
  return s;
}

std::vector<FractureState> run_quasistatic(const AntiplaneProblem& problem, const SolverParams& params,
                                           std::span<const double> schedule, const StepObserver& observer) {
  for (std::size_t n = 1; n < schedule.size(); ++n)
    if (!(schedule[n] >= schedule[n - 1])) throw InvalidArgument("loading schedule must be non-decreasing");
  std::vector<FractureState> trajectory;
  trajectory.reserve(schedule.size());
  FractureState state = problem.pristine();
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    try {
      state = staggered_step(problem, state, schedule[n], params);
    } catch (const ConvergenceError& e) {
      throw e.with_context("load step " + std::to_string(n + 1) + ": ");
    }
    state.step = n + 1;
    if (observer) observer(state);
    trajectory.push_back(state);
  }
  return trajectory;
}

}  // namespace sfrac
