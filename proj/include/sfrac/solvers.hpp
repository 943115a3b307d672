#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfrac/fem.hpp"
#include "sfrac/mesh.hpp"

namespace sfrac {

// ---------------------------------------------------------------------------
// Anti-plane shear phase-field model, staggered solution

struct SolverParams {
  double mu = 1.0;
  double G_c = 1.0;
  double ell = 0.04;
  WModel model = WModel::at2;
  double tol_ir = 0.01;
  std::optional<double> gamma_override;
  double tol_nr = 1e-6;
  double tol_stag = 1e-4;
  double load_increment = 0.1;
  std::size_t n_steps = 15;
  std::size_t max_staggered = 5000;
  std::size_t max_newton = 50;
  double cg_rel_tol = 1e-10;

  // G_c / ell * (1 / TOL_ir^2 - 1) unless overridden.
  double gamma() const;
  PhaseFieldParams phase_params() const;
  void validate() const;
};

struct FractureState {
  std::size_t step = 0;
  double applied = 0.0;
  std::vector<double> u;
  std::vector<double> alpha;
  EnergyBreakdown energy;
  std::size_t staggered_iterations = 0;
  double stag_residual = 0.0;
};

// Mesh plus cached assembly data and Dirichlet node lists.
class AntiplaneProblem {
 public:
  explicit AntiplaneProblem(TriMesh mesh);
  AntiplaneProblem(const AntiplaneProblem&) = delete;
  AntiplaneProblem& operator=(const AntiplaneProblem&) = delete;

  const TriMesh& mesh() const { return mesh_; }
  const P1Space& space() const { return space_; }
  std::span<const std::int32_t> dirichlet_nodes() const { return dir_nodes_; }
  // u = -ubar on dir_minus nodes and +ubar on dir_plus nodes.
  std::vector<double> dirichlet_values(double ubar) const;
  FractureState pristine() const;

 private:
  TriMesh mesh_;
  P1Space space_;
  std::vector<std::int32_t> dir_nodes_;
  std::vector<double> dir_sign_;
};

// Energy after every staggered iteration, for diagnostics and tests.
struct StaggeredTrace {
  std::vector<double> total_energy;
  std::vector<double> residual;
};

FractureState staggered_step(const AntiplaneProblem& problem, const FractureState& prev, double ubar,
                             const SolverParams& params, StaggeredTrace* trace = nullptr);

// ubar_n = n * load_increment for n = 1..n_steps
std::vector<double> loading_schedule(double increment, std::size_t n_steps);

using StepObserver = std::function<void(const FractureState&)>;

std::vector<FractureState> run_quasistatic(const AntiplaneProblem& problem, const SolverParams& params,
                                           std::span<const double> schedule, const StepObserver& observer = {});

// ---------------------------------------------------------------------------
// 1D bar

enum class ProfileKind { double_v, double_u, u_v, table };

std::string to_string(ProfileKind k);
ProfileKind profile_kind_from_string(const std::string& s);

// Dissipation density G_cA(x) on [0, 6].
double dissipation_profile(ProfileKind kind, double x);

struct DissipationProfile {
  ProfileKind kind = ProfileKind::double_v;
  // Only for kind == table: piecewise-linear through (xs, values).
  std::vector<double> xs;
  std::vector<double> values;

  double operator()(double x) const;
  std::vector<double> sample(const IntervalMesh& grid) const;
};

struct BarParams {
  double youngs_area = 1e4;
  double ell = 0.006;
  double stag_tol = 1e-4;
  std::size_t max_staggered = 20000;
};

struct BarSolution {
  std::vector<double> u;
  std::vector<double> alpha;
  std::vector<EnergyBreakdown> energy;  // one entry per load step
  std::vector<std::size_t> iterations;  // staggered iterations per step
};

// Staggered alternate minimisation with u(0) = 0 and u(L) = ubar_n; stops each step
// when the Euclidean norm of the nodal alpha increment drops below stag_tol.
BarSolution solve_bar_phasefield(const IntervalMesh& grid, std::span<const double> dissipation,
                                 const BarParams& params, std::span<const double> schedule);

struct CrackPoint {
  std::size_t index = 0;
  double position = 0.0;
};

// Global minimiser of the nodal dissipation; ties go to the lowest index.
CrackPoint sharp_crack_location(std::span<const double> samples, std::span<const double> grid_nodes);
std::size_t sharp_crack_location(std::span<const double> samples);

// ---------------------------------------------------------------------------
// Double-well toy: global minimiser of x^2 (1-x)^2 + eta*q*x.

double double_well_energy(double x, double eta_q);
double double_well_minimize(double eta, double q);

}  // namespace sfrac
