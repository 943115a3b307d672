#pragma once
// P1 finite elements on TriMesh (anti-plane shear) and IntervalMesh (bar).
//
// Element integrals use the one-point centroid rule, including the local
// dissipation w(alpha); the irreversibility penalty uses the vertex rule so that
// alpha >= alpha_prev is enforced node by node. Either rule defines the discrete
// energy whose exact gradient the residual routines return.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sfrac/mesh.hpp"

namespace sfrac {

struct CsrMatrix {
  std::size_t n = 0;
  std::vector<std::int32_t> row_ptr;
  std::vector<std::int32_t> cols;
  std::vector<double> values;

  void multiply(std::span<const double> x, std::span<double> y) const;
  // Stored entry or 0 when (i, j) is outside the pattern.
  double at(std::size_t i, std::size_t j) const;
  std::vector<double> diagonal() const;
};

struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  std::vector<std::uint8_t> constrained;
};

// Symmetric elimination: constrained rows and columns are zeroed, the diagonal
// set to one, and the known values moved to the right-hand side.
void apply_dirichlet(SparseSystem& system, std::span<const std::int32_t> dofs, std::span<const double> values);

struct EnergyBreakdown {
  double elastic = 0.0;
  double fracture = 0.0;
  double penalty = 0.0;
  double external = 0.0;
  double total = 0.0;
};

enum class WModel { at1, at2 };

double c_w(WModel model);
std::string to_string(WModel model);
WModel w_model_from_string(const std::string& s);

struct PhaseFieldParams {
  double mu = 1.0;
  double G_c = 1.0;
  double ell = 0.04;
  double gamma = 0.0;  // irreversibility penalty weight
  WModel model = WModel::at2;
};

// Geometry cache for P1 assembly on a fixed mesh. Holds a pointer to the mesh,
// which must outlive it.
class P1Space {
 public:
  explicit P1Space(const TriMesh& mesh);

  const TriMesh& mesh() const { return *mesh_; }
  std::size_t node_count() const { return mesh_->node_count(); }
  std::size_t triangle_count() const { return mesh_->triangle_count(); }
  double area(std::size_t t) const { return area_[t]; }
  // Constant gradients of the three hat functions on triangle t.
  const std::array<double, 3>& grad_x(std::size_t t) const { return gx_[t]; }
  const std::array<double, 3>& grad_y(std::size_t t) const { return gy_[t]; }

  double centroid_value(std::size_t t, std::span<const double> field) const;
  Point2 gradient(std::size_t t, std::span<const double> field) const;

  // Empty-valued matrix with the node adjacency pattern.
  CsrMatrix zero_matrix() const;
  // Adds a 3x3 element matrix (row-major) for triangle t.
  void scatter(CsrMatrix& matrix, std::size_t t, const std::array<double, 9>& local) const;
  // Local stiffness integral of grad(phi_i) . grad(phi_j) on triangle t.
  std::array<double, 9> element_stiffness(std::size_t t) const;

 private:
  const TriMesh* mesh_;
  std::vector<double> area_;
  std::vector<std::array<double, 3>> gx_, gy_;
  std::vector<std::int32_t> row_ptr_, cols_;
  std::vector<std::array<std::int32_t, 9>> slots_;
};

// K_ij = sum_T weight(T) * int_T grad(phi_i) . grad(phi_j)
SparseSystem assemble_weighted_stiffness(const P1Space& space, std::span<const double> weight);

// Gradient of the discrete energy with respect to u (elastic part only).
std::vector<double> assemble_displacement_residual(const P1Space& space, std::span<const double> u,
                                                   std::span<const double> alpha, const PhaseFieldParams& params);

// Gradient of the discrete energy with respect to alpha: driving, regularisation and
// penalty terms, with <y>_- = min(0, y).
std::vector<double> assemble_phase_residual(const P1Space& space, std::span<const double> u,
                                            std::span<const double> alpha, std::span<const double> alpha_prev,
                                            const PhaseFieldParams& params);

// Generalised (semismooth) derivative of assemble_phase_residual. The penalty
// adds gamma * (lumped nodal area) on the diagonal where alpha < alpha_prev.
CsrMatrix assemble_phase_jacobian(const P1Space& space, std::span<const double> u, std::span<const double> alpha,
                                  std::span<const double> alpha_prev, const PhaseFieldParams& params);

EnergyBreakdown evaluate_energy(const P1Space& space, std::span<const double> u, std::span<const double> alpha,
                                std::span<const double> alpha_prev, const PhaseFieldParams& params);

std::vector<double> element_weights_degraded(const P1Space& space, std::span<const double> alpha, double mu);

struct SolveOptions {
  double rel_tol = 1e-10;
  std::size_t max_iter = 0;  // 0 selects 20 * n
};

struct SolveReport {
  std::size_t iterations = 0;
  double residual_norm = 0.0;
};

// Jacobi-preconditioned conjugate gradients. x holds the initial guess on entry.
// Throws ConvergenceError when max_iter is exceeded and InvalidArgument when the
// matrix is detected to be indefinite.
SolveReport solve_spd(const SparseSystem& system, std::span<double> x, const SolveOptions& options = {});
std::vector<double> solve_spd(const SparseSystem& system, const SolveOptions& options = {});

// ---------------------------------------------------------------------------
// 1D bar: E = 1/2 int (1-alpha)^2 YA (u')^2 + 1/2 int G_cA (alpha^2/ell + ell (alpha')^2)

struct Tridiagonal {
  std::vector<double> lower;  // lower[i] couples row i with i-1; lower[0] unused
  std::vector<double> diag;
  std::vector<double> upper;  // upper[i] couples row i with i+1; upper[n-1] unused

  explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
};

// Thomas algorithm; throws InvalidArgument on a zero pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& matrix, std::span<const double> rhs);

struct BarCoefficients {
  double youngs_area = 1e4;
  double ell = 0.006;
  std::span<const double> dissipation;  // nodal G_cA values, linearly interpolated
};

EnergyBreakdown evaluate_bar_energy(const IntervalMesh& mesh, std::span<const double> u,
                                    std::span<const double> alpha, const BarCoefficients& coeffs);

std::vector<double> bar_displacement_residual(const IntervalMesh& mesh, std::span<const double> u,
                                              std::span<const double> alpha, const BarCoefficients& coeffs);
std::vector<double> bar_phase_residual(const IntervalMesh& mesh, std::span<const double> u,
                                       std::span<const double> alpha, const BarCoefficients& coeffs);

// Linear alpha-equation at fixed u: matrix * alpha = rhs.
struct BarPhaseSystem {
  Tridiagonal matrix;
  std::vector<double> rhs;
};
BarPhaseSystem assemble_bar_phase_system(const IntervalMesh& mesh, std::span<const double> u,
                                         const BarCoefficients& coeffs);
Tridiagonal assemble_bar_stiffness(const IntervalMesh& mesh, std::span<const double> alpha,
                                   const BarCoefficients& coeffs);

}  // namespace sfrac
