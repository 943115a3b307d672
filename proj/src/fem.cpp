#include "sfrac/fem.hpp"

#include <algorithm>
#include <cmath>

#include "sfrac/errors.hpp"
#include "sfrac/kernels.hpp"

namespace sfrac {

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != n || y.size() != n) throw InvalidArgument("CsrMatrix::multiply: size mismatch");
  kernels::active_table().spmv(row_ptr.data(), cols.data(), values.data(), x.data(), y.data(), n);
}

double CsrMatrix::at(std::size_t i, std::size_t j) const {
  const auto begin = cols.begin() + row_ptr[i], end = cols.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, static_cast<std::int32_t>(j));
  if (it == end || *it != static_cast<std::int32_t>(j)) return 0.0;
  return values[static_cast<std::size_t>(it - cols.begin())];
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = at(i, i);
  return d;
}

void apply_dirichlet(SparseSystem& system, std::span<const std::int32_t> dofs, std::span<const double> values) {
  if (dofs.size() != values.size()) throw InvalidArgument("apply_dirichlet: dofs/values mismatch");
  auto& A = system.matrix;
  system.constrained.resize(A.n, 0);
  std::vector<double> g(A.n, 0.0);
  for (std::size_t k = 0; k < dofs.size(); ++k) {
    system.constrained[dofs[k]] = 1;
    g[dofs[k]] = values[k];
  }
  for (std::size_t i = 0; i < A.n; ++i) {
    for (std::int32_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      const auto j = static_cast<std::size_t>(A.cols[k]);
      if (system.constrained[i]) {
        A.values[k] = (i == j) ? 1.0 : 0.0;
      } else if (system.constrained[j]) {
        system.rhs[i] -= A.values[k] * g[j];
        A.values[k] = 0.0;
      }
    }
  }
  for (std::size_t i = 0; i < A.n; ++i)
    if (system.constrained[i]) system.rhs[i] = g[i];
}

double c_w(WModel model) { return model == WModel::at1 ? 8.0 / 3.0 : 2.0; }

std::string to_string(WModel model) { return model == WModel::at1 ? "AT1" : "AT2"; }

WModel w_model_from_string(const std::string& s) {
  if (s == "AT1") return WModel::at1;
  if (s == "AT2") return WModel::at2;
  throw InvalidArgument("unknown w-model '" + s + "' (expected AT1 or AT2)");
}

namespace {

double w_value(WModel m, double a) { return m == WModel::at1 ? a : a * a; }
double w_prime(WModel m, double a) { return m == WModel::at1 ? 1.0 : 2.0 * a; }
double w_second(WModel m) { return m == WModel::at1 ? 0.0 : 2.0; }

void check_field(const P1Space& space, std::span<const double> f, const char* name) {
  if (f.size() != space.node_count())
    throw InvalidArgument(std::string("field '") + name + "' does not match the mesh");
}

}  // namespace

P1Space::P1Space(const TriMesh& mesh) : mesh_(&mesh) {
  const auto nt = mesh.triangle_count();
  area_.resize(nt);
  gx_.resize(nt);
  gy_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    const Point2 p0 = mesh.nodes[tri[0]], p1 = mesh.nodes[tri[1]], p2 = mesh.nodes[tri[2]];
    const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
    if (!(det > 0.0)) throw GeometryError("P1Space: non-positive triangle area");
    area_[t] = 0.5 * det;
    gx_[t] = {(p1.y - p2.y) / det, (p2.y - p0.y) / det, (p0.y - p1.y) / det};
    gy_[t] = {(p2.x - p1.x) / det, (p0.x - p2.x) / det, (p1.x - p0.x) / det};
  }

  const auto n = mesh.node_count();
  std::vector<std::vector<std::int32_t>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].push_back(static_cast<std::int32_t>(i));
  for (const auto& tri : mesh.triangles)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) rows[tri[a]].push_back(tri[b]);
  row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    row_ptr_[i + 1] = row_ptr_[i] + static_cast<std::int32_t>(r.size());
  }
  cols_.reserve(static_cast<std::size_t>(row_ptr_[n]));
  for (const auto& r : rows) cols_.insert(cols_.end(), r.begin(), r.end());

  slots_.resize(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const auto& tri = mesh.triangles[t];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const auto begin = cols_.begin() + row_ptr_[tri[a]], end = cols_.begin() + row_ptr_[tri[a] + 1];
        slots_[t][3 * a + b] = static_cast<std::int32_t>(std::lower_bound(begin, end, tri[b]) - cols_.begin());
      }
  }
}

double P1Space::centroid_value(std::size_t t, std::span<const double> f) const {
  const auto& tri = mesh_->triangles[t];
  return (f[tri[0]] + f[tri[1]] + f[tri[2]]) / 3.0;
}

Point2 P1Space::gradient(std::size_t t, std::span<const double> f) const {
  const auto& tri = mesh_->triangles[t];
  const auto& bx = gx_[t];
  const auto& by = gy_[t];
  return {bx[0] * f[tri[0]] + bx[1] * f[tri[1]] + bx[2] * f[tri[2]],
          by[0] * f[tri[0]] + by[1] * f[tri[1]] + by[2] * f[tri[2]]};
}

CsrMatrix P1Space::zero_matrix() const {
  CsrMatrix m;
  m.n = node_count();
  m.row_ptr = row_ptr_;
  m.cols = cols_;
  m.values.assign(cols_.size(), 0.0);
  return m;
}

void P1Space::scatter(CsrMatrix& matrix, std::size_t t, const std::array<double, 9>& local) const {
  const auto& s = slots_[t];
  for (int k = 0; k < 9; ++k) matrix.values[s[k]] += local[k];
}

std::array<double, 9> P1Space::element_stiffness(std::size_t t) const {
  std::array<double, 9> k{};
  const auto& bx = gx_[t];
  const auto& by = gy_[t];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) k[3 * a + b] = area_[t] * (bx[a] * bx[b] + by[a] * by[b]);
  return k;
}

SparseSystem assemble_weighted_stiffness(const P1Space& space, std::span<const double> weight) {
  if (weight.size() != space.triangle_count()) throw InvalidArgument("weight must have one entry per triangle");
  SparseSystem sys;
  sys.matrix = space.zero_matrix();
  sys.rhs.assign(space.node_count(), 0.0);
  sys.constrained.assign(space.node_count(), 0);
  for (std::size_t t = 0; t < space.triangle_count(); ++t) {
    if (weight[t] < 0.0) throw InvalidArgument("stiffness weight must be non-negative");
    auto k = space.element_stiffness(t);
    for (auto& v : k) v *= weight[t];
    space.scatter(sys.matrix, t, k);
  }
  return sys;
}

std::vector<double> element_weights_degraded(const P1Space& space, std::span<const double> alpha, double mu) {
  std::vector<double> w(space.triangle_count());
  for (std::size_t t = 0; t < w.size(); ++t) {
    const double g = 1.0 - space.centroid_value(t, alpha);
    w[t] = g * g * mu;
  }
  return w;
}

std::vector<double> assemble_displacement_residual(const P1Space& space, std::span<const double> u,
                                                   std::span<const double> alpha, const PhaseFieldParams& params) {
  check_field(space, u, "u");
  check_field(space, alpha, "alpha");
  const auto sys = assemble_weighted_stiffness(space, element_weights_degraded(space, alpha, params.mu));
  std::vector<double> r(space.node_count());
  sys.matrix.multiply(u, r);
  return r;
}

std::vector<double> assemble_phase_residual(const P1Space& space, std::span<const double> u,
                                            std::span<const double> alpha, std::span<const double> alpha_prev,
                                            const PhaseFieldParams& p) {
  check_field(space, u, "u");
  check_field(space, alpha, "alpha");
  check_field(space, alpha_prev, "alpha_prev");
  const double scale = p.G_c / c_w(p.model);
  std::vector<double> r(space.node_count(), 0.0);
  const auto& mesh = space.mesh();
  for (std::size_t t = 0; t < space.triangle_count(); ++t) {
    const auto& tri = mesh.triangles[t];
    const double A = space.area(t);
    const double ac = space.centroid_value(t, alpha);
    const Point2 gu = space.gradient(t, u);
    const Point2 ga = space.gradient(t, alpha);
    const double pointwise = -p.mu * (1.0 - ac) * (gu.x * gu.x + gu.y * gu.y) + scale * w_prime(p.model, ac) / p.ell;
    const auto& bx = space.grad_x(t);
    const auto& by = space.grad_y(t);
    for (int a = 0; a < 3; ++a) {
      const double penalty = p.gamma * std::min(0.0, alpha[tri[a]] - alpha_prev[tri[a]]);
      r[tri[a]] += A * ((pointwise + penalty) / 3.0 + 2.0 * scale * p.ell * (ga.x * bx[a] + ga.y * by[a]));
    }
  }
  return r;
}

CsrMatrix assemble_phase_jacobian(const P1Space& space, std::span<const double> u, std::span<const double> alpha,
                                  std::span<const double> alpha_prev, const PhaseFieldParams& p) {
  check_field(space, u, "u");
  check_field(space, alpha, "alpha");
  check_field(space, alpha_prev, "alpha_prev");
  const double scale = p.G_c / c_w(p.model);
  CsrMatrix J = space.zero_matrix();
  for (std::size_t t = 0; t < space.triangle_count(); ++t) {
    const auto& tri = space.mesh().triangles[t];
    const double A = space.area(t);
    const Point2 gu = space.gradient(t, u);
    const double reaction = p.mu * (gu.x * gu.x + gu.y * gu.y) + scale * w_second(p.model) / p.ell;
    auto k = space.element_stiffness(t);
    for (auto& v : k) v = 2.0 * scale * p.ell * v + A * reaction / 9.0;
    for (int a = 0; a < 3; ++a)
      if (alpha[tri[a]] < alpha_prev[tri[a]]) k[4 * a] += A * p.gamma / 3.0;
    space.scatter(J, t, k);
  }
  return J;
}

EnergyBreakdown evaluate_energy(const P1Space& space, std::span<const double> u, std::span<const double> alpha,
                                std::span<const double> alpha_prev, const PhaseFieldParams& p) {
  check_field(space, u, "u");
  check_field(space, alpha, "alpha");
  check_field(space, alpha_prev, "alpha_prev");
  const double scale = p.G_c / c_w(p.model);
  EnergyBreakdown e;
  for (std::size_t t = 0; t < space.triangle_count(); ++t) {
    const double A = space.area(t);
    const auto& tri = space.mesh().triangles[t];
    const double ac = space.centroid_value(t, alpha);
    const Point2 gu = space.gradient(t, u);
    const Point2 ga = space.gradient(t, alpha);
    const double g = 1.0 - ac;
    e.elastic += 0.5 * A * g * g * p.mu * (gu.x * gu.x + gu.y * gu.y);
    e.fracture += scale * A * (w_value(p.model, ac) / p.ell + p.ell * (ga.x * ga.x + ga.y * ga.y));
    for (auto n : tri) {
      const double neg = std::min(0.0, alpha[n] - alpha_prev[n]);
      e.penalty += 0.5 * p.gamma * A / 3.0 * neg * neg;
    }
  }
  e.total = e.elastic + e.fracture + e.penalty - e.external;
  return e;
}

}  // namespace sfrac
