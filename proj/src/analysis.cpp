#include "sfrac/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "sfrac/errors.hpp"

namespace sfrac {

std::string to_string(CrackClass c) {
  switch (c) {
    case CrackClass::type1: return "type1";
    case CrackClass::type2: return "type2";
    case CrackClass::type3: return "type3";
    case CrackClass::other: return "other";
    case CrackClass::failed: return "failed";
  }
  return "other";
}

CrackClass crack_class_from_string(const std::string& s) {
  if (s == "type1") return CrackClass::type1;
  if (s == "type2") return CrackClass::type2;
  if (s == "type3") return CrackClass::type3;
  if (s == "other") return CrackClass::other;
  if (s == "failed") return CrackClass::failed;
  throw InvalidArgument("unknown crack class '" + s + "'");
}

CrackClass classify_crack_2d(std::span<const double> alpha, const TriMesh& mesh,
                             const std::function<double(double)>& hole_radius, const ClassifierOptions& options) {
  const auto n = mesh.node_count();
  if (alpha.size() != n) throw InvalidArgument("phase field does not match the mesh");
  for (double a : alpha)
    if (!(a >= -0.1 && a <= 1.1)) throw InvalidArgument("phase field outside [-0.1, 1.1]");
  const double width = options.contact_width > 0.0 ? options.contact_width : 2.0 * mesh.h_min;
  if (!(width > 0.0)) throw InvalidArgument("classifier needs a positive contact width");

  const auto& g = mesh.geometry;
  const Point2 tip = g.slit_tip();
  std::vector<char> seen(n, 0);
  std::deque<std::int32_t> queue;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] >= options.threshold && norm(mesh.nodes[i] - tip) <= width) {
      seen[i] = 1;
      queue.push_back(static_cast<std::int32_t>(i));
    }
  }
  if (queue.empty()) return CrackClass::other;

  auto near_hole = [&](std::size_t i) {
    const Point2 d = mesh.nodes[i] - g.hole_center;
    const double r = hole_radius ? hole_radius(std::atan2(d.y, d.x)) : g.radius;
    return norm(d) - r <= width;
  };
  auto visit = [&](std::size_t j) {
    if (!seen[j] && alpha[j] >= options.threshold) {
      seen[j] = 1;
      queue.push_back(static_cast<std::int32_t>(j));
    }
  };

  const auto adjacency = node_neighbours(mesh);
  const double edge_tol = mesh.h_min;
  bool contact = false, bottom = false, left = false;
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    const Point2 p = mesh.nodes[i];
    if (!contact && near_hole(i)) {
      // A crack that enters the hole continues from wherever it leaves it, so
      // every damaged node along the hole boundary joins the path.
      contact = true;
      for (std::size_t j = 0; j < n; ++j)
        if (near_hole(j)) visit(j);
    }
    if (p.y <= edge_tol) bottom = true;
    if (p.x <= edge_tol) left = true;
    for (auto j : adjacency[i]) visit(static_cast<std::size_t>(j));
  }
  if (bottom == left) return CrackClass::other;
  if (!contact) return bottom ? CrackClass::type1 : CrackClass::other;
  return bottom ? CrackClass::type2 : CrackClass::type3;
}

double argmax_position(std::span<const double> values, std::span<const double> grid_nodes) {
  if (values.empty() || values.size() != grid_nodes.size())
    throw InvalidArgument("argmax_position needs matching non-empty inputs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return grid_nodes[best];
}

std::optional<std::size_t> classify_crack_1d(std::span<const double> alpha, std::span<const double> grid_nodes,
                                             std::span<const double> attractors, double window, double threshold) {
  if (alpha.empty() || alpha.size() != grid_nodes.size())
    throw InvalidArgument("classify_crack_1d needs matching non-empty inputs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < alpha.size(); ++i)
    if (alpha[i] > alpha[best]) best = i;
  if (alpha[best] < threshold) return std::nullopt;
  const double x = grid_nodes[best];
  std::optional<std::size_t> label;
  double closest = window;
  for (std::size_t k = 0; k < attractors.size(); ++k) {
    const double dist = std::abs(x - attractors[k]);
    if (dist < closest) {
      closest = dist;
      label = k;
    }
  }
  return label;
}

double intersection_coordinate(std::span<const double> alpha, const TriMesh& mesh, const LineProbe& probe) {
  if (alpha.size() != mesh.node_count()) throw InvalidArgument("phase field does not match the mesh");
  std::optional<double> best_s;
  double best = 0.0;
  for (std::size_t k = 0; k < probe.samples.size(); ++k) {
    if (!probe.samples[k]) continue;
    const double v = interpolate(mesh, *probe.samples[k], alpha);
    // Interpolation rounding must not break ties between equal nodal values.
    if (!best_s || v > best + 1e-12 * std::max(1.0, std::abs(best))) {
      best = v;
      best_s = probe.s[k];
    }
  }
  if (!best_s) throw InvalidArgument("line probe has no samples inside the domain");
  return *best_s;
}

double Density1D::operator()(double x) const {
  if (s.empty() || x < s.front() || x > s.back()) return 0.0;
  if (s.size() == 1) return f.front();
  auto it = std::upper_bound(s.begin(), s.end(), x);
  const auto j = std::min<std::size_t>(static_cast<std::size_t>(it - s.begin()), s.size() - 1);
  const auto i = j - 1;
  const double t = (x - s[i]) / (s[j] - s[i]);
  return (1.0 - t) * f[i] + t * f[j];
}

double Density1D::integral() const {
  double sum = 0.0;
  for (std::size_t k = 1; k < s.size(); ++k) sum += 0.5 * (s[k] - s[k - 1]) * (f[k] + f[k - 1]);
  return sum;
}

double silverman_bandwidth(std::span<const double> samples) {
  const auto m = samples.size();
  if (m < 2) return 0.0;
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(m);
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double sigma = std::sqrt(ss / static_cast<double>(m - 1));
  return 1.06 * sigma * std::pow(static_cast<double>(m), -0.2);
}

Density1D kde_1d(std::span<const double> samples, const KdeOptions& options) {
  if (samples.empty()) throw InvalidArgument("kde_1d needs at least one sample");
  if (options.points < 2 || !(options.hi > options.lo)) throw InvalidArgument("kde_1d needs a proper grid");
  Density1D d;
  const double ds = (options.hi - options.lo) / static_cast<double>(options.points - 1);
  d.s.resize(options.points);
  for (std::size_t k = 0; k < options.points; ++k) d.s[k] = options.lo + ds * static_cast<double>(k);
  d.s.back() = options.hi;

  double h = options.bandwidth ? *options.bandwidth : silverman_bandwidth(samples);
  if (!(h > 0.0) || !std::isfinite(h)) h = ds;
  d.bandwidth = h;

  const double scale = 1.0 / (static_cast<double>(samples.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  d.f.assign(options.points, 0.0);
  for (std::size_t k = 0; k < options.points; ++k) {
    double sum = 0.0;
    for (double x : samples) {
      const double z = (d.s[k] - x) / h;
      sum += std::exp(-0.5 * z * z);
    }
    d.f[k] = scale * sum;
  }
  const double total = d.integral();
  if (total > 0.0)
    for (double& v : d.f) v /= total;
  return d;
}

std::vector<double> bayes_condition(std::span<const double> priors, std::span<const double> conditional_at_x,
                                    double total_at_x) {
  if (priors.size() != conditional_at_x.size()) throw InvalidArgument("one conditional density per prior");
  if (!(total_at_x > kDensityFloor)) throw UndefinedObservation("observation has zero evidence density");
  std::vector<double> post(priors.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < post.size(); ++i) {
    post[i] = conditional_at_x[i] * priors[i] / total_at_x;
    sum += post[i];
  }
  if (!(sum > 0.0)) throw UndefinedObservation("no label is compatible with the observation");
  for (double& p : post) p /= sum;
  return post;
}

std::vector<double> bayes_condition(std::span<const double> priors, std::span<const Density1D> conditionals,
                                    const Density1D& total, double x) {
  std::vector<double> at(conditionals.size());
  for (std::size_t i = 0; i < at.size(); ++i) at[i] = conditionals[i](x);
  return bayes_condition(priors, at, total(x));
}

std::vector<std::size_t> histogram(std::span<const double> samples, std::size_t n_bins, double lo, double hi) {
  if (n_bins == 0 || !(hi > lo)) throw InvalidArgument("histogram needs at least one bin and hi > lo");
  std::vector<std::size_t> counts(n_bins, 0);
  const double w = (hi - lo) / static_cast<double>(n_bins);
  for (double x : samples) {
    if (!(x >= lo && x <= hi)) continue;
    // Bins are (lo + k w, lo + (k+1) w], the first one closed at lo.
    const double t = std::ceil((x - lo) / w);
    const auto k = t <= 1.0 ? std::size_t{0} : static_cast<std::size_t>(t) - 1;
    counts[std::min(k, n_bins - 1)] += 1;
  }
  return counts;
}

}  // namespace sfrac
