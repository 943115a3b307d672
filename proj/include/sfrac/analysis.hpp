#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sfrac/mesh.hpp"

namespace sfrac {

enum class CrackClass { type1, type2, type3, other, failed };

std::string to_string(CrackClass c);
CrackClass crack_class_from_string(const std::string& s);

struct ClassifierOptions {
  double threshold = 0.9;
  // Hole contact band and slit-tip seed radius; 0 means 2 * mesh.h_min.
  double contact_width = 0.0;
};

// Type 1: damaged path from the slit tip reaches the bottom edge without touching
// the hole. Type 2 / Type 3: it touches the hole and reaches the bottom / left
// edge; damaged nodes anywhere along the hole boundary continue the path. Anything
// else is Other. `hole_radius` gives the (possibly perturbed)
// radius as a function of the polar angle; defaults to the nominal radius.
CrackClass classify_crack_2d(std::span<const double> alpha, const TriMesh& mesh,
                             const std::function<double(double)>& hole_radius = {},
                             const ClassifierOptions& options = {});

// Index into `attractors` of the crack position argmax(alpha) when it lies within
// `window` of that attractor and alpha there is at least `threshold`.
std::optional<std::size_t> classify_crack_1d(std::span<const double> alpha, std::span<const double> grid_nodes,
                                             std::span<const double> attractors, double window = 0.5,
                                             double threshold = 0.9);

// Position of the largest nodal value, lowest index on ties.
double argmax_position(std::span<const double> values, std::span<const double> grid_nodes);

// s of the largest interpolated alpha among in-domain probe samples; lowest s on ties
// (values within 1e-12 relative count as tied).
double intersection_coordinate(std::span<const double> alpha, const TriMesh& mesh, const LineProbe& probe);

struct Density1D {
  std::vector<double> s;
  std::vector<double> f;
  double bandwidth = 0.0;

  // Linear interpolation on the grid, zero outside it.
  double operator()(double x) const;
  double integral() const;
};

struct KdeOptions {
  std::optional<double> bandwidth;  // Silverman's rule when absent
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 512;
};

// Gaussian kernel density, renormalized to unit trapezoid integral on the grid.
Density1D kde_1d(std::span<const double> samples, const KdeOptions& options = {});

// 1.06 * sigma * M^(-1/5) with the unbiased sample standard deviation.
double silverman_bandwidth(std::span<const double> samples);

inline constexpr double kDensityFloor = 1e-12;

// posterior_i = f_i(x) p_i / f_y(x), renormalized to sum to one.
std::vector<double> bayes_condition(std::span<const double> priors, std::span<const double> conditional_at_x,
                                    double total_at_x);
std::vector<double> bayes_condition(std::span<const double> priors, std::span<const Density1D> conditionals,
                                    const Density1D& total, double x);

// Uniform right-closed bins (a, b] over [lo, hi], the first bin also closed at lo;
// samples outside are ignored.
std::vector<std::size_t> histogram(std::span<const double> samples, std::size_t n_bins, double lo, double hi);

}  // namespace sfrac
