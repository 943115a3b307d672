#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sfrac/mesh.hpp"
#include "sfrac/solvers.hpp"

namespace sfrac {

// Per-realization generator. The engine is seeded through std::seed_seq from the
// 32-bit halves of (master_seed, index), so stream i does not depend on which
// worker runs it or in what order.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  // (next >> 11) * 2^-53, in [0, 1).
  double uniform01();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

Rng rng_for_realization(std::uint64_t master_seed, std::uint64_t realization_index);

enum class PerturbationKind { none, white_noise_dissipation, fourier_radius };

std::string to_string(PerturbationKind k);
PerturbationKind perturbation_kind_from_string(const std::string& s);

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::none;
  double eta = 0.0;
  int harmonics = 6;
  // Empty means 1/j for j = 1..harmonics.
  std::vector<double> c;
  std::vector<double> s;
  std::uint64_t master_seed = 0;

  std::vector<double> cos_coefficients() const;
  std::vector<double> sin_coefficients() const;
  void validate() const;
};

// profile(x_i) + eta * q_i with q_i ~ U[-1/2, 1/2], one draw per node in order.
std::vector<double> white_noise_perturb(const DissipationProfile& profile, const IntervalMesh& grid, double eta,
                                        Rng& rng);

struct RadiusRealization {
  double radius = 0.0;
  double eta = 0.0;
  std::vector<double> c;
  std::vector<double> s;
  std::vector<double> y;  // y_1..y_2J

  // R + eta * sum_j (c_j y_{2j-1} cos(j phi) + s_j y_{2j} sin(j phi))
  double operator()(double phi) const;
  // Unscaled perturbation sum at phi.
  double perturbation(double phi) const;
};

// Requires eta * sum_j (|c_j| + |s_j|) < radius.
RadiusRealization sample_radius(const PerturbationSpec& spec, double radius, Rng& rng);

// Same evaluator with caller-supplied draws.
RadiusRealization make_radius(const PerturbationSpec& spec, double radius, std::vector<double> y);

// Pointwise variance of the unscaled perturbation: (1/3) sum_j (c_j^2 cos^2 + s_j^2 sin^2).
double radius_perturbation_variance(const PerturbationSpec& spec, double phi);

}  // namespace sfrac
