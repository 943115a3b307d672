#include "sfrac/stochastic.hpp"

#include <cmath>

#include "sfrac/errors.hpp"

namespace sfrac {

namespace {

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t index) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
}

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t index) {
  auto seq = make_seed(master_seed, index);
  engine_.seed(seq);
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

Rng rng_for_realization(std::uint64_t master_seed, std::uint64_t realization_index) {
  return Rng(master_seed, realization_index);
}

std::string to_string(PerturbationKind k) {
  switch (k) {
    case PerturbationKind::none: return "none";
    case PerturbationKind::white_noise_dissipation: return "white_noise_dissipation";
    case PerturbationKind::fourier_radius: return "fourier_radius";
  }
  return "none";
}

PerturbationKind perturbation_kind_from_string(const std::string& s) {
  if (s == "none") return PerturbationKind::none;
  if (s == "white_noise_dissipation") return PerturbationKind::white_noise_dissipation;
  if (s == "fourier_radius") return PerturbationKind::fourier_radius;
  throw InvalidArgument("unknown perturbation kind '" + s + "'");
}

namespace {

std::vector<double> coefficients(const std::vector<double>& given, int harmonics) {
  if (!given.empty()) return given;
  std::vector<double> v(static_cast<std::size_t>(std::max(harmonics, 0)));
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = 1.0 / static_cast<double>(j + 1);
  return v;
}

}  // namespace

std::vector<double> PerturbationSpec::cos_coefficients() const { return coefficients(c, harmonics); }
std::vector<double> PerturbationSpec::sin_coefficients() const { return coefficients(s, harmonics); }

void PerturbationSpec::validate() const {
  if (!(eta >= 0.0)) throw InvalidArgument("perturbation magnitude must be non-negative");
  if (kind == PerturbationKind::fourier_radius) {
    if (harmonics < 1) throw InvalidArgument("radius perturbation needs at least one harmonic");
    if (!c.empty() && c.size() != static_cast<std::size_t>(harmonics))
      throw InvalidArgument("cos coefficients must have one entry per harmonic");
    if (!s.empty() && s.size() != static_cast<std::size_t>(harmonics))
      throw InvalidArgument("sin coefficients must have one entry per harmonic");
  }
}

std::vector<double> white_noise_perturb(const DissipationProfile& profile, const IntervalMesh& grid, double eta,
                                        Rng& rng) {
  if (!(eta >= 0.0)) throw InvalidArgument("perturbation magnitude must be non-negative");
  std::vector<double> v = profile.sample(grid);
  for (double& g : v) g += eta * (rng.uniform01() - 0.5);
  return v;
}

double RadiusRealization::perturbation(double phi) const {
  double sum = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = static_cast<double>(j + 1);
    sum += c[j] * y[2 * j] * std::cos(k * phi) + s[j] * y[2 * j + 1] * std::sin(k * phi);
  }
  return sum;
}

double RadiusRealization::operator()(double phi) const { return radius + eta * perturbation(phi); }

RadiusRealization make_radius(const PerturbationSpec& spec, double radius, std::vector<double> y) {
  spec.validate();
  RadiusRealization r;
  r.radius = radius;
  r.eta = spec.eta;
  r.c = spec.cos_coefficients();
  r.s = spec.sin_coefficients();
  if (y.size() != 2 * r.c.size()) throw InvalidArgument("radius draws must have 2J entries");
  double bound = 0.0;
  for (std::size_t j = 0; j < r.c.size(); ++j) bound += std::abs(r.c[j]) + std::abs(r.s[j]);
  if (!(spec.eta * bound < radius)) throw InvalidArgument("radius perturbation could make the radius non-positive");
  r.y = std::move(y);
  return r;
}

RadiusRealization sample_radius(const PerturbationSpec& spec, double radius, Rng& rng) {
  const auto n = 2 * spec.cos_coefficients().size();
  std::vector<double> y(n);
  for (double& v : y) v = rng.uniform(-1.0, 1.0);
  return make_radius(spec, radius, std::move(y));
}

double radius_perturbation_variance(const PerturbationSpec& spec, double phi) {
  const auto c = spec.cos_coefficients();
  const auto s = spec.sin_coefficients();
  double v = 0.0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double k = static_cast<double>(j + 1);
    const double cs = std::cos(k * phi), sn = std::sin(k * phi);
    v += c[j] * c[j] * cs * cs + s[j] * s[j] * sn * sn;
  }
  return v / 3.0;
}

}  // namespace sfrac
