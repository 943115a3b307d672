#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sfrac/errors.hpp"
#include "sfrac/stochastic.hpp"

using namespace sfrac;

TEST_CASE("per-realization streams") {
  Rng a(42, 7), b(42, 7), c(42, 8);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform01();
    CHECK(x == b.uniform01());
    differs |= x != c.uniform01();
  }
  CHECK(differs);
  Rng d(1, 0), e(1ull << 32, 0);  // seed halves must not alias
  CHECK(d.next() != e.next());
}

TEST_CASE("uniform draws pass a Kolmogorov-Smirnov test") {
  Rng rng(2024, 0);
  std::vector<double> x(100000);
  for (auto& v : x) v = rng.uniform01();
  std::sort(x.begin(), x.end());
  double ks = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    ks = std::max({ks, (i + 1) / n - x[i], x[i] - i / n});
  CHECK(ks < 0.01);
  CHECK(x.front() >= 0.0);
  CHECK(x.back() < 1.0);
}

TEST_CASE("white-noise dissipation perturbation") {
  const auto grid = build_interval_mesh(6.0, 100);
  const DissipationProfile profile;
  const auto base = profile.sample(grid);

  Rng rng0(1, 0);
  CHECK(white_noise_perturb(profile, grid, 0.0, rng0) == base);

  const double eta = 0.2;
  Rng rng(1, 1);
  const auto v = white_noise_perturb(profile, grid, eta, rng);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - base[i]) <= eta / 2);

  // CLT: mean at a node over 1e5 realizations within 3 sigma of the profile value.
  const std::size_t node = 37, m = 100000;
  double sum = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    Rng r(3, k);
    sum += white_noise_perturb(profile, grid, eta, r)[node];
  }
  const double sigma = eta / std::sqrt(12.0) / std::sqrt(static_cast<double>(m));
  CHECK(std::abs(sum / m - base[node]) < 3.0 * sigma);
}

TEST_CASE("radius expansion") {
  PerturbationSpec spec;
  spec.kind = PerturbationKind::fourier_radius;
  spec.eta = 0.0;
  Rng rng(1, 0);
  const auto flat = sample_radius(spec, 0.2, rng);
  for (double phi : {0.0, 1.0, 3.0}) CHECK(flat(phi) == 0.2);

  // J = 1, y = (1, 0), c_1 = 1: r = R + eta cos(phi).
  spec.eta = 0.01;
  spec.harmonics = 1;
  spec.c = {1.0};
  spec.s = {1.0};
  const auto r = make_radius(spec, 0.2, {1.0, 0.0});
  for (double phi : {0.0, 0.7, 2.0, -1.3}) CHECK(r(phi) == doctest::Approx(0.2 + 0.01 * std::cos(phi)));

  spec = PerturbationSpec{};
  spec.kind = PerturbationKind::fourier_radius;
  spec.eta = 0.02;
  CHECK(spec.cos_coefficients().size() == 6);
  CHECK(spec.cos_coefficients()[2] == doctest::Approx(1.0 / 3.0));
  spec.eta = 0.2;  // eta * sum(|c| + |s|) > R
  Rng g(1, 0);
  CHECK_THROWS(sample_radius(spec, 0.2, g));
  CHECK_THROWS(make_radius(spec, 0.2, {1.0}));
}

TEST_CASE("radius perturbation variance matches the closed form") {
  PerturbationSpec spec;
  spec.kind = PerturbationKind::fourier_radius;
  spec.eta = 0.02;
  const std::size_t m = 100000;
  for (double phi : {0.3, 1.1, 2.5}) {
    CAPTURE(phi);
    double s1 = 0.0, s2 = 0.0, r1 = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      Rng rng(11, k);
      const auto r = sample_radius(spec, 0.2, rng);
      const double p = r.perturbation(phi);
      s1 += p;
      s2 += p * p;
      r1 += r(phi);
    }
    const double mean = s1 / m, var = s2 / m - mean * mean;
    const double expect = radius_perturbation_variance(spec, phi);
    double direct = 0.0;
    for (int j = 1; j <= 6; ++j)
      direct += (std::pow(std::cos(j * phi), 2) + std::pow(std::sin(j * phi), 2)) / (3.0 * j * j);
    CHECK(expect == doctest::Approx(direct));
    CHECK(std::abs(var - expect) <= 0.05 * expect);
    CHECK(r1 / m == doctest::Approx(0.2).epsilon(1e-3));
  }
}

TEST_CASE("perturbation kinds") {
  for (auto k : {PerturbationKind::none, PerturbationKind::white_noise_dissipation, PerturbationKind::fourier_radius})
    CHECK(perturbation_kind_from_string(to_string(k)) == k);
  CHECK_THROWS(perturbation_kind_from_string("gaussian"));
  PerturbationSpec bad;
  bad.eta = -1.0;
  CHECK_THROWS(bad.validate());
}
