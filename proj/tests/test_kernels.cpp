#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sfrac/errors.hpp"
#include "sfrac/kernels.hpp"

using namespace sfrac::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(gen);
  return v;
}

const KernelTable* simd() { return cpu_supports(Isa::avx2) ? avx2_table() : nullptr; }

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
  const auto& k = scalar_table();
  const double a[] = {1, 2, 3}, b[] = {4, 5, 6};
  CHECK(k.dot(a, b, 3) == 32.0);
  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[2] == 7.0);
  k.xpby(a, 0.5, y, 3);
  CHECK(y[0] == doctest::Approx(2.5));
  const double v[] = {3, 1, 2, 1};
  CHECK(k.argmin(v, 4) == 1);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  const auto* fast = simd();
  if (!fast) {
    MESSAGE("AVX2 not available; skipped");
    return;
  }
  const auto& ref = scalar_table();
  // Odd lengths exercise the remainder loops.
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 16u, 33u, 1001u}) {
    CAPTURE(n);
    const auto a = random_vector(n, 1), b = random_vector(n, 2);
    const double d_ref = ref.dot(a.data(), b.data(), n);
    CHECK(fast->dot(a.data(), b.data(), n) == doctest::Approx(d_ref).epsilon(1e-13).scale(1.0));

    auto y1 = b, y2 = b;
    ref.axpy(0.3, a.data(), y1.data(), n);
    fast->axpy(0.3, a.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

    y1 = b, y2 = b;
    ref.xpby(a.data(), -0.7, y1.data(), n);
    fast->xpby(a.data(), -0.7, y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

    std::vector<double> h1(n), h2(n);
    ref.hadamard(a.data(), b.data(), h1.data(), n);
    fast->hadamard(a.data(), b.data(), h2.data(), n);
    CHECK(h1 == h2);

    if (n > 0) CHECK(fast->argmin(a.data(), n) == ref.argmin(a.data(), n));
  }
}

TEST_CASE("AVX2 argmin resolves ties to the lowest index") {
  const auto* fast = simd();
  if (!fast) return;
  std::vector<double> v(37, 5.0);
  v[9] = v[21] = v[36] = -1.0;
  CHECK(fast->argmin(v.data(), v.size()) == 9);
  std::vector<double> flat(19, 2.0);
  CHECK(fast->argmin(flat.data(), flat.size()) == 0);
}

TEST_CASE("AVX2 spmv agrees with the scalar reference") {
  const auto* fast = simd();
  if (!fast) return;
  // Random sparse rows of varying length, including empty rows.
  std::mt19937_64 gen(7);
  const std::size_t n = 200;
  std::vector<std::int32_t> row_ptr{0}, cols;
  std::vector<double> vals;
  for (std::size_t i = 0; i < n; ++i) {
    const auto len = gen() % 12;
    for (std::size_t k = 0; k < len; ++k) {
      cols.push_back(static_cast<std::int32_t>(gen() % n));
      vals.push_back(static_cast<double>(gen() % 1000) / 100.0 - 5.0);
    }
    row_ptr.push_back(static_cast<std::int32_t>(cols.size()));
  }
  const auto x = random_vector(n, 3);
  std::vector<double> y1(n), y2(n);
  scalar_table().spmv(row_ptr.data(), cols.data(), vals.data(), x.data(), y1.data(), n);
  fast->spmv(row_ptr.data(), cols.data(), vals.data(), x.data(), y2.data(), n);
  for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == doctest::Approx(y1[i]).epsilon(1e-13));
}

TEST_CASE("ISA selection") {
  const auto before = active_isa();
  set_isa(Isa::scalar);
  CHECK(active_isa() == Isa::scalar);
  CHECK(&active_table() == &scalar_table());
  if (!cpu_supports(Isa::avx2)) CHECK_THROWS_AS(set_isa(Isa::avx2), sfrac::InvalidArgument);
  set_isa(before);
  CHECK(isa_name(Isa::scalar) == "scalar");
}
