#include <atomic>
#include <cstdlib>
#include <string>

#include "sfrac/errors.hpp"
#include "sfrac/kernels.hpp"

namespace sfrac::kernels {

#if defined(SFRAC_HAVE_AVX2_TU)
const KernelTable* avx2_table_impl();
const KernelTable* avx2_table() { return avx2_table_impl(); }
#else
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(SFRAC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect_default() {
  if (const char* env = std::getenv("SFRAC_SIMD")) {
    if (std::string(env) == "scalar") return Isa::scalar;
  }
  return cpu_supports(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect_default())};
  return isa;
}

}  // namespace

Isa active_isa() { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void set_isa(Isa isa) {
  if (!cpu_supports(isa)) throw InvalidArgument("ISA not supported on this CPU: " + std::string(isa_name(isa)));
  selected().store(static_cast<int>(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

const KernelTable& table_for(Isa isa) {
  if (isa == Isa::avx2) {
    if (const KernelTable* t = avx2_table(); t != nullptr && cpu_supports(Isa::avx2)) return *t;
    throw InvalidArgument("AVX2 kernels unavailable");
  }
  return scalar_table();
}

const KernelTable& active_table() {
  return active_isa() == Isa::avx2 ? *avx2_table() : scalar_table();
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("dot: size mismatch");
  return active_table().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw InvalidArgument("axpy: size mismatch");
  active_table().axpy(alpha, x.data(), y.data(), x.size());
}

void xpby(std::span<const double> x, double beta, std::span<double> y) {
  if (x.size() != y.size()) throw InvalidArgument("xpby: size mismatch");
  active_table().xpby(x.data(), beta, y.data(), x.size());
}

void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  if (a.size() != b.size() || a.size() != out.size()) throw InvalidArgument("hadamard: size mismatch");
  active_table().hadamard(a.data(), b.data(), out.data(), a.size());
}

std::size_t argmin(std::span<const double> v) {
  if (v.empty()) throw InvalidArgument("argmin of an empty range");
  return active_table().argmin(v.data(), v.size());
}

}  // namespace sfrac::kernels
