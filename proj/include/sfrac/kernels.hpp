#pragma once
/**
 * Data-parallel inner loops with runtime ISA dispatch.
 *
 * Every kernel has a scalar reference implementation. On x86-64 an AVX2/FMA
 * variant is compiled into a separate translation unit and selected at first
 * use when the CPU supports it. Setting SFRAC_SIMD=scalar in the environment
 * (or calling set_isa) forces the reference path.
 *
 * Reductions (dot) sum in a different order on each ISA, so results agree to
 * rounding, not bitwise. Within one process the selection is fixed, which keeps
 * reruns reproducible.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace sfrac::kernels {

enum class Isa { scalar, avx2 };

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = x + beta * y
  void (*xpby)(const double* x, double beta, double* y, std::size_t n);
  // out = a .* b
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t n);
  // y = A x for a CSR matrix with n_rows rows
  void (*spmv)(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
               const double* x, double* y, std::size_t n_rows);
  // index of the smallest entry; ties resolve to the lowest index; n > 0
  std::size_t (*argmin)(const double* v, std::size_t n);
};

const KernelTable& scalar_table();
// nullptr when the AVX2 translation unit was not built for this target.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);
Isa active_isa();
// Throws InvalidArgument when the CPU or build cannot run the requested ISA.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);
const KernelTable& table_for(Isa isa);
const KernelTable& active_table();

double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpby(std::span<const double> x, double beta, std::span<double> y);
void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out);
std::size_t argmin(std::span<const double> v);

}  // namespace sfrac::kernels
