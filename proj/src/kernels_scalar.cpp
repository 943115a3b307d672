#include "sfrac/kernels.hpp"

namespace sfrac::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpby_scalar(const double* x, double beta, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + beta * y[i];
}

void hadamard_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void spmv_scalar(const std::int32_t* row_ptr, const std::int32_t* cols, const double* vals,
                 const double* x, double* y, std::size_t n_rows) {
  for (std::size_t r = 0; r < n_rows; ++r) {
    double sum = 0.0;
    for (std::int32_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) sum += vals[k] * x[cols[k]];
    y[r] = sum;
  }
}

std::size_t argmin_scalar(const double* v, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (v[i] < v[best]) best = i;
  return best;
}

constexpr KernelTable kScalar{dot_scalar,  axpy_scalar, xpby_scalar,
                              hadamard_scalar, spmv_scalar, argmin_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace sfrac::kernels
