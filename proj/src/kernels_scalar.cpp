#include "mmbi/kernels.hpp"

namespace mmbi::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy_scalar(double w, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += w * x[i];
}

void backup_scalar(const double* transitions, const double* rewards,
                   const double* next_values, double discount, double* q,
                   std::size_t rows, std::size_t n_next) {
  for (std::size_t i = 0; i < rows; ++i) {
    q[i] = rewards[i] + discount * dot_scalar(transitions + i * n_next, next_values, n_next);
  }
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, &dot_scalar, &axpy_scalar, &backup_scalar};
}

}  // namespace mmbi::kernels
