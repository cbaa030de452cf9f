#include "mmbi/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>
#define MMBI_HAVE_NEON 1
#endif

namespace mmbi::kernels {

#if MMBI_HAVE_NEON
namespace {

inline double dot_neon_impl(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  if (i + 2 <= n) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    i += 2;
  }
  double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double dot_neon(const double* a, const double* b, std::size_t n) { return dot_neon_impl(a, b, n); }

void axpy_neon(double w, const double* x, double* y, std::size_t n) {
  const float64x2_t wv = vdupq_n_f64(w);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(wv, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += w * x[i];
}

void backup_neon(const double* transitions, const double* rewards, const double* next_values,
                 double discount, double* q, std::size_t rows, std::size_t n_next) {
  for (std::size_t i = 0; i < rows; ++i) {
    q[i] = rewards[i] + discount * dot_neon_impl(transitions + i * n_next, next_values, n_next);
  }
}

const KernelTable neon{Isa::neon, &dot_neon, &axpy_neon, &backup_neon};

}  // namespace
#endif

namespace detail {
const KernelTable* neon_table() {
#if MMBI_HAVE_NEON
  return &neon;
#else
  return nullptr;
#endif
}
}  // namespace detail

}  // namespace mmbi::kernels
