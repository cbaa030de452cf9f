#include "mmbi/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MMBI_HAVE_AVX2 1
#endif

namespace mmbi::kernels {

#if MMBI_HAVE_AVX2
namespace {

__attribute__((target("avx2,fma"))) inline double dot_avx2_impl(const double* a, const double* b,
                                                                std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc0);
  __m128d hi = _mm256_extractf128_pd(acc0, 1);
  lo = _mm_add_pd(lo, hi);
  double sum = _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

__attribute__((target("avx2,fma"))) double dot_avx2(const double* a, const double* b,
                                                    std::size_t n) {
  return dot_avx2_impl(a, b, n);
}

__attribute__((target("avx2"))) void axpy_avx2(double w, const double* x, double* y,
                                               std::size_t n) {
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(wv, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += w * x[i];
}

__attribute__((target("avx2,fma"))) void backup_avx2(const double* transitions,
                                                     const double* rewards,
                                                     const double* next_values, double discount,
                                                     double* q, std::size_t rows,
                                                     std::size_t n_next) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double expected = dot_avx2_impl(transitions + i * n_next, next_values, n_next);
    q[i] = rewards[i] + discount * expected;
  }
}

const KernelTable avx2{Isa::avx2, &dot_avx2, &axpy_avx2, &backup_avx2};

}  // namespace
#endif

namespace detail {
const KernelTable* avx2_table() {
#if MMBI_HAVE_AVX2
  return &avx2;
#else
  return nullptr;
#endif
}
}  // namespace detail

}  // namespace mmbi::kernels
