#pragma once

// Inner-loop arithmetic used by every dynamic-programming routine.
//
// Each kernel has a scalar reference implementation and SIMD variants
// (AVX2 on x86-64, NEON on aarch64). One variant is chosen per process on
// first use; MMBI_SIMD=scalar|avx2|neon overrides the CPU probe. All solvers
// go through the same table, so results inside a process are reproducible
// bit for bit no matter which variant is active.

#include <cstddef>
#include <string_view>

namespace mmbi::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// Sum of a[i] * b[i].
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// y[i] += w * x[i]. Multiply and add are rounded separately in every
  /// variant, so this kernel is exact-equal across variants.
  void (*axpy)(double w, const double* x, double* y, std::size_t n);

  /// One Bellman backup over a dense (rows x n_next) transition block:
  /// q[i] = rewards[i] + discount * dot(transitions + i * n_next, next_values).
  void (*backup)(const double* transitions, const double* rewards,
                 const double* next_values, double discount, double* q,
                 std::size_t rows, std::size_t n_next);
};

/// True when the variant was compiled in and the running CPU can execute it.
bool supported(Isa isa);

/// Kernel table for a specific variant. Throws std::invalid_argument if the
/// variant is not supported here.
const KernelTable& table(Isa isa);

/// The process-wide selected table.
const KernelTable& active();

namespace detail {
extern const KernelTable scalar_table;
const KernelTable* avx2_table();  // nullptr when not compiled in
const KernelTable* neon_table();  // nullptr when not compiled in
}  // namespace detail

}  // namespace mmbi::kernels
