#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mmbi/planner.hpp"

namespace mmbi {

/// Value under the set of the plan that is optimal for the expected MDP.
std::vector<double> lower_bound_emdp(const WeightedMdpSet& set, double gamma, std::size_t horizon);

/// Value under the set of the MMBI plan.
std::vector<double> lower_bound_mmbi(const WeightedMdpSet& set, double gamma, std::size_t horizon);

/// Weighted average of each member's optimal value; dominates any policy's value.
std::vector<double> upper_bound_expected_max(const WeightedMdpSet& set, double gamma,
                                             std::size_t horizon);

struct BoundRow {
  double lambda;
  double emdp;   // state-averaged lower_bound_emdp
  double mmbi;   // state-averaged lower_bound_mmbi
  double upper;  // state-averaged upper_bound_expected_max
};

inline constexpr std::size_t kSweepEnsembleSize = 8;

/// Bounds along w(lambda) = (1 - lambda) * uniform + lambda * point mass on the
/// first MDP, for `grid` evenly spaced lambda in [0, 1].
std::vector<BoundRow> bound_sweep(std::span<const FiniteMdp> mdps, std::size_t grid, double gamma,
                                  std::size_t horizon);

struct EnsembleShape {
  std::size_t n_mdps = kSweepEnsembleSize;
  std::size_t n_states = 10;
  std::size_t n_actions = 4;
  double r_max = 1.0;
};

/// Random ensemble: transition rows ~ Dirichlet(1, ..., 1), mean rewards ~ U[0, r_max].
std::vector<FiniteMdp> random_ensemble(std::uint64_t seed, EnsembleShape shape = {});

/// Header `lambda,emdp_bound,mmbi_bound,upper_bound` then one row per grid point.
void write_bounds_csv(std::ostream& out, std::span<const BoundRow> rows);

}  // namespace mmbi
