#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mmbi/agents.hpp"
#include "mmbi/environment.hpp"
#include "mmbi/statistics.hpp"

namespace mmbi {

struct CellSpec {
  std::string label;  // "exploit", "mcbrl_n8", ...
  AgentConfig agent;
};

struct ExperimentConfig {
  std::vector<CellSpec> cells;
  std::size_t runs = 1000;
  std::size_t steps = 1000;
  std::uint64_t seed = 1;

  double dirichlet_mass = 0.0;  // 0 means 1 / n_states
  double beta_alpha = 1.0;
  double beta_beta = 1.0;

  std::size_t bootstrap_resamples = 10000;
  double ci_level = 0.95;
  double percentile_coverage = 0.8;
  double histogram_bin_width = 100.0;
  unsigned threads = 0;  // 0 = default_thread_count()
};

struct CellReport {
  CellSpec cell;
  std::vector<RunRecord> runs;  // in run-index order, per-step data dropped
  double mean_total = 0.0;
  double mean_utility = 0.0;
  double regret = 0.0;  // oracle_total - mean_total
  Interval total_ci{};
  Interval utility_ci{};
  Interval regret_ci{};
  Interval percentile{};  // central `percentile_coverage` of total rewards
  std::vector<HistogramBin> histogram;

  std::vector<double> totals() const;
  std::vector<double> utilities() const;
  /// Fraction of runs whose total reward is strictly below `threshold`.
  double fraction_below(double threshold) const;
};

struct ExperimentReport {
  double oracle_total = 0.0;
  std::size_t runs = 0;
  std::size_t steps = 0;
  std::vector<CellReport> cells;

  const CellReport& cell(const std::string& label) const;
};

/// Label convention used by the CLI: "exploit", "oracle", "mcbrl_n<N>".
std::string cell_label(const AgentConfig& agent);

/// Runs every cell over the same run seeds (common random numbers) and
/// reduces in run-index order, so the output does not depend on threading.
ExperimentReport experiment(const Environment& env, const ExperimentConfig& config);

/// agent,n,seed,total_reward,utility
void write_runs_csv(std::ostream& out, const ExperimentReport& report);

/// bin_low,bin_high,count
void write_histogram_csv(std::ostream& out, const CellReport& cell);

}  // namespace mmbi
