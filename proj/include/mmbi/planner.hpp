#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmbi/belief.hpp"
#include "mmbi/mdp.hpp"
#include "mmbi/rng.hpp"

namespace mmbi {

/// A belief with finite support: MDPs sharing (n_states, n_actions, r_max) and
/// a probability weight for each.
class WeightedMdpSet {
 public:
  WeightedMdpSet(std::vector<FiniteMdp> mdps, std::vector<double> weights);

  /// Equal weight 1/n on each member.
  static WeightedMdpSet uniform(std::vector<FiniteMdp> mdps);

  std::size_t size() const { return mdps_.size(); }
  std::size_t n_states() const { return mdps_.front().n_states(); }
  std::size_t n_actions() const { return mdps_.front().n_actions(); }
  double r_max() const { return mdps_.front().r_max(); }

  const FiniteMdp& mdp(std::size_t i) const { return mdps_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const FiniteMdp> mdps() const { return mdps_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<FiniteMdp> mdps_;
  std::vector<double> weights_;
};

/// Weight-averaged transitions and rewards.
FiniteMdp expected_mdp(const WeightedMdpSet& set);

struct MmbiOptions {
  /// Keep V_{mu,t} for every t and member; otherwise only two stages are live.
  bool keep_per_mdp_values = false;
};

struct MmbiResult {
  MemorylessPlan plan;
  QTable belief_q;
  std::vector<VTable> per_mdp_v;     // empty unless requested
  std::vector<double> root_values;   // max_a belief_q(0, s, a)
};

/// Multi-MDP backwards induction. At every stage the belief Q is the weighted
/// average of the members' one-step backups, the greedy action is picked from
/// it, and each member's value is then updated with that shared action.
MmbiResult mmbi(const WeightedMdpSet& set, double gamma, std::size_t horizon,
                MmbiOptions options = {});

/// sum_mu w_mu V^plan_{mu,0}: the exact expected utility of a fixed plan under the set.
std::vector<double> mixture_plan_value(const WeightedMdpSet& set, const MemorylessPlan& plan,
                                       double gamma);

/// ceil((3 r_max / (epsilon (1 - gamma)))^3), at least 1. Saturates at UINT64_MAX.
std::uint64_t sample_count(double epsilon, double gamma, double r_max);

/// r_max * epsilon / (1 - gamma)^2.
double theorem1_gap_bound(double epsilon, double gamma, double r_max);

struct MsbiOptions {
  /// Number of sampled MDPs; defaults to sample_count(epsilon, gamma, r_max).
  std::optional<std::size_t> n_samples;
  /// Planning horizon; defaults to horizon_for_epsilon(epsilon, gamma, r_max).
  std::optional<std::size_t> horizon;
  MmbiOptions mmbi;
};

struct MsbiResult {
  MmbiResult mmbi;
  WeightedMdpSet samples;
  std::size_t horizon;
};

/// Largest sample count msbi() will draw when none is given explicitly.
inline constexpr std::uint64_t kMaxMsbiSamples = 10'000'000;

/// MMBI over MDPs drawn i.i.d. from the posterior, uniformly weighted.
MsbiResult msbi(const DirichletBetaBelief& belief, double gamma, double epsilon, Rng& rng,
                MsbiOptions options = {});

struct BeliefDecision {
  std::size_t depth;
  std::size_t state;
  std::vector<double> weights;
  std::size_t action;
  double value;
};

struct BayesOptimalResult {
  std::vector<double> values;            // per start state
  std::vector<std::size_t> root_actions;
  std::vector<BeliefDecision> policy;    // every reachable decision node, depth-first
  double max_weight_drift = 0.0;         // max L1 distance from root weights over reachable nodes
  std::size_t nodes = 0;
};

inline constexpr double kMaxBeliefTreeNodes = 1e6;

/// Exact Bayes-optimal value for a finite-support belief by enumerating the
/// belief tree. Weights are conditioned on observed transitions with Bayes'
/// rule (rewards carry no information since members are known by their means).
/// Throws InstanceTooLarge when |M| |S| (|S| |A|)^T exceeds kMaxBeliefTreeNodes.
BayesOptimalResult bayes_optimal_tiny(const WeightedMdpSet& set, double gamma,
                                      std::size_t horizon);

}  // namespace mmbi
