#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mmbi/agents.hpp"
#include "mmbi/belief.hpp"
#include "mmbi/mdp.hpp"

namespace mmbi {

/// A true MDP to simulate. Rewards are either the deterministic mean reward of
/// (s, a) or, when given, a reward for every (s, a, s') transition whose
/// transition-weighted average equals the mean reward.
class Environment {
 public:
  explicit Environment(FiniteMdp mdp, std::size_t start_state = 0);
  Environment(FiniteMdp mdp, std::vector<double> transition_rewards, std::size_t start_state);

  const FiniteMdp& mdp() const { return mdp_; }
  std::size_t start_state() const { return start_; }

  double reward(std::size_t s, std::size_t a, std::size_t next) const;

  /// Inverse-CDF draw of the successor for a uniform u in [0, 1).
  std::size_t next_state(std::size_t s, std::size_t a, double u) const;

 private:
  FiniteMdp mdp_;
  std::vector<double> transition_rewards_;
  std::size_t start_;
};

namespace chain {
inline constexpr std::size_t kStates = 5;
// RETURN comes first, so greedy ties under a symmetric prior go to RETURN.
inline constexpr std::size_t kReturn = 0;
inline constexpr std::size_t kForward = 1;
inline constexpr double kSlip = 0.2;
inline constexpr double kReturnReward = 2.0;
inline constexpr double kEndReward = 10.0;
}  // namespace chain

/// Five-state chain: FORWARD advances (10 at the far end, else 0), RETURN goes
/// back to the first state for 2; with probability 0.2 the other action's
/// effect happens instead. r_max = 10, start state 0.
FiniteMdp chain_task();

/// The chain with its transition-level rewards, for simulation.
Environment chain_environment();

struct StepRecord {
  std::size_t state;
  std::size_t action;
  double reward;
};

struct RunRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;          // environment stream seed of this run
  std::vector<StepRecord> steps;   // empty when the caller asked not to keep them
  double total_reward = 0.0;
  double discounted_utility = 0.0;  // sum_t gamma^(t-1) r_t, t = 1..T
};

/// Stream ids under derive_seed(master, run, stream).
inline constexpr std::uint64_t kEnvironmentStream = 0;
inline constexpr std::uint64_t kAgentStream = 1;

/// Simulates `horizon` steps of act -> environment -> observe. The environment
/// draws exactly one uniform per step from its own per-run stream, so every
/// agent run with the same (master_seed, run_index) sees the same numbers.
RunRecord run_episode(const Environment& env, const AgentConfig& config,
                      const DirichletBetaBelief& prior, std::size_t horizon,
                      std::uint64_t master_seed, std::size_t run_index, bool keep_steps = true);

/// Optimal expected undiscounted total reward over exactly `horizon` steps from `start`.
double oracle_total_reward(const FiniteMdp& mdp, std::size_t horizon, std::size_t start = 0);

/// Expected undiscounted total reward of a stationary policy over `horizon` steps.
double policy_total_reward(const FiniteMdp& mdp, const StationaryPolicy& policy,
                           std::size_t horizon, std::size_t start = 0);

}  // namespace mmbi
