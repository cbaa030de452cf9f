#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mmbi {

/// Finite MDP with dense transition tensor indexed [s][a][s'] and the mean
/// immediate reward per (s, a). Reward distributions are kept by their means.
///
/// The constructor only checks table shapes; use validate_mdp() to inspect the
/// probabilistic invariants or FiniteMdp::checked() to enforce them.
class FiniteMdp {
 public:
  FiniteMdp(std::size_t n_states, std::size_t n_actions, double r_max,
            std::vector<double> transitions, std::vector<double> mean_rewards);

  /// Same as the constructor but throws InvalidMdp when validate_mdp() reports anything.
  static FiniteMdp checked(std::size_t n_states, std::size_t n_actions, double r_max,
                           std::vector<double> transitions, std::vector<double> mean_rewards);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }
  double r_max() const { return r_max_; }

  double transition(std::size_t s, std::size_t a, std::size_t next) const {
    return transitions_[(s * n_actions_ + a) * n_states_ + next];
  }
  std::span<const double> row(std::size_t s, std::size_t a) const {
    return {transitions_.data() + (s * n_actions_ + a) * n_states_, n_states_};
  }
  double reward(std::size_t s, std::size_t a) const { return rewards_[s * n_actions_ + a]; }

  std::span<const double> transitions() const { return transitions_; }
  std::span<const double> mean_rewards() const { return rewards_; }

  bool same_shape(const FiniteMdp& other) const {
    return n_states_ == other.n_states_ && n_actions_ == other.n_actions_ &&
           r_max_ == other.r_max_;
  }

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  double r_max_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
};

struct Violation {
  enum class Kind { row_sum, negative_probability, reward_range, non_finite };
  Kind kind;
  std::size_t state;
  std::size_t action;
  double value;  // offending row sum, probability or reward
  std::string message;
};

/// Every violated invariant of the MDP; empty when valid.
std::vector<Violation> validate_mdp(const FiniteMdp& mdp);

/// Deterministic non-stationary policy: one action per (t, s), t < horizon.
class MemorylessPlan {
 public:
  MemorylessPlan(std::size_t horizon, std::size_t n_states, std::size_t n_actions,
                 std::vector<std::size_t> actions);
  /// A plan that takes action 0 everywhere.
  MemorylessPlan(std::size_t horizon, std::size_t n_states, std::size_t n_actions);

  std::size_t horizon() const { return horizon_; }
  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }

  std::size_t action(std::size_t t, std::size_t s) const { return actions_[t * n_states_ + s]; }
  void set_action(std::size_t t, std::size_t s, std::size_t a);
  std::span<const std::size_t> stage(std::size_t t) const {
    return {actions_.data() + t * n_states_, n_states_};
  }
  std::span<const std::size_t> actions() const { return actions_; }

  friend bool operator==(const MemorylessPlan&, const MemorylessPlan&) = default;

 private:
  std::size_t horizon_;
  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<std::size_t> actions_;
};

class StationaryPolicy {
 public:
  StationaryPolicy(std::size_t n_actions, std::vector<std::size_t> actions);

  std::size_t n_states() const { return actions_.size(); }
  std::size_t n_actions() const { return n_actions_; }
  std::size_t operator()(std::size_t s) const { return actions_[s]; }
  std::span<const std::size_t> actions() const { return actions_; }

  /// The t-th stage of a memoryless plan, frozen.
  static StationaryPolicy from_plan_stage(const MemorylessPlan& plan, std::size_t t);

  friend bool operator==(const StationaryPolicy&, const StationaryPolicy&) = default;

 private:
  std::size_t n_actions_;
  std::vector<std::size_t> actions_;
};

/// Q_t(s, a) for t in [0, horizon).
class QTable {
 public:
  QTable(std::size_t horizon, std::size_t n_states, std::size_t n_actions);

  std::size_t horizon() const { return horizon_; }
  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }

  double operator()(std::size_t t, std::size_t s, std::size_t a) const {
    return values_[(t * n_states_ + s) * n_actions_ + a];
  }
  std::span<double> stage(std::size_t t) {
    return {values_.data() + t * n_states_ * n_actions_, n_states_ * n_actions_};
  }
  std::span<const double> stage(std::size_t t) const {
    return {values_.data() + t * n_states_ * n_actions_, n_states_ * n_actions_};
  }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t horizon_;
  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<double> values_;
};

/// V_t(s) for t in [0, horizon]; stage `horizon` is the zero terminal value.
class VTable {
 public:
  VTable(std::size_t horizon, std::size_t n_states);

  std::size_t horizon() const { return horizon_; }
  std::size_t n_states() const { return n_states_; }

  double operator()(std::size_t t, std::size_t s) const { return values_[t * n_states_ + s]; }
  std::span<double> stage(std::size_t t) { return {values_.data() + t * n_states_, n_states_}; }
  std::span<const double> stage(std::size_t t) const {
    return {values_.data() + t * n_states_, n_states_};
  }
  std::span<const double> values() const { return values_; }

 private:
  std::size_t horizon_;
  std::size_t n_states_;
  std::vector<double> values_;
};

/// Index of the largest entry; ties go to the lowest index.
std::size_t greedy_action(std::span<const double> q_row);

struct FiniteHorizonSolution {
  QTable q;
  VTable v;
  MemorylessPlan plan;
};

/// Backwards induction over `horizon` stages with zero terminal value and
/// discount weighting gamma^(k - t).
FiniteHorizonSolution solve_finite_horizon(const FiniteMdp& mdp, double gamma,
                                           std::size_t horizon);

struct DiscountedSolution {
  std::vector<double> q;  // [s][a]
  StationaryPolicy policy;
  std::size_t sweeps;
  std::vector<double> sweep_deltas;  // sup-norm change per sweep

  double operator()(std::size_t s, std::size_t a) const { return q[s * policy.n_actions() + a]; }
};

/// Value iteration from Q = 0 for horizon_for_epsilon(tolerance, gamma, r_max)
/// sweeps; the result is within `tolerance` of Q* in sup norm.
DiscountedSolution solve_discounted(const FiniteMdp& mdp, double gamma, double tolerance);

/// Warm-started value iteration. Stops once the change between sweeps certifies
/// the tolerance, and never runs more sweeps than the cold start would.
/// `initial_q` entries must lie in [0, r_max / (1 - gamma)].
DiscountedSolution solve_discounted(const FiniteMdp& mdp, double gamma, double tolerance,
                                    std::span<const double> initial_q);

/// V_0^pi(s) for a fixed plan, no maximisation. Throws std::invalid_argument
/// when the plan's horizon differs from `horizon`.
std::vector<double> evaluate_plan_exact(const FiniteMdp& mdp, const MemorylessPlan& plan,
                                        double gamma, std::size_t horizon);

/// All stages V_t^pi, t = 0..horizon.
VTable evaluate_plan_stages(const FiniteMdp& mdp, const MemorylessPlan& plan, double gamma);

/// Smallest T >= 1 with gamma^T * r_max / (1 - gamma) <= epsilon.
std::size_t horizon_for_epsilon(double epsilon, double gamma, double r_max);

}  // namespace mmbi
