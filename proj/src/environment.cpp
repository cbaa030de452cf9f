#include "mmbi/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mmbi/error.hpp"

namespace mmbi {

Environment::Environment(FiniteMdp mdp, std::size_t start_state)
    : mdp_(std::move(mdp)), start_(start_state) {
  if (const auto report = validate_mdp(mdp_); !report.empty()) {
    throw InvalidMdp(report.front().message);
  }
  if (start_ >= mdp_.n_states()) throw std::invalid_argument("start state out of range");
}

Environment::Environment(FiniteMdp mdp, std::vector<double> transition_rewards,
                         std::size_t start_state)
    : Environment(std::move(mdp), start_state) {
  const std::size_t S = mdp_.n_states();
  const std::size_t A = mdp_.n_actions();
  if (transition_rewards.size() != S * A * S) {
    throw std::invalid_argument("transition reward table has the wrong size");
  }
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      double mean = 0.0;
      for (std::size_t j = 0; j < S; ++j) {
        const double r = transition_rewards[(s * A + a) * S + j];
        if (!(r >= 0.0 && r <= mdp_.r_max())) {
          throw std::invalid_argument("transition reward outside [0, r_max]");
        }
        mean += mdp_.transition(s, a, j) * r;
      }
      if (std::abs(mean - mdp_.reward(s, a)) > 1e-9 * std::max(1.0, mdp_.r_max())) {
        throw std::invalid_argument("transition rewards disagree with the mean reward table");
      }
    }
  }
  transition_rewards_ = std::move(transition_rewards);
}

double Environment::reward(std::size_t s, std::size_t a, std::size_t next) const {
  if (transition_rewards_.empty()) return mdp_.reward(s, a);
  return transition_rewards_[(s * mdp_.n_actions() + a) * mdp_.n_states() + next];
}

std::size_t Environment::next_state(std::size_t s, std::size_t a, double u) const {
  const auto row = mdp_.row(s, a);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= 0.0) continue;
    cumulative += row[j];
    last_positive = j;
    if (u < cumulative) return j;
  }
  return last_positive;
}

namespace {

struct ChainTables {
  std::vector<double> transitions;
  std::vector<double> transition_rewards;
  std::vector<double> mean_rewards;
};

ChainTables build_chain() {
  using namespace chain;
  constexpr std::size_t S = kStates;
  constexpr std::size_t A = 2;
  ChainTables t{std::vector<double>(S * A * S, 0.0), std::vector<double>(S * A * S, 0.0),
                std::vector<double>(S * A, 0.0)};
  for (std::size_t s = 0; s < S; ++s) {
    const std::size_t forward_to = std::min(s + 1, S - 1);
    const double forward_reward = (s == S - 1) ? kEndReward : 0.0;
    for (std::size_t a = 0; a < A; ++a) {
      const double p_forward = (a == kForward) ? 1.0 - kSlip : kSlip;
      const std::size_t row = (s * A + a) * S;
      t.transitions[row + forward_to] += p_forward;
      t.transitions[row + 0] += 1.0 - p_forward;
      t.transition_rewards[row + forward_to] = forward_reward;
      t.transition_rewards[row + 0] = kReturnReward;
      t.mean_rewards[s * A + a] = p_forward * forward_reward + (1.0 - p_forward) * kReturnReward;
    }
  }
  return t;
}

}  // namespace

FiniteMdp chain_task() {
  auto t = build_chain();
  return FiniteMdp::checked(chain::kStates, 2, chain::kEndReward, std::move(t.transitions),
                            std::move(t.mean_rewards));
}

Environment chain_environment() {
  auto t = build_chain();
  return Environment(chain_task(), std::move(t.transition_rewards), 0);
}

RunRecord run_episode(const Environment& env, const AgentConfig& config,
                      const DirichletBetaBelief& prior, std::size_t horizon,
                      std::uint64_t master_seed, std::size_t run_index, bool keep_steps) {
  const auto& mdp = env.mdp();
  if (prior.n_states() != mdp.n_states() || prior.n_actions() != mdp.n_actions()) {
    throw std::invalid_argument("prior dimensions do not match the environment");
  }
  RunRecord record;
  record.run = run_index;
  record.seed = derive_seed(master_seed, run_index, kEnvironmentStream);
  Rng env_rng(record.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Agent agent(config, prior, derive_seed(master_seed, run_index, kAgentStream));

  if (keep_steps) record.steps.reserve(horizon);
  std::size_t s = env.start_state();
  double discount = 1.0;
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t a = agent.act(s);
    const std::size_t next = env.next_state(s, a, uniform(env_rng));
    const double r = env.reward(s, a, next);
    agent.observe(s, a, r, next);
    if (keep_steps) record.steps.push_back({s, a, r});
    record.total_reward += r;
    record.discounted_utility += discount * r;
    discount *= config.gamma;
    s = next;
  }
  return record;
}

double oracle_total_reward(const FiniteMdp& mdp, std::size_t horizon, std::size_t start) {
  if (start >= mdp.n_states()) throw std::invalid_argument("start state out of range");
  const std::size_t S = mdp.n_states();
  std::vector<double> v(S, 0.0), next(S);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < mdp.n_actions(); ++a) {
        double q = mdp.reward(s, a);
        const auto row = mdp.row(s, a);
        for (std::size_t j = 0; j < S; ++j) q += row[j] * v[j];
        best = std::max(best, q);
      }
      next[s] = best;
    }
    v.swap(next);
  }
  return v[start];
}

double policy_total_reward(const FiniteMdp& mdp, const StationaryPolicy& policy,
                           std::size_t horizon, std::size_t start) {
  if (start >= mdp.n_states()) throw std::invalid_argument("start state out of range");
  if (policy.n_states() != mdp.n_states()) throw std::invalid_argument("policy size mismatch");
  const std::size_t S = mdp.n_states();
  std::vector<double> v(S, 0.0), next(S);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t a = policy(s);
      double q = mdp.reward(s, a);
      const auto row = mdp.row(s, a);
      for (std::size_t j = 0; j < S; ++j) q += row[j] * v[j];
      next[s] = q;
    }
    v.swap(next);
  }
  return v[start];
}

}  // namespace mmbi
