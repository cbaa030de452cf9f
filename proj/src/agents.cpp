#include "mmbi/agents.hpp"

#include <stdexcept>
#include <string>

#include "mmbi/planner.hpp"

namespace mmbi {

std::string_view agent_kind_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::mcbrl: return "mcbrl";
    case AgentKind::exploit: return "exploit";
    case AgentKind::oracle: return "oracle";
  }
  return "unknown";
}

AgentKind parse_agent_kind(std::string_view name) {
  for (AgentKind kind : {AgentKind::mcbrl, AgentKind::exploit, AgentKind::oracle}) {
    if (name == agent_kind_name(kind)) return kind;
  }
  throw std::invalid_argument("unknown agent '" + std::string(name) +
                              "' (expected mcbrl, exploit or oracle)");
}

void AgentConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("agent gamma must lie in (0, 1)");
  switch (kind) {
    case AgentKind::mcbrl:
      if (n_samples == 0) throw std::invalid_argument("mcbrl needs n_samples >= 1");
      if (replan_interval == 0) throw std::invalid_argument("mcbrl needs replan interval >= 1");
      if (plan_horizon == 0 && !(plan_epsilon > 0.0)) {
        throw std::invalid_argument("mcbrl needs a plan horizon or a positive plan epsilon");
      }
      break;
    case AgentKind::exploit:
      if (!(vi_tolerance > 0.0)) throw std::invalid_argument("exploit needs vi_tolerance > 0");
      break;
    case AgentKind::oracle:
      if (!fixed_policy) throw std::invalid_argument("oracle agent needs a fixed policy");
      break;
  }
}

Agent::Agent(AgentConfig config, DirichletBetaBelief prior, std::uint64_t seed)
    : config_(std::move(config)), belief_(std::move(prior)), rng_(seed) {
  config_.validate();
  if (config_.kind == AgentKind::oracle) {
    if (config_.fixed_policy->n_states() != belief_.n_states() ||
        config_.fixed_policy->n_actions() != belief_.n_actions()) {
      throw std::invalid_argument("oracle policy dimensions do not match the belief");
    }
    policy_ = config_.fixed_policy;
  }
  horizon_ = config_.plan_horizon != 0
                 ? config_.plan_horizon
                 : horizon_for_epsilon(config_.plan_epsilon, config_.gamma, belief_.r_max());
}

void Agent::replan() {
  MsbiOptions options;
  options.n_samples = config_.n_samples;
  options.horizon = horizon_;
  auto result = msbi(belief_, config_.gamma, config_.plan_epsilon, rng_, options);
  policy_ = StationaryPolicy::from_plan_stage(result.mmbi.plan, 0);
  steps_since_replan_ = 0;
  ++replans_;
}

std::size_t Agent::exploit_action(std::size_t state) {
  if (exploit_stale_) {
    const auto mdp = expected_mdp(belief_);
    auto solution = exploit_q_.empty()
                        ? solve_discounted(mdp, config_.gamma, config_.vi_tolerance)
                        : solve_discounted(mdp, config_.gamma, config_.vi_tolerance, exploit_q_);
    exploit_q_ = std::move(solution.q);
    const auto actions = solution.policy.actions();
    exploit_greedy_.assign(actions.begin(), actions.end());
    exploit_stale_ = false;
  }
  return exploit_greedy_[state];
}

std::size_t Agent::act(std::size_t state) {
  if (state >= belief_.n_states()) throw std::invalid_argument("state index out of range");
  switch (config_.kind) {
    case AgentKind::mcbrl:
      if (!policy_ || steps_since_replan_ >= config_.replan_interval) replan();
      return (*policy_)(state);
    case AgentKind::exploit:
      return exploit_action(state);
    case AgentKind::oracle:
      return (*policy_)(state);
  }
  throw std::logic_error("unhandled agent kind");
}

void Agent::observe(std::size_t state, std::size_t action, double reward, std::size_t next) {
  belief_.observe(state, action, reward, next);
  ++steps_since_replan_;
  ++observations_;
  exploit_stale_ = true;
}

}  // namespace mmbi
