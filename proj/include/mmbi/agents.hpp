#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmbi/belief.hpp"
#include "mmbi/mdp.hpp"
#include "mmbi/rng.hpp"

namespace mmbi {

enum class AgentKind {
  mcbrl,    // periodic MSBI replanning on the posterior
  exploit,  // greedy on the expected MDP, re-solved every step
  oracle,   // fixed stationary policy, for reference runs
};

std::string_view agent_kind_name(AgentKind kind);
/// Throws std::invalid_argument for unknown names.
AgentKind parse_agent_kind(std::string_view name);

struct AgentConfig {
  AgentKind kind = AgentKind::mcbrl;
  std::size_t n_samples = 1;         // mcbrl
  std::size_t replan_interval = 20;  // mcbrl, steps between replans
  double gamma = 0.95;
  std::size_t plan_horizon = 0;      // mcbrl; 0 derives it from plan_epsilon
  double plan_epsilon = 0.01;        // mcbrl
  double vi_tolerance = 1e-3;        // exploit
  std::optional<StationaryPolicy> fixed_policy;  // oracle

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

class Agent {
 public:
  Agent(AgentConfig config, DirichletBetaBelief prior, std::uint64_t seed);

  std::size_t act(std::size_t state);
  void observe(std::size_t state, std::size_t action, double reward, std::size_t next);

  const AgentConfig& config() const { return config_; }
  const DirichletBetaBelief& belief() const { return belief_; }
  std::size_t replans() const { return replans_; }
  std::size_t observations() const { return observations_; }
  /// Policy currently in force (mcbrl and oracle); empty before the first act().
  const std::optional<StationaryPolicy>& policy() const { return policy_; }

 private:
  void replan();
  std::size_t exploit_action(std::size_t state);

  AgentConfig config_;
  DirichletBetaBelief belief_;
  Rng rng_;
  std::optional<StationaryPolicy> policy_;
  std::size_t steps_since_replan_ = 0;
  std::size_t replans_ = 0;
  std::size_t observations_ = 0;
  std::size_t horizon_ = 0;

  std::vector<double> exploit_q_;
  std::vector<std::size_t> exploit_greedy_;
  bool exploit_stale_ = true;
};

}  // namespace mmbi
