#pragma once

#include <json.hpp>

#include "mmbi/agents.hpp"
#include "mmbi/belief.hpp"
#include "mmbi/experiment.hpp"
#include "mmbi/mdp.hpp"
#include "mmbi/planner.hpp"

namespace mmbi {

using Json = nlohmann::json;

/// {n_states, n_actions, r_max, transitions: [[[p]]], mean_rewards: [[r]]}
Json to_json(const FiniteMdp& mdp);
/// Inverse of to_json(FiniteMdp); throws InvalidMdp if the tables are not a valid MDP.
FiniteMdp mdp_from_json(const Json& j);

/// {n_states, n_actions, r_max, dirichlet_counts: [[[c]]], beta_params: [[[alpha, beta]]]}
Json to_json(const DirichletBetaBelief& belief);
DirichletBetaBelief belief_from_json(const Json& j);

/// {horizon, n_states, n_actions, plan: [[a]], root_values: [v]}
Json to_json(const MmbiResult& result);

/// Keys: kind, n_samples, replan_interval, gamma, plan_horizon, plan_epsilon,
/// vi_tolerance, fixed_policy. Missing keys keep the defaults in `base`.
AgentConfig agent_config_from_json(const Json& j, AgentConfig base = {});

/// Means, bootstrap intervals, percentile intervals and regret per cell.
Json summary_json(const ExperimentReport& report);

}  // namespace mmbi
