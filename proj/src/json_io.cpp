#include "mmbi/json_io.hpp"

#include <stdexcept>

#include "mmbi/error.hpp"

namespace mmbi {

namespace {

std::vector<double> flatten3(const Json& j, std::size_t d0, std::size_t d1, std::size_t d2,
                             const char* what) {
  if (!j.is_array() || j.size() != d0) {
    throw std::invalid_argument(std::string(what) + ": wrong outer dimension");
  }
  std::vector<double> out;
  out.reserve(d0 * d1 * d2);
  for (const auto& a : j) {
    if (!a.is_array() || a.size() != d1) {
      throw std::invalid_argument(std::string(what) + ": wrong middle dimension");
    }
    for (const auto& b : a) {
      if (!b.is_array() || b.size() != d2) {
        throw std::invalid_argument(std::string(what) + ": wrong inner dimension");
      }
      for (const auto& x : b) out.push_back(x.get<double>());
    }
  }
  return out;
}

std::vector<double> flatten2(const Json& j, std::size_t d0, std::size_t d1, const char* what) {
  if (!j.is_array() || j.size() != d0) {
    throw std::invalid_argument(std::string(what) + ": wrong outer dimension");
  }
  std::vector<double> out;
  out.reserve(d0 * d1);
  for (const auto& a : j) {
    if (!a.is_array() || a.size() != d1) {
      throw std::invalid_argument(std::string(what) + ": wrong inner dimension");
    }
    for (const auto& x : a) out.push_back(x.get<double>());
  }
  return out;
}

Json interval_json(const Interval& i) { return Json::array({i.low, i.high}); }

}  // namespace

Json to_json(const FiniteMdp& mdp) {
  const std::size_t S = mdp.n_states();
  const std::size_t A = mdp.n_actions();
  Json transitions = Json::array();
  Json rewards = Json::array();
  for (std::size_t s = 0; s < S; ++s) {
    Json per_action = Json::array();
    Json r = Json::array();
    for (std::size_t a = 0; a < A; ++a) {
      const auto row = mdp.row(s, a);
      per_action.push_back(std::vector<double>(row.begin(), row.end()));
      r.push_back(mdp.reward(s, a));
    }
    transitions.push_back(std::move(per_action));
    rewards.push_back(std::move(r));
  }
  return {{"n_states", S},
          {"n_actions", A},
          {"r_max", mdp.r_max()},
          {"transitions", std::move(transitions)},
          {"mean_rewards", std::move(rewards)}};
}

FiniteMdp mdp_from_json(const Json& j) {
  const auto S = j.at("n_states").get<std::size_t>();
  const auto A = j.at("n_actions").get<std::size_t>();
  const auto r_max = j.at("r_max").get<double>();
  return FiniteMdp::checked(S, A, r_max, flatten3(j.at("transitions"), S, A, S, "transitions"),
                            flatten2(j.at("mean_rewards"), S, A, "mean_rewards"));
}

Json to_json(const DirichletBetaBelief& belief) {
  const std::size_t S = belief.n_states();
  const std::size_t A = belief.n_actions();
  Json counts = Json::array();
  Json beta = Json::array();
  for (std::size_t s = 0; s < S; ++s) {
    Json c = Json::array();
    Json b = Json::array();
    for (std::size_t a = 0; a < A; ++a) {
      const auto row = belief.counts_row(s, a);
      c.push_back(std::vector<double>(row.begin(), row.end()));
      b.push_back(Json::array({belief.alpha(s, a), belief.beta(s, a)}));
    }
    counts.push_back(std::move(c));
    beta.push_back(std::move(b));
  }
  return {{"n_states", S},
          {"n_actions", A},
          {"r_max", belief.r_max()},
          {"dirichlet_counts", std::move(counts)},
          {"beta_params", std::move(beta)}};
}

DirichletBetaBelief belief_from_json(const Json& j) {
  const auto S = j.at("n_states").get<std::size_t>();
  const auto A = j.at("n_actions").get<std::size_t>();
  const auto r_max = j.at("r_max").get<double>();
  auto counts = flatten3(j.at("dirichlet_counts"), S, A, S, "dirichlet_counts");
  const auto pairs = flatten3(j.at("beta_params"), S, A, 2, "beta_params");
  std::vector<double> alpha(S * A), beta(S * A);
  for (std::size_t i = 0; i < S * A; ++i) {
    alpha[i] = pairs[2 * i];
    beta[i] = pairs[2 * i + 1];
  }
  return DirichletBetaBelief(S, A, r_max, std::move(counts), std::move(alpha), std::move(beta));
}

Json to_json(const MmbiResult& result) {
  const auto& plan = result.plan;
  Json stages = Json::array();
  for (std::size_t t = 0; t < plan.horizon(); ++t) {
    const auto stage = plan.stage(t);
    stages.push_back(std::vector<std::size_t>(stage.begin(), stage.end()));
  }
  return {{"horizon", plan.horizon()},
          {"n_states", plan.n_states()},
          {"n_actions", plan.n_actions()},
          {"plan", std::move(stages)},
          {"root_values", result.root_values}};
}

AgentConfig agent_config_from_json(const Json& j, AgentConfig base) {
  if (!j.is_object()) throw std::invalid_argument("agent config must be a JSON object");
  if (j.contains("kind")) base.kind = parse_agent_kind(j.at("kind").get<std::string>());
  if (j.contains("n_samples")) base.n_samples = j.at("n_samples").get<std::size_t>();
  if (j.contains("replan_interval")) base.replan_interval = j.at("replan_interval").get<std::size_t>();
  if (j.contains("gamma")) base.gamma = j.at("gamma").get<double>();
  if (j.contains("plan_horizon")) base.plan_horizon = j.at("plan_horizon").get<std::size_t>();
  if (j.contains("plan_epsilon")) base.plan_epsilon = j.at("plan_epsilon").get<double>();
  if (j.contains("vi_tolerance")) base.vi_tolerance = j.at("vi_tolerance").get<double>();
  if (j.contains("fixed_policy")) {
    const auto actions = j.at("fixed_policy").get<std::vector<std::size_t>>();
    std::size_t n_actions = 0;
    for (auto a : actions) n_actions = std::max(n_actions, a + 1);
    if (j.contains("n_actions")) n_actions = j.at("n_actions").get<std::size_t>();
    base.fixed_policy = StationaryPolicy(n_actions, actions);
  }
  base.validate();
  return base;
}

Json summary_json(const ExperimentReport& report) {
  Json cells = Json::array();
  for (const auto& c : report.cells) {
    const auto& agent = c.cell.agent;
    cells.push_back({{"label", c.cell.label},
                     {"agent", agent_kind_name(agent.kind)},
                     {"n", agent.kind == AgentKind::mcbrl ? agent.n_samples : 0},
                     {"runs", c.runs.size()},
                     {"mean_total_reward", c.mean_total},
                     {"total_reward_ci", interval_json(c.total_ci)},
                     {"mean_utility", c.mean_utility},
                     {"utility_ci", interval_json(c.utility_ci)},
                     {"regret", c.regret},
                     {"regret_ci", interval_json(c.regret_ci)},
                     {"percentile_interval", interval_json(c.percentile)}});
  }
  return {{"oracle_total_reward", report.oracle_total},
          {"runs", report.runs},
          {"steps", report.steps},
          {"cells", std::move(cells)}};
}

}  // namespace mmbi
