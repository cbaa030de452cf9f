#include "mmbi/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mmbi/error.hpp"
#include "mmbi/kernels.hpp"

namespace mmbi {

namespace {

constexpr double kRowSumTolerance = 1e-9;

void require_discount(double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("discount must lie in [0, 1)");
  }
}

}  // namespace

FiniteMdp::FiniteMdp(std::size_t n_states, std::size_t n_actions, double r_max,
                     std::vector<double> transitions, std::vector<double> mean_rewards)
    : n_states_(n_states),
      n_actions_(n_actions),
      r_max_(r_max),
      transitions_(std::move(transitions)),
      rewards_(std::move(mean_rewards)) {
  if (n_states_ == 0 || n_actions_ == 0) {
    throw std::invalid_argument("an MDP needs at least one state and one action");
  }
  if (!(r_max_ > 0.0) || !std::isfinite(r_max_)) {
    throw std::invalid_argument("r_max must be a positive finite number");
  }
  if (transitions_.size() != n_states_ * n_actions_ * n_states_) {
    throw std::invalid_argument("transition table must have n_states * n_actions * n_states entries");
  }
  if (rewards_.size() != n_states_ * n_actions_) {
    throw std::invalid_argument("reward table must have n_states * n_actions entries");
  }
}

FiniteMdp FiniteMdp::checked(std::size_t n_states, std::size_t n_actions, double r_max,
                             std::vector<double> transitions, std::vector<double> mean_rewards) {
  FiniteMdp mdp(n_states, n_actions, r_max, std::move(transitions), std::move(mean_rewards));
  const auto report = validate_mdp(mdp);
  if (!report.empty()) {
    throw InvalidMdp(report.front().message);
  }
  return mdp;
}

std::vector<Violation> validate_mdp(const FiniteMdp& mdp) {
  std::vector<Violation> report;
  const double reward_slack = 1e-12 * mdp.r_max();
  for (std::size_t s = 0; s < mdp.n_states(); ++s) {
    for (std::size_t a = 0; a < mdp.n_actions(); ++a) {
      double sum = 0.0;
      bool finite = true;
      for (double p : mdp.row(s, a)) {
        if (!std::isfinite(p)) {
          finite = false;
          continue;
        }
        if (p < 0.0) {
          std::ostringstream msg;
          msg << "negative transition probability " << p << " at (s=" << s << ", a=" << a << ")";
          report.push_back({Violation::Kind::negative_probability, s, a, p, msg.str()});
        }
        sum += p;
      }
      if (!finite) {
        std::ostringstream msg;
        msg << "non-finite transition probability at (s=" << s << ", a=" << a << ")";
        report.push_back({Violation::Kind::non_finite, s, a, sum, msg.str()});
      } else if (std::abs(sum - 1.0) > kRowSumTolerance) {
        std::ostringstream msg;
        msg << "transition row (s=" << s << ", a=" << a << ") sums to " << sum;
        report.push_back({Violation::Kind::row_sum, s, a, sum, msg.str()});
      }
      const double r = mdp.reward(s, a);
      if (!std::isfinite(r)) {
        std::ostringstream msg;
        msg << "non-finite reward at (s=" << s << ", a=" << a << ")";
        report.push_back({Violation::Kind::non_finite, s, a, r, msg.str()});
      } else if (r < -reward_slack || r > mdp.r_max() + reward_slack) {
        std::ostringstream msg;
        msg << "reward " << r << " at (s=" << s << ", a=" << a << ") outside [0, " << mdp.r_max()
            << "]";
        report.push_back({Violation::Kind::reward_range, s, a, r, msg.str()});
      }
    }
  }
  return report;
}

MemorylessPlan::MemorylessPlan(std::size_t horizon, std::size_t n_states, std::size_t n_actions,
                               std::vector<std::size_t> actions)
    : horizon_(horizon), n_states_(n_states), n_actions_(n_actions), actions_(std::move(actions)) {
  if (actions_.size() != horizon_ * n_states_) {
    throw std::invalid_argument("plan must hold horizon * n_states actions");
  }
  for (std::size_t a : actions_) {
    if (a >= n_actions_) throw std::invalid_argument("plan action index out of range");
  }
}

MemorylessPlan::MemorylessPlan(std::size_t horizon, std::size_t n_states, std::size_t n_actions)
    : horizon_(horizon),
      n_states_(n_states),
      n_actions_(n_actions),
      actions_(horizon * n_states, 0) {}

void MemorylessPlan::set_action(std::size_t t, std::size_t s, std::size_t a) {
  if (a >= n_actions_) throw std::invalid_argument("plan action index out of range");
  actions_[t * n_states_ + s] = a;
}

StationaryPolicy::StationaryPolicy(std::size_t n_actions, std::vector<std::size_t> actions)
    : n_actions_(n_actions), actions_(std::move(actions)) {
  for (std::size_t a : actions_) {
    if (a >= n_actions_) throw std::invalid_argument("policy action index out of range");
  }
}

StationaryPolicy StationaryPolicy::from_plan_stage(const MemorylessPlan& plan, std::size_t t) {
  if (t >= plan.horizon()) throw std::invalid_argument("plan stage out of range");
  const auto stage = plan.stage(t);
  return StationaryPolicy(plan.n_actions(), {stage.begin(), stage.end()});
}

QTable::QTable(std::size_t horizon, std::size_t n_states, std::size_t n_actions)
    : horizon_(horizon),
      n_states_(n_states),
      n_actions_(n_actions),
      values_(horizon * n_states * n_actions, 0.0) {}

VTable::VTable(std::size_t horizon, std::size_t n_states)
    : horizon_(horizon), n_states_(n_states), values_((horizon + 1) * n_states, 0.0) {}

std::size_t greedy_action(std::span<const double> q_row) {
  std::size_t best = 0;
  for (std::size_t a = 1; a < q_row.size(); ++a) {
    if (q_row[a] > q_row[best]) best = a;
  }
  return best;
}

FiniteHorizonSolution solve_finite_horizon(const FiniteMdp& mdp, double gamma,
                                           std::size_t horizon) {
  require_discount(gamma);
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");

  const auto& k = kernels::active();
  const std::size_t S = mdp.n_states();
  const std::size_t A = mdp.n_actions();
  FiniteHorizonSolution out{QTable(horizon, S, A), VTable(horizon, S),
                            MemorylessPlan(horizon, S, A)};
  for (std::size_t t = horizon; t-- > 0;) {
    auto q = out.q.stage(t);
    k.backup(mdp.transitions().data(), mdp.mean_rewards().data(), out.v.stage(t + 1).data(),
             gamma, q.data(), S * A, S);
    auto v = out.v.stage(t);
    for (std::size_t s = 0; s < S; ++s) {
      const auto best = greedy_action(q.subspan(s * A, A));
      out.plan.set_action(t, s, best);
      v[s] = q[s * A + best];
    }
  }
  return out;
}

namespace {

DiscountedSolution value_iteration(const FiniteMdp& mdp, double gamma, double tolerance,
                                   std::vector<double> q, bool warm) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument(
        "discounted solver needs gamma in (0, 1); use solve_finite_horizon with T = 1 for gamma = 0");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("value tolerance must be positive");

  const auto& k = kernels::active();
  const std::size_t S = mdp.n_states();
  const std::size_t A = mdp.n_actions();
  const std::size_t max_sweeps = horizon_for_epsilon(tolerance, gamma, mdp.r_max());

  std::vector<double> v(S);
  std::vector<double> next(S * A);
  std::vector<double> deltas;
  deltas.reserve(max_sweeps);
  const double certify = tolerance * (1.0 - gamma) / gamma;

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    for (std::size_t s = 0; s < S; ++s) {
      v[s] = *std::max_element(q.begin() + s * A, q.begin() + (s + 1) * A);
    }
    k.backup(mdp.transitions().data(), mdp.mean_rewards().data(), v.data(), gamma, next.data(),
             S * A, S);
    double delta = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) delta = std::max(delta, std::abs(next[i] - q[i]));
    q.swap(next);
    deltas.push_back(delta);
    if (warm && delta <= certify) break;
  }

  std::vector<std::size_t> actions(S);
  for (std::size_t s = 0; s < S; ++s) {
    actions[s] = greedy_action(std::span<const double>(q).subspan(s * A, A));
  }
  const std::size_t sweeps = deltas.size();
  return {std::move(q), StationaryPolicy(A, std::move(actions)), sweeps, std::move(deltas)};
}

}  // namespace

DiscountedSolution solve_discounted(const FiniteMdp& mdp, double gamma, double tolerance) {
  return value_iteration(mdp, gamma, tolerance,
                         std::vector<double>(mdp.n_states() * mdp.n_actions(), 0.0), false);
}

DiscountedSolution solve_discounted(const FiniteMdp& mdp, double gamma, double tolerance,
                                    std::span<const double> initial_q) {
  if (initial_q.size() != mdp.n_states() * mdp.n_actions()) {
    throw std::invalid_argument("warm-start Q table has the wrong size");
  }
  return value_iteration(mdp, gamma, tolerance, {initial_q.begin(), initial_q.end()}, true);
}

VTable evaluate_plan_stages(const FiniteMdp& mdp, const MemorylessPlan& plan, double gamma) {
  require_discount(gamma);
  if (plan.n_states() != mdp.n_states() || plan.n_actions() != mdp.n_actions()) {
    throw std::invalid_argument("plan dimensions do not match the MDP");
  }
  const auto& k = kernels::active();
  const std::size_t S = mdp.n_states();
  VTable v(plan.horizon(), S);
  for (std::size_t t = plan.horizon(); t-- > 0;) {
    const auto next = v.stage(t + 1);
    auto cur = v.stage(t);
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t a = plan.action(t, s);
      cur[s] = mdp.reward(s, a) + gamma * k.dot(mdp.row(s, a).data(), next.data(), S);
    }
  }
  return v;
}

std::vector<double> evaluate_plan_exact(const FiniteMdp& mdp, const MemorylessPlan& plan,
                                        double gamma, std::size_t horizon) {
  if (plan.horizon() != horizon) {
    throw std::invalid_argument("plan horizon does not match the evaluation horizon");
  }
  const auto v = evaluate_plan_stages(mdp, plan, gamma);
  const auto root = v.stage(0);
  return {root.begin(), root.end()};
}

std::size_t horizon_for_epsilon(double epsilon, double gamma, double r_max) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");

  const double threshold = epsilon * (1.0 - gamma) / r_max;
  if (threshold >= 1.0) return 1;
  double steps = std::log(threshold) / std::log(gamma);
  // log(0.25)/log(0.5) must come out as exactly 2, not 2 + ulp.
  const double nearest = std::round(steps);
  if (std::abs(steps - nearest) <= 1e-12 * std::max(1.0, nearest)) steps = nearest;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(steps)));
}

}  // namespace mmbi
