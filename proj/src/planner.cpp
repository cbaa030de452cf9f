#include "mmbi/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mmbi/error.hpp"
#include "mmbi/kernels.hpp"

namespace mmbi {

WeightedMdpSet::WeightedMdpSet(std::vector<FiniteMdp> mdps, std::vector<double> weights)
    : mdps_(std::move(mdps)), weights_(std::move(weights)) {
  if (mdps_.empty()) throw std::invalid_argument("weighted MDP set is empty");
  if (weights_.size() != mdps_.size()) {
    throw std::invalid_argument("need exactly one weight per MDP");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights must sum to 1");
  for (const auto& m : mdps_) {
    if (!m.same_shape(mdps_.front())) {
      throw std::invalid_argument("all MDPs in a set must share n_states, n_actions and r_max");
    }
  }
}

WeightedMdpSet WeightedMdpSet::uniform(std::vector<FiniteMdp> mdps) {
  const std::size_t n = mdps.size();
  if (n == 0) throw std::invalid_argument("weighted MDP set is empty");
  return WeightedMdpSet(std::move(mdps), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

FiniteMdp expected_mdp(const WeightedMdpSet& set) {
  const auto& k = kernels::active();
  const auto& first = set.mdp(0);
  std::vector<double> transitions(first.transitions().size(), 0.0);
  std::vector<double> rewards(first.mean_rewards().size(), 0.0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    k.axpy(set.weight(i), set.mdp(i).transitions().data(), transitions.data(), transitions.size());
    k.axpy(set.weight(i), set.mdp(i).mean_rewards().data(), rewards.data(), rewards.size());
  }
  // Clamp accumulated round-off so the result stays inside the reward range.
  for (double& r : rewards) r = std::clamp(r, 0.0, first.r_max());
  return FiniteMdp(first.n_states(), first.n_actions(), first.r_max(), std::move(transitions),
                   std::move(rewards));
}

MmbiResult mmbi(const WeightedMdpSet& set, double gamma, std::size_t horizon,
                MmbiOptions options) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("discount must lie in [0, 1)");
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");

  const auto& k = kernels::active();
  const std::size_t S = set.n_states();
  const std::size_t A = set.n_actions();
  const std::size_t M = set.size();

  MmbiResult out{MemorylessPlan(horizon, S, A), QTable(horizon, S, A), {}, {}};
  if (options.keep_per_mdp_values) out.per_mdp_v.assign(M, VTable(horizon, S));

  // Two live stages per member: next_v holds V_{mu,t+1}, member_q the backups at t.
  std::vector<double> next_v(M * S, 0.0);
  std::vector<double> member_q(M * S * A);

  for (std::size_t t = horizon; t-- > 0;) {
    for (std::size_t m = 0; m < M; ++m) {
      const auto& mdp = set.mdp(m);
      k.backup(mdp.transitions().data(), mdp.mean_rewards().data(), next_v.data() + m * S, gamma,
               member_q.data() + m * S * A, S * A, S);
    }
    // Fixed member order keeps the weighted sum reproducible.
    auto belief_q = out.belief_q.stage(t);
    for (std::size_t m = 0; m < M; ++m) {
      k.axpy(set.weight(m), member_q.data() + m * S * A, belief_q.data(), S * A);
    }
    for (std::size_t s = 0; s < S; ++s) {
      const std::size_t best = greedy_action(belief_q.subspan(s * A, A));
      out.plan.set_action(t, s, best);
      for (std::size_t m = 0; m < M; ++m) {
        next_v[m * S + s] = member_q[(m * S + s) * A + best];
      }
    }
    if (options.keep_per_mdp_values) {
      for (std::size_t m = 0; m < M; ++m) {
        std::copy_n(next_v.data() + m * S, S, out.per_mdp_v[m].stage(t).data());
      }
    }
  }

  out.root_values.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    out.root_values[s] = out.belief_q(0, s, out.plan.action(0, s));
  }
  return out;
}

std::vector<double> mixture_plan_value(const WeightedMdpSet& set, const MemorylessPlan& plan,
                                       double gamma) {
  const auto& k = kernels::active();
  std::vector<double> total(set.n_states(), 0.0);
  for (std::size_t m = 0; m < set.size(); ++m) {
    const auto v = evaluate_plan_exact(set.mdp(m), plan, gamma, plan.horizon());
    k.axpy(set.weight(m), v.data(), total.data(), total.size());
  }
  return total;
}

std::uint64_t sample_count(double epsilon, double gamma, double r_max) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");

  const double base = 3.0 * r_max / (epsilon * (1.0 - gamma));
  double n = base * base * base;
  const double nearest = std::round(n);
  if (std::abs(n - nearest) <= 1e-12 * std::max(1.0, nearest)) n = nearest;
  n = std::ceil(n);
  if (n >= 18446744073709551615.0) return std::numeric_limits<std::uint64_t>::max();
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(n));
}

double theorem1_gap_bound(double epsilon, double gamma, double r_max) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be nonnegative");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  const double h = 1.0 - gamma;
  return r_max * epsilon / (h * h);
}

MsbiResult msbi(const DirichletBetaBelief& belief, double gamma, double epsilon, Rng& rng,
                MsbiOptions options) {
  std::size_t n = 0;
  if (options.n_samples) {
    n = *options.n_samples;
    if (n == 0) throw std::invalid_argument("msbi needs at least one sample");
  } else {
    const auto wanted = sample_count(epsilon, gamma, belief.r_max());
    if (wanted > kMaxMsbiSamples) {
      throw std::invalid_argument("sample count from epsilon is too large; pass an explicit n");
    }
    n = static_cast<std::size_t>(wanted);
  }
  const std::size_t horizon =
      options.horizon ? *options.horizon : horizon_for_epsilon(epsilon, gamma, belief.r_max());

  std::vector<FiniteMdp> samples;
  samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) samples.push_back(sample_mdp(belief, rng));
  auto set = WeightedMdpSet::uniform(std::move(samples));
  auto result = mmbi(set, gamma, horizon, options.mmbi);
  return {std::move(result), std::move(set), horizon};
}

}  // namespace mmbi
