#include "mmbi/bounds.hpp"

#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#include "mmbi/kernels.hpp"
#include "mmbi/rng.hpp"

namespace mmbi {

namespace {

double state_average(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> lower_bound_emdp(const WeightedMdpSet& set, double gamma, std::size_t horizon) {
  const auto plan = solve_finite_horizon(expected_mdp(set), gamma, horizon).plan;
  return mixture_plan_value(set, plan, gamma);
}

std::vector<double> lower_bound_mmbi(const WeightedMdpSet& set, double gamma, std::size_t horizon) {
  const auto result = mmbi(set, gamma, horizon);
  return mixture_plan_value(set, result.plan, gamma);
}

std::vector<double> upper_bound_expected_max(const WeightedMdpSet& set, double gamma,
                                             std::size_t horizon) {
  const auto& k = kernels::active();
  std::vector<double> total(set.n_states(), 0.0);
  for (std::size_t m = 0; m < set.size(); ++m) {
    const auto solution = solve_finite_horizon(set.mdp(m), gamma, horizon);
    k.axpy(set.weight(m), solution.v.stage(0).data(), total.data(), total.size());
  }
  return total;
}

std::vector<BoundRow> bound_sweep(std::span<const FiniteMdp> mdps, std::size_t grid, double gamma,
                                  std::size_t horizon) {
  if (mdps.size() != kSweepEnsembleSize) {
    throw std::invalid_argument("bound sweep expects exactly 8 MDPs");
  }
  if (grid < 2) throw std::invalid_argument("bound sweep grid needs at least 2 points");

  const std::size_t n = mdps.size();
  const std::vector<FiniteMdp> members(mdps.begin(), mdps.end());
  std::vector<BoundRow> rows;
  rows.reserve(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double lambda = static_cast<double>(i) / static_cast<double>(grid - 1);
    std::vector<double> weights(n, (1.0 - lambda) / static_cast<double>(n));
    weights[0] += lambda;
    const WeightedMdpSet set(members, std::move(weights));
    rows.push_back({lambda, state_average(lower_bound_emdp(set, gamma, horizon)),
                    state_average(lower_bound_mmbi(set, gamma, horizon)),
                    state_average(upper_bound_expected_max(set, gamma, horizon))});
  }
  return rows;
}

std::vector<FiniteMdp> random_ensemble(std::uint64_t seed, EnsembleShape shape) {
  Rng rng(seed);
  std::gamma_distribution<double> unit_gamma(1.0, 1.0);
  std::uniform_real_distribution<double> reward(0.0, shape.r_max);
  const std::size_t S = shape.n_states;
  const std::size_t A = shape.n_actions;
  std::vector<FiniteMdp> out;
  out.reserve(shape.n_mdps);
  for (std::size_t m = 0; m < shape.n_mdps; ++m) {
    std::vector<double> transitions(S * A * S);
    std::vector<double> rewards(S * A);
    for (std::size_t row = 0; row < S * A; ++row) {
      double total = 0.0;
      for (std::size_t j = 0; j < S; ++j) total += transitions[row * S + j] = unit_gamma(rng);
      for (std::size_t j = 0; j < S; ++j) transitions[row * S + j] /= total;
      rewards[row] = reward(rng);
    }
    out.emplace_back(S, A, shape.r_max, std::move(transitions), std::move(rewards));
  }
  return out;
}

void write_bounds_csv(std::ostream& out, std::span<const BoundRow> rows) {
  out << "lambda,emdp_bound,mmbi_bound,upper_bound\n";
  out << std::setprecision(17);
  for (const auto& r : rows) {
    out << r.lambda << ',' << r.emdp << ',' << r.mmbi << ',' << r.upper << '\n';
  }
}

}  // namespace mmbi
