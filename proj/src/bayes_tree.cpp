#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

#include "mmbi/error.hpp"
#include "mmbi/planner.hpp"

namespace mmbi {

namespace {

class BeliefTree {
 public:
  BeliefTree(const WeightedMdpSet& set, double gamma, std::size_t horizon, BayesOptimalResult& out)
      : set_(set), gamma_(gamma), horizon_(horizon), out_(out),
        root_(set.weights().begin(), set.weights().end()) {}

  // Returns (value, action) at a decision node.
  std::pair<double, std::size_t> solve(std::size_t depth, std::size_t s,
                                       const std::vector<double>& w) {
    ++out_.nodes;
    out_.max_weight_drift = std::max(out_.max_weight_drift, weight_l1_distance(root_, w));

    const std::size_t M = set_.size();
    const std::size_t S = set_.n_states();
    const std::size_t slot = out_.policy.size();
    out_.policy.push_back({depth, s, w, 0, 0.0});

    double best_value = -std::numeric_limits<double>::infinity();
    std::size_t best_action = 0;
    std::vector<double> posterior(M);
    for (std::size_t a = 0; a < set_.n_actions(); ++a) {
      double q = 0.0;
      for (std::size_t m = 0; m < M; ++m) q += w[m] * set_.mdp(m).reward(s, a);
      if (depth + 1 < horizon_) {
        double future = 0.0;
        for (std::size_t next = 0; next < S; ++next) {
          double predictive = 0.0;
          for (std::size_t m = 0; m < M; ++m) {
            posterior[m] = w[m] * set_.mdp(m).transition(s, a, next);
            predictive += posterior[m];
          }
          if (!(predictive > 0.0)) continue;
          for (double& p : posterior) p /= predictive;
          future += predictive * solve(depth + 1, next, posterior).first;
        }
        q += gamma_ * future;
      }
      if (q > best_value) {
        best_value = q;
        best_action = a;
      }
    }
    out_.policy[slot].action = best_action;
    out_.policy[slot].value = best_value;
    return {best_value, best_action};
  }

 private:
  const WeightedMdpSet& set_;
  double gamma_;
  std::size_t horizon_;
  BayesOptimalResult& out_;
  std::vector<double> root_;
};

}  // namespace

BayesOptimalResult bayes_optimal_tiny(const WeightedMdpSet& set, double gamma,
                                      std::size_t horizon) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("discount must lie in [0, 1)");
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");

  const double branching = static_cast<double>(set.n_states() * set.n_actions());
  const double estimate = static_cast<double>(set.size()) * static_cast<double>(set.n_states()) *
                          std::pow(branching, static_cast<double>(horizon));
  if (estimate > kMaxBeliefTreeNodes) {
    throw InstanceTooLarge("belief tree would need about " + std::to_string(estimate) +
                           " nodes; the limit is 1e6");
  }

  BayesOptimalResult out;
  BeliefTree tree(set, gamma, horizon, out);
  const std::vector<double> root(set.weights().begin(), set.weights().end());
  for (std::size_t s = 0; s < set.n_states(); ++s) {
    const auto [value, action] = tree.solve(0, s, root);
    out.values.push_back(value);
    out.root_actions.push_back(action);
  }
  return out;
}

}  // namespace mmbi
