#include "mmbi/belief.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mmbi {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t run, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(run), static_cast<std::uint32_t>(run >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

DirichletBetaBelief::DirichletBetaBelief(std::size_t n_states, std::size_t n_actions,
                                         double r_max, std::vector<double> dirichlet_counts,
                                         std::vector<double> beta_alpha,
                                         std::vector<double> beta_beta)
    : n_states_(n_states),
      n_actions_(n_actions),
      r_max_(r_max),
      counts_(std::move(dirichlet_counts)),
      alpha_(std::move(beta_alpha)),
      beta_(std::move(beta_beta)) {
  if (n_states_ == 0 || n_actions_ == 0) {
    throw std::invalid_argument("belief needs at least one state and one action");
  }
  if (!(r_max_ > 0.0) || !std::isfinite(r_max_)) {
    throw std::invalid_argument("r_max must be a positive finite number");
  }
  if (counts_.size() != n_states_ * n_actions_ * n_states_ ||
      alpha_.size() != n_states_ * n_actions_ || beta_.size() != n_states_ * n_actions_) {
    throw std::invalid_argument("belief parameter tables have the wrong size");
  }
  for (std::size_t row = 0; row < n_states_ * n_actions_; ++row) {
    double total = 0.0;
    for (std::size_t j = 0; j < n_states_; ++j) {
      const double c = counts_[row * n_states_ + j];
      if (!(c >= 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("Dirichlet counts must be finite and nonnegative");
      }
      total += c;
    }
    if (!(total > 0.0)) throw std::invalid_argument("every Dirichlet row needs positive mass");
    if (!(alpha_[row] > 0.0) || !(beta_[row] > 0.0) || !std::isfinite(alpha_[row]) ||
        !std::isfinite(beta_[row])) {
      throw std::invalid_argument("Beta parameters must be positive and finite");
    }
  }
}

void DirichletBetaBelief::observe(std::size_t s, std::size_t a, double reward, std::size_t next) {
  if (s >= n_states_ || next >= n_states_) throw std::invalid_argument("state index out of range");
  if (a >= n_actions_) throw std::invalid_argument("action index out of range");
  if (!(reward >= 0.0 && reward <= r_max_)) {
    throw std::invalid_argument("observed reward outside [0, r_max]");
  }
  const std::size_t row = s * n_actions_ + a;
  counts_[row * n_states_ + next] += 1.0;
  const double fraction = reward / r_max_;
  alpha_[row] += fraction;
  beta_[row] += 1.0 - fraction;
}

DirichletBetaBelief new_prior(std::size_t n_states, std::size_t n_actions,
                              double dirichlet_mass_per_entry, double beta_alpha,
                              double beta_beta, double r_max) {
  if (!(dirichlet_mass_per_entry > 0.0) || !(beta_alpha > 0.0) || !(beta_beta > 0.0)) {
    throw std::invalid_argument("prior parameters must be positive");
  }
  const std::size_t rows = n_states * n_actions;
  return DirichletBetaBelief(n_states, n_actions, r_max,
                             std::vector<double>(rows * n_states, dirichlet_mass_per_entry),
                             std::vector<double>(rows, beta_alpha),
                             std::vector<double>(rows, beta_beta));
}

DirichletBetaBelief update(const DirichletBetaBelief& belief, std::size_t s, std::size_t a,
                           double reward, std::size_t next) {
  DirichletBetaBelief posterior = belief;
  posterior.observe(s, a, reward, next);
  return posterior;
}

FiniteMdp expected_mdp(const DirichletBetaBelief& belief) {
  const std::size_t S = belief.n_states();
  const std::size_t A = belief.n_actions();
  std::vector<double> transitions(S * A * S);
  std::vector<double> rewards(S * A);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      const auto counts = belief.counts_row(s, a);
      double total = 0.0;
      for (double c : counts) total += c;
      double* row = transitions.data() + (s * A + a) * S;
      for (std::size_t j = 0; j < S; ++j) row[j] = counts[j] / total;
      const double al = belief.alpha(s, a);
      rewards[s * A + a] = belief.r_max() * (al / (al + belief.beta(s, a)));
    }
  }
  return FiniteMdp(S, A, belief.r_max(), std::move(transitions), std::move(rewards));
}

FiniteMdp sample_mdp(const DirichletBetaBelief& belief, Rng& rng) {
  const std::size_t S = belief.n_states();
  const std::size_t A = belief.n_actions();
  std::vector<double> transitions(S * A * S);
  std::vector<double> rewards(S * A);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t a = 0; a < A; ++a) {
      const auto counts = belief.counts_row(s, a);
      double* row = transitions.data() + (s * A + a) * S;
      double total = 0.0;
      for (std::size_t j = 0; j < S; ++j) {
        row[j] = counts[j] > 0.0 ? std::gamma_distribution<double>(counts[j], 1.0)(rng) : 0.0;
        total += row[j];
      }
      if (total > 0.0 && std::isfinite(total)) {
        for (std::size_t j = 0; j < S; ++j) row[j] /= total;
      } else {
        // Every draw underflowed; fall back to the heaviest component.
        const auto heaviest = static_cast<std::size_t>(
            std::max_element(counts.begin(), counts.end()) - counts.begin());
        std::fill(row, row + S, 0.0);
        row[heaviest] = 1.0;
      }

      const double x = std::gamma_distribution<double>(belief.alpha(s, a), 1.0)(rng);
      const double y = std::gamma_distribution<double>(belief.beta(s, a), 1.0)(rng);
      double fraction = x + y > 0.0 ? x / (x + y) : belief.alpha(s, a) /
                                                        (belief.alpha(s, a) + belief.beta(s, a));
      rewards[s * A + a] = belief.r_max() * std::clamp(fraction, 0.0, 1.0);
    }
  }
  return FiniteMdp(S, A, belief.r_max(), std::move(transitions), std::move(rewards));
}

double weight_l1_distance(std::span<const double> w, std::span<const double> w_other) {
  if (w.size() != w_other.size()) throw std::invalid_argument("weight vectors differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += std::abs(w[i] - w_other[i]);
  return sum;
}

}  // namespace mmbi
