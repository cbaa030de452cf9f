#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mmbi/mdp.hpp"
#include "mmbi/rng.hpp"

namespace mmbi {

/// Conjugate posterior over finite MDPs: an independent Dirichlet over each
/// transition row and an independent Beta over each mean reward, with rewards
/// normalised to [0, 1] by r_max.
class DirichletBetaBelief {
 public:
  DirichletBetaBelief(std::size_t n_states, std::size_t n_actions, double r_max,
                      std::vector<double> dirichlet_counts, std::vector<double> beta_alpha,
                      std::vector<double> beta_beta);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }
  double r_max() const { return r_max_; }

  double count(std::size_t s, std::size_t a, std::size_t next) const {
    return counts_[(s * n_actions_ + a) * n_states_ + next];
  }
  std::span<const double> counts_row(std::size_t s, std::size_t a) const {
    return {counts_.data() + (s * n_actions_ + a) * n_states_, n_states_};
  }
  double alpha(std::size_t s, std::size_t a) const { return alpha_[s * n_actions_ + a]; }
  double beta(std::size_t s, std::size_t a) const { return beta_[s * n_actions_ + a]; }

  std::span<const double> dirichlet_counts() const { return counts_; }
  std::span<const double> beta_alpha() const { return alpha_; }
  std::span<const double> beta_beta() const { return beta_; }

  /// In-place posterior update with one observed transition.
  void observe(std::size_t s, std::size_t a, double reward, std::size_t next);

  friend bool operator==(const DirichletBetaBelief&, const DirichletBetaBelief&) = default;

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  double r_max_;
  std::vector<double> counts_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

/// Uniform prior: every Dirichlet parameter equal to `dirichlet_mass_per_entry`
/// and every reward prior Beta(beta_alpha, beta_beta).
DirichletBetaBelief new_prior(std::size_t n_states, std::size_t n_actions,
                              double dirichlet_mass_per_entry, double beta_alpha,
                              double beta_beta, double r_max);

/// Posterior after observing (s, a, r, s'). The input belief is left untouched.
DirichletBetaBelief update(const DirichletBetaBelief& belief, std::size_t s, std::size_t a,
                           double reward, std::size_t next);

/// Posterior-mean MDP.
FiniteMdp expected_mdp(const DirichletBetaBelief& belief);

/// One MDP drawn from the posterior.
FiniteMdp sample_mdp(const DirichletBetaBelief& belief, Rng& rng);

/// sum_i |w_i - w'_i|.
double weight_l1_distance(std::span<const double> w, std::span<const double> w_other);

}  // namespace mmbi
