#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mmbi/belief.hpp"
#include "mmbi/environment.hpp"
#include "mmbi/json_io.hpp"

using namespace mmbi;

TEST_CASE("new_prior") {
  SUBCASE("chain prior: Dirichlet mass 1/|S| and Beta(1, 1)") {
    const auto prior = new_prior(5, 2, 0.2, 1.0, 1.0, 10.0);
    for (double c : prior.dirichlet_counts()) CHECK(c == 0.2);
    for (double a : prior.beta_alpha()) CHECK(a == 1.0);
    for (double b : prior.beta_beta()) CHECK(b == 1.0);
    CHECK(prior.r_max() == 10.0);
  }
  SUBCASE("symmetric prior has uniform rows and reward r_max / 2") {
    const auto mdp = expected_mdp(new_prior(2, 2, 1.0, 1.0, 1.0, 1.0));
    for (double p : mdp.transitions()) CHECK(p == 0.5);
    for (double r : mdp.mean_rewards()) CHECK(r == 0.5);
  }
  SUBCASE("equal masses give uniform rows") {
    const auto mdp = expected_mdp(new_prior(3, 1, 0.5, 2.0, 2.0, 1.0));
    for (double p : mdp.transitions()) CHECK(p == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("nonpositive parameters are rejected") {
    CHECK_THROWS_AS(new_prior(2, 2, 0.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(new_prior(2, 2, 1.0, -1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(new_prior(2, 2, 1.0, 1.0, 0.0, 1.0), std::invalid_argument);
  }
}

TEST_CASE("update") {
  const auto prior = new_prior(5, 2, 0.2, 1.0, 1.0, 10.0);

  SUBCASE("one observation moves the posterior mean to (0.2 + 1) / (1 + 1)") {
    const auto post = update(prior, 1, 0, 0.0, 2);
    CHECK(expected_mdp(post).transition(1, 0, 2) == doctest::Approx(0.6));
    CHECK(post.count(1, 0, 2) == doctest::Approx(1.2));
    CHECK(prior.count(1, 0, 2) == 0.2);  // input untouched
  }
  SUBCASE("reward r_max adds one to alpha and nothing to beta") {
    const auto post = update(prior, 0, 1, 10.0, 0);
    CHECK(post.alpha(0, 1) == 2.0);
    CHECK(post.beta(0, 1) == 1.0);
  }
  SUBCASE("fractional reward splits the pseudo-observation") {
    const auto post = update(prior, 0, 1, 2.0, 0);
    CHECK(post.alpha(0, 1) == doctest::Approx(1.2));
    CHECK(post.beta(0, 1) == doctest::Approx(1.8));
  }
  SUBCASE("100 observations of s' = 0") {
    auto post = prior;
    for (int i = 0; i < 100; ++i) post.observe(3, 1, 0.0, 0);
    CHECK(expected_mdp(post).transition(3, 1, 0) == doctest::Approx(100.2 / 101.0));
  }
  SUBCASE("only the observed entries change") {
    const auto post = update(prior, 2, 1, 5.0, 4);
    std::size_t changed = 0;
    for (std::size_t i = 0; i < prior.dirichlet_counts().size(); ++i) {
      changed += prior.dirichlet_counts()[i] != post.dirichlet_counts()[i];
    }
    CHECK(changed == 1);
  }
  SUBCASE("invalid observations") {
    CHECK_THROWS_AS(update(prior, 0, 0, 10.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(update(prior, 0, 0, -1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(update(prior, 5, 0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(update(prior, 0, 2, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(update(prior, 0, 0, 1.0, 7), std::invalid_argument);
  }
}

TEST_CASE("property: update order does not matter") {
  std::mt19937_64 rng(21);
  const auto prior = new_prior(4, 3, 0.25, 1.0, 1.0, 5.0);
  struct Obs {
    std::size_t s, a, next;
    double r;
  };
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Obs> obs(50);
    for (auto& o : obs) {
      o = {rng() % 4, rng() % 3, rng() % 4, 0.5 * static_cast<double>(rng() % 11)};
    }
    auto forward = prior;
    for (const auto& o : obs) forward.observe(o.s, o.a, o.r, o.next);
    std::shuffle(obs.begin(), obs.end(), rng);
    auto shuffled = prior;
    for (const auto& o : obs) shuffled.observe(o.s, o.a, o.r, o.next);
    for (std::size_t i = 0; i < forward.dirichlet_counts().size(); ++i) {
      CHECK(forward.dirichlet_counts()[i] == shuffled.dirichlet_counts()[i]);
    }
    for (std::size_t i = 0; i < forward.beta_alpha().size(); ++i) {
      CHECK(forward.beta_alpha()[i] == doctest::Approx(shuffled.beta_alpha()[i]).epsilon(1e-12));
      CHECK(forward.beta_beta()[i] == doctest::Approx(shuffled.beta_beta()[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("expected_mdp") {
  SUBCASE("chain prior: all mean rewards 5") {
    const auto mdp = expected_mdp(new_prior(5, 2, 0.2, 1.0, 1.0, 10.0));
    for (double r : mdp.mean_rewards()) CHECK(r == 5.0);
    CHECK(validate_mdp(mdp).empty());
  }
  SUBCASE("heavily counted row approaches a point mass") {
    DirichletBetaBelief b(3, 1, 1.0, {1000.0, 1e-9, 1e-9, 1, 1, 1, 1, 1, 1}, {1, 1, 1}, {1, 1, 1});
    CHECK(expected_mdp(b).transition(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("converges to the empirical frequencies of a true MDP") {
    const auto truth = chain_task();
    auto belief = new_prior(5, 2, 0.2, 1.0, 1.0, 10.0);
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t n = 10'000;
    std::vector<double> hits(5, 0.0);
    const std::size_t s = 2, a = chain::kForward;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = u(rng);
      double c = 0.0;
      std::size_t next = 4;
      for (std::size_t j = 0; j < 5; ++j) {
        c += truth.transition(s, a, j);
        if (x < c) {
          next = j;
          break;
        }
      }
      hits[next] += 1.0;
      belief.observe(s, a, 0.0, next);
    }
    const auto mdp = expected_mdp(belief);
    for (std::size_t j = 0; j < 5; ++j) {
      const double p = truth.transition(s, a, j);
      const double sigma = std::sqrt(p * (1.0 - p) / n);
      // posterior mean = (hits + 0.2) / (n + 1); the prior bias is O(1/n).
      CHECK(std::abs(mdp.transition(s, a, j) - p) <= 4.0 * sigma + 2.0 / n);
      CHECK(mdp.transition(s, a, j) == doctest::Approx((hits[j] + 0.2) / (n + 1.0)));
    }
  }
}

TEST_CASE("sample_mdp") {
  const auto prior = new_prior(5, 2, 0.2, 1.0, 1.0, 10.0);

  SUBCASE("samples are valid MDPs") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) CHECK(validate_mdp(sample_mdp(prior, rng)).empty());
  }
  SUBCASE("same seed, same sample") {
    Rng a(99), b(99);
    const auto x = sample_mdp(prior, a);
    const auto y = sample_mdp(prior, b);
    CHECK(std::equal(x.transitions().begin(), x.transitions().end(), y.transitions().begin()));
    CHECK(std::equal(x.mean_rewards().begin(), x.mean_rewards().end(), y.mean_rewards().begin()));
  }
  SUBCASE("sample mean of 1e4 draws within 4 standard errors of the posterior mean") {
    auto belief = prior;
    belief.observe(0, 0, 10.0, 1);
    belief.observe(0, 0, 0.0, 1);
    belief.observe(3, 1, 2.0, 0);
    const auto expected = expected_mdp(belief);
    Rng rng(32);
    const std::size_t n = 10'000;
    std::vector<double> sum(expected.transitions().size(), 0.0);
    std::vector<double> reward_sum(expected.mean_rewards().size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto m = sample_mdp(belief, rng);
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += m.transitions()[k];
      for (std::size_t k = 0; k < reward_sum.size(); ++k) reward_sum[k] += m.mean_rewards()[k];
    }
    for (std::size_t s = 0; s < 5; ++s)
      for (std::size_t a = 0; a < 2; ++a) {
        const auto row = belief.counts_row(s, a);
        double total = 0.0;
        for (double c : row) total += c;
        for (std::size_t j = 0; j < 5; ++j) {
          const double alpha = row[j];
          const double var = alpha * (total - alpha) / (total * total * (total + 1.0));
          const std::size_t k = (s * 2 + a) * 5 + j;
          CHECK(std::abs(sum[k] / n - expected.transitions()[k]) <= 4.0 * std::sqrt(var / n));
        }
        const double al = belief.alpha(s, a), be = belief.beta(s, a);
        const double var = 100.0 * al * be / ((al + be) * (al + be) * (al + be + 1.0));
        CHECK(std::abs(reward_sum[s * 2 + a] / n - expected.reward(s, a)) <= 4.0 * std::sqrt(var / n));
      }
  }
  SUBCASE("concentrated belief samples agree with its mean within 1e-2") {
    std::vector<double> counts(5 * 2 * 5, 1e-3);
    for (std::size_t row = 0; row < 10; ++row) counts[row * 5 + (row % 5)] = 1e6;
    DirichletBetaBelief b(5, 2, 10.0, counts, std::vector<double>(10, 3e6),
                          std::vector<double>(10, 1e6));
    const auto mean_mdp = expected_mdp(b);
    Rng rng(33);
    for (int i = 0; i < 20; ++i) {
      const auto m = sample_mdp(b, rng);
      for (std::size_t k = 0; k < 50; ++k) {
        CHECK(std::abs(m.transitions()[k] - mean_mdp.transitions()[k]) <= 1e-2);
      }
      for (std::size_t k = 0; k < 10; ++k) {
        CHECK(std::abs(m.mean_rewards()[k] - mean_mdp.mean_rewards()[k]) <= 1e-2);
      }
    }
  }
}

TEST_CASE("weight_l1_distance") {
  const std::vector<double> a{0.5, 0.5}, b{0.75, 0.25}, e0{1.0, 0.0}, e1{0.0, 1.0};
  CHECK(weight_l1_distance(a, a) == 0.0);
  CHECK(weight_l1_distance(e0, e1) == 2.0);
  CHECK(weight_l1_distance(a, b) == 0.5);
  CHECK_THROWS_AS(weight_l1_distance(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("belief construction invariants and JSON") {
  CHECK_THROWS_AS(DirichletBetaBelief(1, 1, 1.0, {0.0}, {1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DirichletBetaBelief(1, 1, 1.0, {1.0}, {0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(DirichletBetaBelief(1, 1, 1.0, {1.0, 1.0}, {1.0}, {1.0}), std::invalid_argument);

  auto belief = new_prior(3, 2, 0.3, 1.0, 2.0, 4.0);
  belief.observe(1, 1, 3.0, 2);
  const auto back = belief_from_json(Json::parse(to_json(belief).dump()));
  CHECK(back == belief);
}
