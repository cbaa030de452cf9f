// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "mmbi/bounds.hpp"
#include "mmbi/environment.hpp"
#include "mmbi/experiment.hpp"
#include "mmbi/planner.hpp"
#include "mmbi/statistics.hpp"
#include "test_support.hpp"

using namespace mmbi;
using mmbi::testing::random_mdp;
using mmbi::testing::random_set;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double sup_abs(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Verdict singleton_equivalence() {
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  bool plans_equal = true;
  for (int i = 0; i < 100; ++i) {
    const std::size_t S = 1 + rng() % 6, A = 1 + rng() % 3, T = 1 + rng() % 30;
    const double gamma = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
    const auto mdp = random_mdp(rng, S, A, 1.0 + 9.0 * std::uniform_real_distribution<double>()(rng));
    const auto ref = solve_finite_horizon(mdp, gamma, T);
    const auto got = mmbi::mmbi(WeightedMdpSet({mdp}, {1.0}), gamma, T);
    worst = std::max(worst, sup_abs(got.belief_q.values(), ref.q.values()));
    std::vector<double> v0(S);
    for (std::size_t s = 0; s < S; ++s) v0[s] = ref.v(0, s);
    worst = std::max(worst, sup_abs(got.root_values, v0));
    plans_equal = plans_equal && got.plan == ref.plan;
  }
  return {worst <= 1e-12 && plans_equal,
          fmt("100 singleton sets, max |dQ| = %.3g, plans %s", worst, plans_equal ? "equal" : "differ")};
}

Verdict evaluation_exactness() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t M = 1 + rng() % 8, S = 1 + rng() % 8, A = 1 + rng() % 4, T = 1 + rng() % 40;
    const double gamma = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
    const auto set = random_set(rng, M, S, A, 10.0);
    const auto res = mmbi::mmbi(set, gamma, T);
    worst = std::max(worst, sup_abs(mixture_plan_value(set, res.plan, gamma), res.root_values));
  }
  return {worst <= 1e-12, fmt("100 weighted sets (|M| <= 8), max |V_plan - V_root| = %.3g", worst)};
}

Verdict greedy_direction() {
  std::mt19937_64 rng(1003);
  int below_or_equal = 0, optimal = 0;
  for (int i = 0; i < 200; ++i) {
    const auto set = random_set(rng, 2, 2, 2);
    const double gamma = 0.9;
    const auto plan = mmbi::mmbi(set, gamma, 3).plan;
    const auto value = mixture_plan_value(set, plan, gamma);
    const auto best = mmbi::testing::brute_force_best_plan_value(set, 3, gamma);
    bool ok = true, eq = true;
    for (std::size_t s = 0; s < 2; ++s) {
      ok = ok && value[s] <= best[s] + 1e-12;
      eq = eq && value[s] >= best[s] - 1e-12;
    }
    below_or_equal += ok;
    optimal += eq;
  }
  return {below_or_equal == 200,
          fmt("%d/200 within brute force; MMBI plan matches the best memoryless plan at every "
              "state in %d/200 (%.1f%%)",
              below_or_equal, optimal, optimal / 2.0)};
}

Verdict theorem1_gap() {
  std::mt19937_64 rng(1004);
  int ok = 0;
  double worst_slack = std::numeric_limits<double>::infinity(), max_gap = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t M = 2 + rng() % 2, S = 2 + rng() % 2, T = 2 + rng() % 3;
    const double gamma = 0.9;
    const auto set = random_set(rng, M, S, 2);
    const auto bayes = bayes_optimal_tiny(set, gamma, T);
    const auto plan_value = mixture_plan_value(set, mmbi::mmbi(set, gamma, T).plan, gamma);
    const double bound = theorem1_gap_bound(bayes.max_weight_drift, gamma, set.r_max());
    bool good = true;
    for (std::size_t s = 0; s < S; ++s) {
      const double gap = bayes.values[s] - plan_value[s];
      max_gap = std::max(max_gap, gap);
      worst_slack = std::min(worst_slack, bound - gap);
      good = good && gap <= bound + 1e-9;
    }
    ok += good;
  }
  return {ok == 50, fmt("%d/50 tiny instances within the bound; max gap %.4g, min slack %.4g", ok,
                        max_gap, worst_slack)};
}

Verdict bound_ordering() {
  int ordered = 0, coincide = 0, strict = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto rows = bound_sweep(random_ensemble(seed), 21, 0.9, 50);
    ordered += std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) {
      return r.upper >= r.emdp - 1e-9 && r.upper >= r.mmbi - 1e-9;
    });
    const auto& last = rows.back();
    coincide += std::abs(last.emdp - last.upper) <= 1e-9 && std::abs(last.mmbi - last.upper) <= 1e-9;
    strict += rows.front().mmbi > rows.front().emdp;
  }
  return {ordered == 100 && coincide == 100 && strict >= 90,
          fmt("ordering %d/100, coincide at lambda=1 %d/100, MMBI strictly tighter at lambda=0 "
              "%d/100 (need >= 90)",
              ordered, coincide, strict)};
}

Verdict formulas() {
  const auto a = sample_count(3.0, 0.5, 1.0);
  const auto b = sample_count(2.0, 0.5, 1.0);
  const auto h = horizon_for_epsilon(0.5, 0.5, 1.0);
  return {a == 8 && b == 27 && h == 2,
          fmt("sample_count(3,0.5,1) = %llu, sample_count(2,0.5,1) = %llu, "
              "horizon_for_epsilon(0.5,0.5,1) = %zu",
              static_cast<unsigned long long>(a), static_cast<unsigned long long>(b), h)};
}

Verdict chain_experiment() {
  ExperimentConfig config;
  AgentConfig exploit;
  exploit.kind = AgentKind::exploit;
  config.cells.push_back({cell_label(exploit), exploit});
  const std::vector<std::size_t> ns{1, 2, 4, 8, 16};
  for (std::size_t n : ns) {
    AgentConfig agent;
    agent.n_samples = n;
    config.cells.push_back({cell_label(agent), agent});
  }
  config.runs = 1000;
  config.steps = 1000;
  config.seed = 1;
  const auto report = experiment(chain_environment(), config);

  std::printf("  oracle total reward %.2f\n", report.oracle_total);
  for (const auto& c : report.cells) {
    std::printf("  %-10s total %8.2f [%.2f, %.2f]  utility %6.3f [%.3f, %.3f]  regret %7.2f  "
                "80%% %.0f -- %.0f  <2500 %.3f  <3000 %.3f\n",
                c.cell.label.c_str(), c.mean_total, c.total_ci.low, c.total_ci.high,
                c.mean_utility, c.utility_ci.low, c.utility_ci.high, c.regret, c.percentile.low,
                c.percentile.high, c.fraction_below(2500.0), c.fraction_below(3000.0));
  }

  const auto& ex = report.cell("exploit");
  const auto& n1 = report.cell("mcbrl_n1");
  const auto& n8 = report.cell("mcbrl_n8");
  const auto& n16 = report.cell("mcbrl_n16");

  const bool a = ex.mean_total >= 2950.0 && ex.mean_total <= 3600.0;
  const bool b_order = n1.utility_ci.high < n8.utility_ci.low && n8.utility_ci.high < n16.utility_ci.low;
  bool b_exploit = true;
  for (std::size_t n : ns) {
    b_exploit = b_exploit && ex.mean_utility < report.cell("mcbrl_n" + std::to_string(n)).mean_utility;
  }
  bool c = true;
  for (std::size_t i = 0; i + 1 < ns.size(); ++i) {
    const auto& lo = report.cell("mcbrl_n" + std::to_string(ns[i]));
    const auto& hi = report.cell("mcbrl_n" + std::to_string(ns[i + 1]));
    c = c && (hi.regret <= lo.regret || hi.regret_ci.overlaps(lo.regret_ci));
  }
  // Over-exploration shows up as mass below 3000 that the better-informed cell avoids.
  const bool d_mass = n1.fraction_below(3000.0) > n8.fraction_below(3000.0);
  const bool d_stuck = n16.fraction_below(2500.0) < 0.05;

  const bool pass = a && b_order && b_exploit && c && d_mass && d_stuck;
  return {pass, fmt("(a) exploit total %.1f in [2950, 3600]: %s; (b) utility n=1<8<16 with "
                    "disjoint CIs: %s, exploit below all MCBRL: %s; (c) regret monotone within CI "
                    "overlap: %s; (d) n=1 mass <3000 %.3f > n=8 %.3f: %s, n=16 <2500 %.3f < 0.05: %s",
                    ex.mean_total, a ? "yes" : "no", b_order ? "yes" : "no",
                    b_exploit ? "yes" : "no", c ? "yes" : "no", n1.fraction_below(3000.0),
                    n8.fraction_below(3000.0), d_mass ? "yes" : "no", n16.fraction_below(2500.0),
                    d_stuck ? "yes" : "no")};
}

Verdict bootstrap_coverage() {
  const std::size_t trials = 1000, n = 100;
  int covered = 0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(8, trial, 0));
    std::normal_distribution<double> normal(10.0, 3.0);
    std::vector<double> x(n);
    for (auto& v : x) v = normal(rng);
    covered += bootstrap_ci(x, 10000, 0.95, derive_seed(8, trial, 1)).contains(10.0);
  }
  const double rate = covered / static_cast<double>(trials);
  return {rate >= 0.93 && rate <= 0.97,
          fmt("95%% percentile bootstrap, N(10, 3^2) samples of %zu, 10^4 resamples: coverage "
              "%d/%zu = %.3f",
              n, covered, trials, rate)};
}

// Not a criterion: regret ordering across n for other replan intervals.
void replan_interval_sweep() {
  for (std::size_t B : {10u, 40u}) {
    ExperimentConfig config;
    for (std::size_t n : {1u, 8u, 16u}) {
      AgentConfig agent;
      agent.n_samples = n;
      agent.replan_interval = B;
      config.cells.push_back({cell_label(agent), agent});
    }
    config.runs = 300;
    config.steps = 1000;
    config.seed = 2;
    config.bootstrap_resamples = 2000;
    const auto report = experiment(chain_environment(), config);
    std::printf("info: B = %zu, 300 runs, regret", B);
    for (const auto& c : report.cells) {
      std::printf("  %s %.1f [%.1f, %.1f]", c.cell.label.c_str(), c.regret, c.regret_ci.low,
                  c.regret_ci.high);
    }
    std::printf("\n");
  }
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "singleton sets reduce to backwards induction", 5.0, singleton_equivalence},
      {2, "MMBI root values equal the plan's mixture value", 10.0, evaluation_exactness},
      {3, "greedy plan never beats plan enumeration", 30.0, greedy_direction},
      {4, "Bayes-optimal gap within the drift bound", 120.0, theorem1_gap},
      {5, "bound ordering on 8-MDP ensembles", 120.0, bound_ordering},
      {6, "sample-count and horizon formulas", 1.0, formulas},
      {7, "chain experiment at desk scale", 900.0, chain_experiment},
      {8, "bootstrap calibration", 60.0, bootstrap_coverage},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs <= c.budget_seconds;
    const bool pass = v.pass && in_time;
    failures += !pass;
    std::printf("%s criterion %d: %s -- %s; %.2f s (budget %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id,
                c.name, v.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", exceeded");
    std::fflush(stdout);
  }
  replan_interval_sweep();
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
