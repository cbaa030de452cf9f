#include "mmbi/experiment.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "mmbi/parallel.hpp"

namespace mmbi {

namespace {

// Bootstrap streams sit after the per-run environment and agent streams.
constexpr std::uint64_t kBootstrapStream = 16;

}  // namespace

std::vector<double> CellReport::totals() const {
  std::vector<double> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(r.total_reward);
  return out;
}

std::vector<double> CellReport::utilities() const {
  std::vector<double> out;
  out.reserve(runs.size());
  for (const auto& r : runs) out.push_back(r.discounted_utility);
  return out;
}

double CellReport::fraction_below(double threshold) const {
  if (runs.empty()) return 0.0;
  const auto n = std::count_if(runs.begin(), runs.end(),
                               [&](const RunRecord& r) { return r.total_reward < threshold; });
  return static_cast<double>(n) / static_cast<double>(runs.size());
}

const CellReport& ExperimentReport::cell(const std::string& label) const {
  for (const auto& c : cells) {
    if (c.cell.label == label) return c;
  }
  throw std::out_of_range("no experiment cell labelled '" + label + "'");
}

std::string cell_label(const AgentConfig& agent) {
  if (agent.kind == AgentKind::mcbrl) return "mcbrl_n" + std::to_string(agent.n_samples);
  return std::string(agent_kind_name(agent.kind));
}

ExperimentReport experiment(const Environment& env, const ExperimentConfig& config) {
  if (config.cells.empty()) throw std::invalid_argument("experiment has no agent cells");
  if (config.runs < 2) throw std::invalid_argument("experiment needs at least two runs");
  if (config.steps == 0) throw std::invalid_argument("experiment needs at least one step");
  for (const auto& cell : config.cells) cell.agent.validate();

  const auto& mdp = env.mdp();
  const double mass = config.dirichlet_mass > 0.0
                          ? config.dirichlet_mass
                          : 1.0 / static_cast<double>(mdp.n_states());
  const auto prior = new_prior(mdp.n_states(), mdp.n_actions(), mass, config.beta_alpha,
                               config.beta_beta, mdp.r_max());

  ExperimentReport report;
  report.oracle_total = oracle_total_reward(mdp, config.steps, env.start_state());
  report.runs = config.runs;
  report.steps = config.steps;

  const std::size_t n_cells = config.cells.size();
  std::vector<std::vector<RunRecord>> runs(n_cells, std::vector<RunRecord>(config.runs));
  parallel_for(
      n_cells * config.runs,
      [&](std::size_t task) {
        const std::size_t c = task / config.runs;
        const std::size_t r = task % config.runs;
        runs[c][r] =
            run_episode(env, config.cells[c].agent, prior, config.steps, config.seed, r, false);
      },
      config.threads);

  const double max_total = static_cast<double>(config.steps) * mdp.r_max();
  for (std::size_t c = 0; c < n_cells; ++c) {
    CellReport cell;
    cell.cell = config.cells[c];
    cell.runs = std::move(runs[c]);
    const auto totals = cell.totals();
    const auto utilities = cell.utilities();
    cell.mean_total = mean(totals);
    cell.mean_utility = mean(utilities);
    cell.regret = report.oracle_total - cell.mean_total;
    cell.total_ci = bootstrap_ci(totals, config.bootstrap_resamples, config.ci_level,
                                 derive_seed(config.seed, c, kBootstrapStream));
    cell.utility_ci = bootstrap_ci(utilities, config.bootstrap_resamples, config.ci_level,
                                   derive_seed(config.seed, c, kBootstrapStream + 1));
    cell.regret_ci = {report.oracle_total - cell.total_ci.high,
                      report.oracle_total - cell.total_ci.low};
    cell.percentile = percentile_interval(totals, config.percentile_coverage);
    cell.histogram = histogram(totals, 0.0, max_total, config.histogram_bin_width);
    report.cells.push_back(std::move(cell));
  }
  return report;
}

void write_runs_csv(std::ostream& out, const ExperimentReport& report) {
  out << "agent,n,seed,total_reward,utility\n";
  out << std::setprecision(17);
  for (const auto& cell : report.cells) {
    const auto& agent = cell.cell.agent;
    const std::size_t n = agent.kind == AgentKind::mcbrl ? agent.n_samples : 0;
    for (const auto& r : cell.runs) {
      out << agent_kind_name(agent.kind) << ',' << n << ',' << r.seed << ',' << r.total_reward
          << ',' << r.discounted_utility << '\n';
    }
  }
}

void write_histogram_csv(std::ostream& out, const CellReport& cell) {
  out << "bin_low,bin_high,count\n";
  out << std::setprecision(17);
  for (const auto& bin : cell.histogram) {
    out << bin.low << ',' << bin.high << ',' << bin.count << '\n';
  }
}

}  // namespace mmbi
