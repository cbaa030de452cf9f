#include "mmbi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "mmbi/bounds.hpp"
#include "mmbi/error.hpp"
#include "mmbi/experiment.hpp"
#include "mmbi/json_io.hpp"
#include "mmbi/planner.hpp"

namespace mmbi::cli {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// --config file: every key becomes "--key value" placed before the real
// arguments, so explicit flags win (options take the last value).
std::vector<std::string> config_arguments(const Json& config) {
  if (!config.is_object()) throw std::invalid_argument("--config must hold a JSON object");
  std::vector<std::string> out;
  for (const auto& [key, value] : config.items()) {
    const std::string flag = key.size() == 1 ? "-" + key : "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
      continue;
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_array()) {
      for (const auto& item : value) {
        if (!text.empty()) text += ',';
        text += item.is_string() ? item.get<std::string>() : item.dump();
      }
    } else {
      text = value.dump();
    }
    out.push_back(flag);
    out.push_back(text);
  }
  return out;
}

std::vector<FiniteMdp> load_ensemble(const std::string& spec) {
  constexpr std::string_view kRandom = "random:";
  if (spec.rfind(kRandom, 0) == 0) {
    const std::string seed_text = spec.substr(kRandom.size());
    std::size_t used = 0;
    unsigned long long seed = 0;
    try {
      seed = std::stoull(seed_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != seed_text.size()) {
      throw std::invalid_argument("expected random:<integer seed>, got '" + spec + "'");
    }
    return random_ensemble(seed);
  }
  const Json doc = read_json_file(spec);
  const Json& list = doc.is_object() && doc.contains("mdps") ? doc.at("mdps") : doc;
  if (!list.is_array()) throw std::invalid_argument("MDP file must hold an array of MDPs");
  std::vector<FiniteMdp> mdps;
  for (const auto& item : list) mdps.push_back(mdp_from_json(item));
  return mdps;
}

struct BoundsArgs {
  std::string mdps;
  std::size_t grid = 21;
  double gamma = 0.9;
  std::size_t horizon = 50;
  std::string out = "-";
};

struct ChainArgs {
  std::string agents = "exploit,mcbrl";
  std::string n = "1,8,16";
  std::size_t runs = 1000;
  std::size_t steps = 1000;
  double gamma = 0.95;
  std::size_t replan_interval = 20;
  std::uint64_t seed = 1;
  std::string out = "chain_results";
  double vi_tolerance = 1e-3;
  double plan_epsilon = 0.01;
  std::size_t resamples = 10000;
  bool full_scale = false;
};

struct PlanArgs {
  std::string belief;
  std::optional<std::size_t> n;
  double gamma = 0.95;
  double epsilon = 0.01;
  std::optional<std::size_t> horizon;
  std::uint64_t seed = 1;
};

void cmd_bounds(const BoundsArgs& args, std::ostream& out) {
  const auto mdps = load_ensemble(args.mdps);
  const auto rows = bound_sweep(mdps, args.grid, args.gamma, args.horizon);
  if (args.out == "-") {
    write_bounds_csv(out, rows);
    return;
  }
  std::ofstream file(args.out);
  if (!file) throw IoError("cannot write '" + args.out + "'");
  write_bounds_csv(file, rows);
}

std::vector<CellSpec> chain_cells(const ChainArgs& args) {
  const auto agents = split_list(args.agents);
  if (agents.empty()) throw std::invalid_argument("--agents lists no agents");
  std::vector<std::size_t> sample_counts;
  for (const auto& text : split_list(args.n)) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || v <= 0) {
      throw std::invalid_argument("--n entries must be positive integers, got '" + text + "'");
    }
    sample_counts.push_back(static_cast<std::size_t>(v));
  }

  AgentConfig base;
  base.gamma = args.gamma;
  base.replan_interval = args.replan_interval;
  base.vi_tolerance = args.vi_tolerance;
  base.plan_epsilon = args.plan_epsilon;

  std::vector<CellSpec> cells;
  for (const auto& name : agents) {
    AgentConfig agent = base;
    agent.kind = parse_agent_kind(name);
    if (agent.kind == AgentKind::mcbrl) {
      if (sample_counts.empty()) throw std::invalid_argument("mcbrl needs at least one --n value");
      for (std::size_t n : sample_counts) {
        agent.n_samples = n;
        cells.push_back({cell_label(agent), agent});
      }
      continue;
    }
    if (agent.kind == AgentKind::oracle) {
      agent.fixed_policy = solve_discounted(chain_task(), args.gamma, 1e-9).policy;
    }
    cells.push_back({cell_label(agent), agent});
  }
  return cells;
}

void cmd_chain(const ChainArgs& args, std::ostream& out) {
  if (args.runs < 2 || args.steps == 0 || args.replan_interval == 0 || args.resamples == 0) {
    throw std::invalid_argument("--runs must be >= 2 and --steps, --B, --resamples positive");
  }
  ExperimentConfig config;
  config.cells = chain_cells(args);
  config.runs = args.full_scale ? 10000 : args.runs;
  config.steps = args.steps;
  config.seed = args.seed;
  config.bootstrap_resamples = args.resamples;

  const auto report = experiment(chain_environment(), config);

  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) throw IoError("cannot create '" + args.out + "': " + ec.message());
  const fs::path dir(args.out);
  auto open = [](const fs::path& p) {
    std::ofstream f(p);
    if (!f) throw IoError("cannot write '" + p.string() + "'");
    return f;
  };
  {
    auto f = open(dir / "runs.csv");
    write_runs_csv(f, report);
  }
  {
    auto f = open(dir / "summary.json");
    f << std::setw(2) << summary_json(report) << '\n';
  }
  for (const auto& cell : report.cells) {
    auto f = open(dir / ("hist_" + cell.cell.label + ".csv"));
    write_histogram_csv(f, cell);
  }

  out << std::fixed << std::setprecision(2);
  out << "oracle total reward " << report.oracle_total << " over " << report.steps
      << " steps, " << report.runs << " runs\n";
  for (const auto& cell : report.cells) {
    out << cell.cell.label << ": total " << cell.mean_total << " [" << cell.total_ci.low << ", "
        << cell.total_ci.high << "], utility " << cell.mean_utility << ", regret " << cell.regret
        << ", 80% interval " << cell.percentile.low << " -- " << cell.percentile.high << '\n';
  }
}

void cmd_plan(const PlanArgs& args, std::ostream& out) {
  const auto belief = belief_from_json(read_json_file(args.belief));
  Rng rng(args.seed);
  MsbiOptions options;
  options.n_samples = args.n;
  options.horizon = args.horizon;
  const auto result = msbi(belief, args.gamma, args.epsilon, rng, options);
  Json doc = to_json(result.mmbi);
  doc["n_samples"] = result.samples.size();
  doc["gamma"] = args.gamma;
  doc["seed"] = args.seed;
  out << doc.dump() << '\n';
}

void report_error(std::ostream& err, std::string_view kind, std::string_view message) {
  std::string line(message);
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "error: " << kind << ": " << line << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Memoryless Bayesian planning over weighted MDP sets", "mmbi"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file whose keys mirror the command's flags");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Value-function bounds along a belief sweep");
  bounds_cmd->add_option("--config", config_path, "JSON file mirroring the flags");
  bounds_cmd->add_option("--mdps", bounds.mdps, "MDP list file, or random:SEED")->required();
  bounds_cmd->add_option("--grid", bounds.grid, "number of lambda grid points")->capture_default_str();
  bounds_cmd->add_option("--gamma", bounds.gamma, "discount factor")->capture_default_str();
  bounds_cmd->add_option("--horizon", bounds.horizon, "planning horizon T")->capture_default_str();
  bounds_cmd->add_option("--out", bounds.out, "CSV path, - for stdout")->capture_default_str();

  ChainArgs chain;
  auto* chain_cmd = app.add_subcommand("chain", "Chain-task experiment");
  chain_cmd->add_option("--config", config_path, "JSON file mirroring the flags");
  chain_cmd->add_option("--agents", chain.agents, "comma list of exploit, mcbrl, oracle")
      ->capture_default_str();
  chain_cmd->add_option("--n", chain.n, "comma list of MCBRL sample counts")->capture_default_str();
  chain_cmd->add_option("--runs", chain.runs, "independent runs per cell")->capture_default_str();
  chain_cmd->add_option("--steps", chain.steps, "steps per run")->capture_default_str();
  chain_cmd->add_option("--gamma", chain.gamma, "discount factor")->capture_default_str();
  chain_cmd->add_option("--B", chain.replan_interval, "MCBRL replan interval")->capture_default_str();
  chain_cmd->add_option("--seed", chain.seed, "master seed")->capture_default_str();
  chain_cmd->add_option("--out", chain.out, "output directory")->capture_default_str();
  chain_cmd->add_option("--vi-tolerance", chain.vi_tolerance, "Exploit value-iteration tolerance")
      ->capture_default_str();
  chain_cmd->add_option("--plan-epsilon", chain.plan_epsilon, "MCBRL horizon truncation error")
      ->capture_default_str();
  chain_cmd->add_option("--resamples", chain.resamples, "bootstrap resamples")->capture_default_str();
  chain_cmd->add_flag("--full-scale", chain.full_scale, "use 10^4 runs");

  PlanArgs plan;
  std::size_t plan_n = 0;
  std::size_t plan_horizon = 0;
  auto* plan_cmd = app.add_subcommand("plan", "MSBI plan for a serialized belief");
  plan_cmd->add_option("--config", config_path, "JSON file mirroring the flags");
  plan_cmd->add_option("--belief", plan.belief, "belief JSON file")->required();
  auto* n_opt = plan_cmd->add_option("--n", plan_n, "number of sampled MDPs");
  plan_cmd->add_option("--gamma", plan.gamma, "discount factor")->capture_default_str();
  plan_cmd->add_option("--epsilon", plan.epsilon, "target accuracy")->capture_default_str();
  auto* horizon_opt = plan_cmd->add_option("--horizon", plan_horizon, "planning horizon override");
  plan_cmd->add_option("--seed", plan.seed, "sampling seed")->capture_default_str();

  try {
    std::vector<std::string> argv(args.begin() + (args.empty() ? 0 : 1), args.end());
    // Splice --config contents in right after the subcommand name.
    for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
      if (argv[i] == "--config") {
        const auto extra = config_arguments(read_json_file(argv[i + 1]));
        const auto sub = std::find_if(argv.begin(), argv.end(), [](const std::string& a) {
          return a == "bounds" || a == "chain" || a == "plan";
        });
        const auto at = sub == argv.end() ? argv.begin() : sub + 1;
        argv.insert(at, extra.begin(), extra.end());
        break;
      }
    }
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);

    if (bounds_cmd->parsed()) {
      if (bounds.grid < 2) throw std::invalid_argument("--grid must be at least 2");
      cmd_bounds(bounds, out);
    } else if (chain_cmd->parsed()) {
      cmd_chain(chain, out);
    } else if (plan_cmd->parsed()) {
      if (n_opt->count() > 0) {
        if (plan_n == 0) throw std::invalid_argument("--n must be positive");
        plan.n = plan_n;
      }
      if (horizon_opt->count() > 0) plan.horizon = plan_horizon;
      cmd_plan(plan, out);
    }
    return 0;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return 2;
  } catch (const IoError& e) {
    report_error(err, "io", e.what());
    return 3;
  } catch (const InvalidMdp& e) {
    report_error(err, "invalid_mdp", e.what());
    return 4;
  } catch (const std::invalid_argument& e) {
    report_error(err, "invalid_argument", e.what());
    return 4;
  } catch (const Json::exception& e) {
    report_error(err, "invalid_argument", e.what());
    return 4;
  } catch (const std::exception& e) {
    report_error(err, "runtime", e.what());
    return 1;
  }
}

}  // namespace mmbi::cli
