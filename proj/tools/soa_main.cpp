// Command-line front end: run one configuration, sweep a grid, or recompute
// metrics from a recorded trace.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "soa/bandit.hpp"
#include "soa/harness/experiment.hpp"
#include "soa/harness/metrics.hpp"
#include "soa/harness/results_io.hpp"

namespace {

struct Options {
  std::string env = "ipd";
  std::vector<std::string> algos{"soa"};
  std::vector<int> agents{2};
  std::vector<int> budgets;
  std::vector<int> ls{1};
  int horizon = 0;
  int episodes = 100;
  int episode_length = 50;
  double alpha = soa::kDefaultAlpha;
  double delta = soa::kDefaultDelta;
  double gamma = 0.9;
  double ucb_c = 1.0;
  std::uint64_t seed = 0;
  int parallelism = 1;
  std::string out = "results";
  bool trace = false;
};

void add_common(CLI::App* cmd, Options& o, bool lists) {
  cmd->add_option("--env", o.env, "ipd, imp, icd, coin or predprey")
      ->check(CLI::IsMember({"ipd", "imp", "icd", "coin", "predprey"}));
  auto* algo = cmd->add_option("--algo", o.algos, "uct, grab or soa");
  auto* agents = cmd->add_option("--agents", o.agents, "number of agents (predprey)");
  auto* budget = cmd->add_option("--budget", o.budgets,
                                 "iterations per plan (default: per-environment rule)");
  auto* l = cmd->add_option("--l", o.ls, "predprey budget multiplier, N_max = 50*l*(n+3)");
  if (lists) {
    for (auto* opt : {algo, agents, budget, l}) opt->delimiter(',');
  } else {
    for (auto* opt : {algo, agents, budget, l}) opt->expected(1);
  }
  cmd->add_option("--horizon", o.horizon, "planning horizon (default: per-environment rule)");
  cmd->add_option("--episodes", o.episodes, "episodes per configuration")->check(CLI::PositiveNumber);
  cmd->add_option("--episode-length", o.episode_length, "time steps per episode (T)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", o.alpha, "gradient-bandit learning rate");
  cmd->add_option("--delta", o.delta, "opponent-aware step size");
  cmd->add_option("--gamma", o.gamma, "discount factor");
  cmd->add_option("--ucb-c", o.ucb_c, "UCB1 exploration constant");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--parallelism", o.parallelism, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_flag("--trace", o.trace, "also write per-step trace.jsonl");
}

std::vector<soa::ExperimentConfig> expand_cells(const Options& o) {
  std::vector<soa::ExperimentConfig> cells;
  const std::vector<int> budgets = o.budgets.empty() ? std::vector<int>{0} : o.budgets;
  for (int n : o.agents) {
    for (int l : o.ls) {
      for (int b : budgets) {
        for (const auto& a : o.algos) {
          soa::ExperimentConfig c;
          c.env = soa::parse_env(o.env);
          c.algorithm = soa::parse_algorithm(a);
          c.agents = n;
          c.l = l;
          if (b > 0) c.budget = b;
          if (o.horizon > 0) c.horizon = o.horizon;
          c.episodes = o.episodes;
          c.episode_length = o.episode_length;
          c.alpha = o.alpha;
          c.delta = o.delta;
          c.gamma = o.gamma;
          c.ucb_c = o.ucb_c;
          c.seed = o.seed;
          c.parallelism = o.parallelism;
          c.out = o.out;
          c.trace = o.trace;
          soa::validate(c);
          cells.push_back(c);
        }
      }
    }
  }
  return cells;
}

void print_summary(const std::vector<soa::AggregateRow>& rows) {
  for (const auto& r : rows) {
    std::cout << soa::to_string(r.cell.env) << ' ' << soa::to_string(r.cell.algorithm)
              << " n=" << r.cell.agents << " budget=" << r.cell.budget
              << " h=" << r.cell.horizon << " episodes=" << r.episodes
              << "  W=" << r.collective_return.mean << " (" << r.collective_return.std << ")";
    if (r.action_freq.count) std::cout << "  freq0=" << r.action_freq.mean;
    if (r.own_coin_prob.count) std::cout << "  own_coin=" << r.own_coin_prob.mean;
    if (r.exclusion_prob.count) std::cout << "  exclusion=" << r.exclusion_prob.mean;
    std::cout << "  plan_ms=" << r.plan_ms.mean << '\n';
  }
}

int run_cells(const Options& o) {
  const auto cells = expand_cells(o);
  const auto result = soa::run_experiment(cells, o.parallelism, o.out, o.trace);
  print_summary(result.aggregate);
  if (const auto hits = soa::preference_cap_hits(); hits > 0) {
    std::clog << "warning: preference cap clamped " << hits << " updates\n";
  }
  std::cout << "wrote " << o.out << "/episodes.csv, aggregate.csv, config.meta"
            << (o.trace ? ", trace.jsonl" : "") << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent Monte-Carlo planning with opponent-aware gradient bandits"};
  app.require_subcommand(1);

  Options run_opts;
  auto* run = app.add_subcommand("run", "run one configuration");
  add_common(run, run_opts, false);

  Options sweep_opts;
  sweep_opts.algos = {"uct", "grab", "soa"};
  auto* sweep = app.add_subcommand("sweep", "grid over algorithm, agents, budget and l");
  add_common(sweep, sweep_opts, true);

  std::string trace_in;
  std::string metrics_out = "results";
  auto* metrics = app.add_subcommand("metrics", "recompute CSV metrics from a trace.jsonl");
  metrics->add_option("--in", trace_in, "trace.jsonl written with --trace")->required();
  metrics->add_option("--out", metrics_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_cells(run_opts);
    if (*sweep) return run_cells(sweep_opts);
    if (*metrics) {
      std::ifstream is(trace_in);
      if (!is) throw std::runtime_error("cannot open '" + trace_in + "'");
      const auto records = soa::read_trace(is);
      const auto rows = soa::compute_metrics(records);
      soa::write_metrics_files(metrics_out, rows);
      print_summary(soa::aggregate(rows));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
