#include "soa/harness/experiment.hpp"

#include <atomic>
#include <chrono>
#include <future>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "soa/env/coin_game.hpp"
#include "soa/env/matrix_game.hpp"
#include "soa/env/predator_prey.hpp"

namespace soa {

std::string_view to_string(EnvId env) {
  switch (env) {
    case EnvId::kIpd:
      return "ipd";
    case EnvId::kImp:
      return "imp";
    case EnvId::kIcd:
      return "icd";
    case EnvId::kCoin:
      return "coin";
    case EnvId::kPredatorPrey:
      return "predprey";
  }
  return "unknown";
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::kUct:
      return "uct";
    case Algorithm::kGrabMcts:
      return "grab";
    case Algorithm::kSoa:
      return "soa";
  }
  return "unknown";
}

EnvId parse_env(std::string_view name) {
  for (EnvId e : {EnvId::kIpd, EnvId::kImp, EnvId::kIcd, EnvId::kCoin, EnvId::kPredatorPrey}) {
    if (to_string(e) == name) return e;
  }
  throw std::invalid_argument("unknown environment '" + std::string(name) + "'");
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kUct, Algorithm::kGrabMcts, Algorithm::kSoa}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

BanditKind bandit_kind(Algorithm algo) {
  switch (algo) {
    case Algorithm::kUct:
      return BanditKind::kUcb1;
    case Algorithm::kGrabMcts:
      return BanditKind::kGrab;
    case Algorithm::kSoa:
      return BanditKind::kOga;
  }
  throw std::invalid_argument("unknown algorithm");
}

bool is_matrix_game(EnvId env) {
  return env == EnvId::kIpd || env == EnvId::kImp || env == EnvId::kIcd;
}

int resolved_budget(const ExperimentConfig& config) {
  if (config.budget) return *config.budget;
  if (config.env == EnvId::kPredatorPrey) return 50 * config.l * (config.agents + 3);
  return 100;
}

int resolved_horizon(const ExperimentConfig& config) {
  if (config.horizon) return *config.horizon;
  switch (config.env) {
    case EnvId::kCoin:
      return 6;
    case EnvId::kPredatorPrey:
      return 2 * (config.agents + 3);
    default:
      return 2;
  }
}

void validate(const ExperimentConfig& config) {
  if (config.env != EnvId::kPredatorPrey && config.agents != 2) {
    throw std::invalid_argument(std::string(to_string(config.env)) +
                                " is a two-agent environment");
  }
  if (config.agents < 1 || config.agents > kMaxPredators) {
    throw std::invalid_argument("agent count must be in [1, 8]");
  }
  if (config.l < 1) throw std::invalid_argument("l must be >= 1");
  if (config.episodes < 1) throw std::invalid_argument("episodes must be >= 1");
  if (config.episode_length < 1) throw std::invalid_argument("episode length must be >= 1");
  if (config.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  if (!(config.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (config.delta < 0.0) throw std::invalid_argument("delta must be >= 0");
  if (config.ucb_c < 0.0) throw std::invalid_argument("ucb-c must be >= 0");
  validate(planner_config(config, 0));
}

PlannerConfig planner_config(const ExperimentConfig& config, AgentId agent) {
  PlannerConfig pc;
  pc.horizon = resolved_horizon(config);
  pc.budget = resolved_budget(config);
  pc.discount = config.gamma;
  pc.bandit_kind = bandit_kind(config.algorithm);
  pc.bandit.ucb_c = config.ucb_c;
  pc.bandit.alpha = config.alpha;
  pc.bandit.delta = config.delta;
  pc.planning_agent = agent;
  return pc;
}

CellKey cell_key(const ExperimentConfig& config) {
  return CellKey{config.env,
                 config.algorithm,
                 config.agents,
                 resolved_budget(config),
                 config.l,
                 resolved_horizon(config),
                 config.alpha,
                 config.delta,
                 config.gamma};
}

std::uint64_t episode_seed(std::uint64_t master, int episode) {
  return derive_seed(master, 0x65706973ULL, static_cast<std::uint64_t>(episode));
}

std::uint64_t plan_seed(std::uint64_t episode_seed, int step, AgentId agent) {
  return derive_seed(episode_seed, static_cast<std::uint64_t>(step) + 1,
                     static_cast<std::uint64_t>(agent) + 1);
}

std::uint64_t environment_seed(std::uint64_t episode_seed) {
  return derive_seed(episode_seed, 0);
}

namespace {

template <class Model>
EpisodeRecord play(const Model& model, const ExperimentConfig& config, std::uint64_t seed,
                   int episode) {
  using Clock = std::chrono::steady_clock;
  const int n = model.num_agents();
  EpisodeRecord record;
  record.cell = cell_key(config);
  record.episode = episode;
  record.seed = seed;

  std::vector<PlannerConfig> planners;
  for (AgentId k = 0; k < n; ++k) planners.push_back(planner_config(config, k));

  Rng env_rng(environment_seed(seed));
  auto state = model.initial_state(env_rng);

  for (int t = 0; t < config.episode_length && !model.is_terminal(state); ++t) {
    StepRecord step;
    step.actions.assign(n, 0);
    step.plan_ms.assign(n, 0.0);
    auto plan_one = [&](AgentId k) {
      Rng rng(plan_seed(seed, t, k));
      const auto start = Clock::now();
      step.actions[k] = plan(model, state, planners[k], rng);
      step.plan_ms[k] =
          std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    };
    if (config.parallelism > 1 && n > 1) {
      std::vector<std::future<void>> pending;
      for (AgentId k = 0; k < n; ++k) pending.push_back(std::async(std::launch::async, plan_one, k));
      for (auto& f : pending) f.get();
    } else {
      for (AgentId k = 0; k < n; ++k) plan_one(k);
    }
    auto tr = model.step(state, step.actions, env_rng, &step.info);
    step.rewards = std::move(tr.rewards);
    state = std::move(tr.next);
    record.steps.push_back(std::move(step));
  }
  return record;
}

}  // namespace

EpisodeRecord run_episode(const ExperimentConfig& config, std::uint64_t seed, int episode) {
  validate(config);
  switch (config.env) {
    case EnvId::kIpd:
      return play(MatrixGame(MatrixGameName::kIpd), config, seed, episode);
    case EnvId::kImp:
      return play(MatrixGame(MatrixGameName::kImp), config, seed, episode);
    case EnvId::kIcd:
      return play(MatrixGame(MatrixGameName::kIcd), config, seed, episode);
    case EnvId::kCoin:
      return play(CoinGame(3), config, seed, episode);
    case EnvId::kPredatorPrey:
      return play(PredatorPrey(config.agents), config, seed, episode);
  }
  throw std::invalid_argument("unknown environment");
}

std::vector<EpisodeRecord> run_cells(std::span<const ExperimentConfig> cells, int parallelism) {
  struct Task {
    std::size_t cell;
    int episode;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    validate(cells[c]);
    for (int e = 0; e < cells[c].episodes; ++e) tasks.push_back({c, e});
  }
  std::vector<EpisodeRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
      try {
        ExperimentConfig episode_config = cells[tasks[i].cell];
        episode_config.parallelism = 1;
        records[i] = run_episode(episode_config,
                                 episode_seed(episode_config.seed, tasks[i].episode),
                                 tasks[i].episode);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int threads = std::max(1, parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

}  // namespace soa
