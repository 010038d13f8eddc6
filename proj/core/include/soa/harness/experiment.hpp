#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soa/env/step_info.hpp"
#include "soa/planner.hpp"

namespace soa {

enum class EnvId { kIpd, kImp, kIcd, kCoin, kPredatorPrey };
enum class Algorithm { kUct, kGrabMcts, kSoa };

std::string_view to_string(EnvId env);
std::string_view to_string(Algorithm algo);
EnvId parse_env(std::string_view name);
Algorithm parse_algorithm(std::string_view name);
BanditKind bandit_kind(Algorithm algo);
bool is_matrix_game(EnvId env);

// Step sizes picked by the calibration sweep documented in the README.
inline constexpr double kDefaultAlpha = 0.1;
inline constexpr double kDefaultDelta = 1.0;

struct ExperimentConfig {
  EnvId env = EnvId::kIpd;
  Algorithm algorithm = Algorithm::kSoa;
  int agents = 2;
  // Budget multiplier for predator-prey: N_max = 50 * l * (n + 3).
  int l = 1;
  std::optional<int> budget;   // fixed N_max; otherwise the per-environment rule
  std::optional<int> horizon;  // fixed h; otherwise the per-environment rule
  int episodes = 100;
  int episode_length = 50;
  double gamma = 0.9;
  double ucb_c = 1.0;
  double alpha = kDefaultAlpha;
  double delta = kDefaultDelta;
  std::uint64_t seed = 0;
  int parallelism = 1;
  std::filesystem::path out;
  bool trace = false;
};

// Matrix games 100, coin game 100, predator-prey 50 * l * (n + 3).
int resolved_budget(const ExperimentConfig& config);
// Matrix games 2, coin game 6, predator-prey 2 * (n + 3).
int resolved_horizon(const ExperimentConfig& config);
void validate(const ExperimentConfig& config);
PlannerConfig planner_config(const ExperimentConfig& config, AgentId agent);

// Identifies one configuration cell of an experiment grid.
struct CellKey {
  EnvId env = EnvId::kIpd;
  Algorithm algorithm = Algorithm::kSoa;
  int agents = 2;
  int budget = 0;
  int l = 1;
  int horizon = 0;
  double alpha = 0.0;
  double delta = 0.0;
  double gamma = 0.0;

  bool operator==(const CellKey&) const = default;
};

CellKey cell_key(const ExperimentConfig& config);

struct StepRecord {
  std::vector<ArmId> actions;
  std::vector<double> rewards;
  std::vector<double> plan_ms;
  StepInfo info;
};

struct EpisodeRecord {
  CellKey cell;
  int episode = 0;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
};

// Seed hierarchy: master -> episode -> (step, agent) plan streams and one
// environment stream. Episode seeds do not depend on the algorithm, so cells
// that differ only in algorithm replay the same initial states.
std::uint64_t episode_seed(std::uint64_t master, int episode);
std::uint64_t plan_seed(std::uint64_t episode_seed, int step, AgentId agent);
std::uint64_t environment_seed(std::uint64_t episode_seed);

// Plays one episode. With config.parallelism > 1 the agents plan concurrently;
// the trajectory does not depend on that.
EpisodeRecord run_episode(const ExperimentConfig& config, std::uint64_t seed, int episode = 0);

// Runs every episode of every cell on a pool of `parallelism` threads. Records
// come back ordered by cell, then episode.
std::vector<EpisodeRecord> run_cells(std::span<const ExperimentConfig> cells, int parallelism);

}  // namespace soa
