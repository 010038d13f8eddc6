#pragma once

#include <optional>
#include <span>
#include <vector>

#include "soa/harness/experiment.hpp"

namespace soa {

// Per-episode results. Per-agent entries that are undefined for an episode
// (an agent that never picked up a coin) hold std::nullopt, as do whole
// metrics that do not apply to the environment.
struct MetricsRow {
  CellKey cell;
  int episode = 0;
  std::uint64_t seed = 0;
  int steps = 0;
  // Collective undiscounted return: sum over steps and agents.
  double collective_return = 0.0;
  // Per agent, mean reward per step.
  std::vector<double> mean_reward;
  // Matrix games: per-agent frequency of action 0 (C, chicken, head).
  std::vector<double> action_freq;
  std::optional<double> action_freq_mean;
  // Coin game: per-agent own-color pickups / all pickups.
  std::vector<std::optional<double>> own_coin_prob;
  std::optional<double> own_coin_prob_mean;
  // Predator-prey: mean over capture events of (penalized predators / n).
  std::optional<double> exclusion_prob;
  // Mean planning wall-time per agent per step, milliseconds.
  double plan_ms = 0.0;
};

struct Summary {
  int count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for fewer than two values
};

Summary summarize(std::span<const double> values);

struct AggregateRow {
  CellKey cell;
  int episodes = 0;
  Summary collective_return;
  Summary action_freq;
  Summary own_coin_prob;
  Summary exclusion_prob;
  Summary plan_ms;
};

MetricsRow episode_metrics(const EpisodeRecord& record);

// One row per record, in order. Throws std::invalid_argument on empty input.
std::vector<MetricsRow> compute_metrics(std::span<const EpisodeRecord> records);

// One row per distinct cell, in order of first appearance.
std::vector<AggregateRow> aggregate(std::span<const MetricsRow> rows);

}  // namespace soa
