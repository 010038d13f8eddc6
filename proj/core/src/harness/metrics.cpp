#include "soa/harness/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace soa {

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = static_cast<int>(values.size());
  if (values.empty()) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / s.count;
  if (s.count > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(sq / (s.count - 1));
  }
  return s;
}

MetricsRow episode_metrics(const EpisodeRecord& record) {
  MetricsRow row;
  row.cell = record.cell;
  row.episode = record.episode;
  row.seed = record.seed;
  row.steps = static_cast<int>(record.steps.size());
  const int n = record.cell.agents;

  std::vector<double> reward_sum(n, 0.0);
  std::vector<int> designated(n, 0);
  std::vector<int> own(n, 0);
  std::vector<int> other(n, 0);
  double plan_total = 0.0;
  double exclusion_total = 0.0;
  int capture_events = 0;

  for (const StepRecord& step : record.steps) {
    for (int k = 0; k < n; ++k) {
      row.collective_return += step.rewards[k];
      reward_sum[k] += step.rewards[k];
      plan_total += step.plan_ms[k];
      if (step.actions[k] == 0) ++designated[k];
    }
    for (int k = 0; k < static_cast<int>(step.info.own_pickups.size()); ++k) {
      own[k] += step.info.own_pickups[k];
      other[k] += step.info.other_pickups[k];
    }
    for (const CaptureEvent& e : step.info.captures) {
      exclusion_total += static_cast<double>(e.excluded.size()) / n;
      ++capture_events;
    }
  }

  if (row.steps > 0) {
    for (int k = 0; k < n; ++k) row.mean_reward.push_back(reward_sum[k] / row.steps);
    row.plan_ms = plan_total / (static_cast<double>(row.steps) * n);
  }

  const EnvId env = record.cell.env;
  if (is_matrix_game(env) && row.steps > 0) {
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
      row.action_freq.push_back(static_cast<double>(designated[k]) / row.steps);
      total += row.action_freq.back();
    }
    row.action_freq_mean = total / n;
  }
  if (env == EnvId::kCoin) {
    double total = 0.0;
    int defined = 0;
    for (int k = 0; k < n; ++k) {
      const int pickups = own[k] + other[k];
      if (pickups == 0) {
        row.own_coin_prob.emplace_back(std::nullopt);
        continue;
      }
      const double p = static_cast<double>(own[k]) / pickups;
      row.own_coin_prob.emplace_back(p);
      total += p;
      ++defined;
    }
    if (defined > 0) row.own_coin_prob_mean = total / defined;
  }
  if (env == EnvId::kPredatorPrey && capture_events > 0) {
    row.exclusion_prob = exclusion_total / capture_events;
  }
  return row;
}

std::vector<MetricsRow> compute_metrics(std::span<const EpisodeRecord> records) {
  if (records.empty()) throw std::invalid_argument("compute_metrics: no episode records");
  std::vector<MetricsRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(episode_metrics(r));
  return rows;
}

std::vector<AggregateRow> aggregate(std::span<const MetricsRow> rows) {
  std::vector<CellKey> cells;
  for (const auto& row : rows) {
    bool seen = false;
    for (const auto& c : cells) seen = seen || c == row.cell;
    if (!seen) cells.push_back(row.cell);
  }
  std::vector<AggregateRow> out;
  for (const CellKey& cell : cells) {
    std::vector<double> w, freq, own, excl, ms;
    int episodes = 0;
    for (const auto& row : rows) {
      if (!(row.cell == cell)) continue;
      ++episodes;
      w.push_back(row.collective_return);
      ms.push_back(row.plan_ms);
      if (row.action_freq_mean) freq.push_back(*row.action_freq_mean);
      if (row.own_coin_prob_mean) own.push_back(*row.own_coin_prob_mean);
      if (row.exclusion_prob) excl.push_back(*row.exclusion_prob);
    }
    out.push_back(AggregateRow{cell, episodes, summarize(w), summarize(freq), summarize(own),
                               summarize(excl), summarize(ms)});
  }
  return out;
}

}  // namespace soa
