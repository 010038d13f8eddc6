#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "soa/harness/experiment.hpp"
#include "soa/harness/metrics.hpp"

namespace soa {

// Fixed CSV headers. List-valued cells are ';'-joined per agent, undefined
// values are empty. Timing columns come last.
extern const char* const kEpisodesHeader;
extern const char* const kAggregateHeader;

void write_episodes_csv(std::ostream& os, std::span<const MetricsRow> rows);
void write_aggregate_csv(std::ostream& os, std::span<const AggregateRow> rows);

// One JSON object per step, each carrying its cell key so the file alone is
// enough to rebuild every EpisodeRecord.
void write_trace(std::ostream& os, std::span<const EpisodeRecord> records);
std::vector<EpisodeRecord> read_trace(std::istream& is);

// Echo of the resolved configurations, pretty-printed JSON.
void write_config_meta(std::ostream& os, std::span<const ExperimentConfig> cells);

struct ExperimentResult {
  std::vector<EpisodeRecord> records;
  std::vector<MetricsRow> rows;
  std::vector<AggregateRow> aggregate;
};

// Runs all cells and, when out_dir is non-empty, writes episodes.csv,
// aggregate.csv, config.meta and (if requested) trace.jsonl into it.
// Throws std::runtime_error naming the path when a file cannot be written.
ExperimentResult run_experiment(std::span<const ExperimentConfig> cells, int parallelism,
                                const std::filesystem::path& out_dir, bool trace);
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes episodes.csv and aggregate.csv for the given rows.
void write_metrics_files(const std::filesystem::path& out_dir, std::span<const MetricsRow> rows);

}  // namespace soa
