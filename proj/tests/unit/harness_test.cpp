#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "soa/harness/experiment.hpp"
#include "soa/harness/metrics.hpp"
#include "soa/harness/results_io.hpp"

namespace soa {
namespace {

namespace fs = std::filesystem;

ExperimentConfig small(EnvId env, Algorithm algo, int agents = 2) {
  ExperimentConfig c;
  c.env = env;
  c.algorithm = algo;
  c.agents = agents;
  c.episodes = 3;
  c.episode_length = 6;
  c.budget = 20;
  if (env == EnvId::kPredatorPrey) c.horizon = 4;
  c.seed = 42;
  return c;
}

std::string read_file(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Drops the trailing timing column of every CSV line.
std::string strip_timing(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, out;
  while (std::getline(is, line)) out += line.substr(0, line.rfind(',')) + '\n';
  return out;
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("soa_harness_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

// --- configuration ---

TEST(Config, ResolvedDefaults) {
  ExperimentConfig c;
  EXPECT_EQ(resolved_budget(c), 100);
  EXPECT_EQ(resolved_horizon(c), 2);
  c.env = EnvId::kCoin;
  EXPECT_EQ(resolved_budget(c), 100);
  EXPECT_EQ(resolved_horizon(c), 6);
  c.env = EnvId::kPredatorPrey;
  c.agents = 3;
  EXPECT_EQ(resolved_budget(c), 300);
  EXPECT_EQ(resolved_horizon(c), 12);
  c.l = 2;
  c.agents = 5;
  EXPECT_EQ(resolved_budget(c), 800);
  EXPECT_EQ(resolved_horizon(c), 16);
}

TEST(Config, Validation) {
  ExperimentConfig c;
  c.agents = 3;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.episodes = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.alpha = 0.0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.budget = 0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = ExperimentConfig{};
  c.env = EnvId::kPredatorPrey;
  c.agents = 9;
  EXPECT_THROW(validate(c), std::invalid_argument);
}

TEST(Config, NamesRoundTrip) {
  for (EnvId e : {EnvId::kIpd, EnvId::kImp, EnvId::kIcd, EnvId::kCoin, EnvId::kPredatorPrey}) {
    EXPECT_EQ(parse_env(to_string(e)), e);
  }
  for (Algorithm a : {Algorithm::kUct, Algorithm::kGrabMcts, Algorithm::kSoa}) {
    EXPECT_EQ(parse_algorithm(to_string(a)), a);
  }
  EXPECT_THROW(parse_env("chess"), std::invalid_argument);
  EXPECT_THROW(parse_algorithm("ppo"), std::invalid_argument);
}

TEST(Seeds, EpisodeSeedsDistinctAndAlgorithmIndependent) {
  std::vector<std::uint64_t> seeds;
  for (int e = 0; e < 1000; ++e) seeds.push_back(episode_seed(7, e));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::unique(seeds.begin(), seeds.end()), seeds.end());

  // Same master seed, different algorithms: identical initial states.
  auto a = small(EnvId::kCoin, Algorithm::kUct);
  auto b = small(EnvId::kCoin, Algorithm::kSoa);
  a.episodes = b.episodes = 1;
  a.episode_length = b.episode_length = 1;
  const auto ra = run_episode(a, episode_seed(a.seed, 0));
  const auto rb = run_episode(b, episode_seed(b.seed, 0));
  EXPECT_EQ(ra.seed, rb.seed);
}

// --- metrics ---

EpisodeRecord matrix_record() {
  EpisodeRecord r;
  r.cell.env = EnvId::kIpd;
  r.cell.agents = 2;
  // Joint actions (C,C), (C,D), (D,D), (C,C).
  const std::vector<std::vector<ArmId>> actions{{0, 0}, {0, 1}, {1, 1}, {0, 0}};
  const std::vector<std::vector<double>> rewards{{-1, -1}, {-3, 0}, {-2, -2}, {-1, -1}};
  for (std::size_t t = 0; t < actions.size(); ++t) {
    r.steps.push_back(StepRecord{actions[t], rewards[t], {1.0, 3.0}, {}});
  }
  return r;
}

TEST(Metrics, MatrixGameExample) {
  const auto row = episode_metrics(matrix_record());
  EXPECT_EQ(row.steps, 4);
  EXPECT_DOUBLE_EQ(row.collective_return, -11.0);
  EXPECT_DOUBLE_EQ(row.mean_reward[0], -7.0 / 4);
  EXPECT_DOUBLE_EQ(row.mean_reward[1], -4.0 / 4);
  EXPECT_DOUBLE_EQ(row.action_freq[0], 0.75);
  EXPECT_DOUBLE_EQ(row.action_freq[1], 0.5);
  EXPECT_DOUBLE_EQ(*row.action_freq_mean, 0.625);
  EXPECT_DOUBLE_EQ(row.plan_ms, 2.0);
  EXPECT_FALSE(row.exclusion_prob.has_value());
  EXPECT_FALSE(row.own_coin_prob_mean.has_value());
}

TEST(Metrics, CoinGameOwnProbability) {
  EpisodeRecord r;
  r.cell.env = EnvId::kCoin;
  r.cell.agents = 2;
  StepInfo a{{1, 0}, {0, 1}, {}};
  StepInfo b{{1, 0}, {0, 0}, {}};
  StepInfo c{{0, 0}, {1, 0}, {}};
  r.steps.push_back({{0, 0}, {1.0, -1.0}, {0, 0}, a});
  r.steps.push_back({{0, 0}, {1.0, 0.0}, {0, 0}, b});
  r.steps.push_back({{0, 0}, {1.0, -2.0}, {0, 0}, c});
  const auto row = episode_metrics(r);
  // Agent 0: 2 own of 3, agent 1: 0 own of 1.
  ASSERT_EQ(row.own_coin_prob.size(), 2u);
  EXPECT_DOUBLE_EQ(*row.own_coin_prob[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*row.own_coin_prob[1], 0.0);
  EXPECT_DOUBLE_EQ(*row.own_coin_prob_mean, 1.0 / 3.0);
  EXPECT_TRUE(row.action_freq.empty());
}

TEST(Metrics, CoinGameWithoutPickupsIsUndefined) {
  EpisodeRecord r;
  r.cell.env = EnvId::kCoin;
  r.cell.agents = 2;
  r.steps.push_back({{0, 0}, {0.0, 0.0}, {0, 0}, StepInfo{{0, 0}, {0, 0}, {}}});
  const auto row = episode_metrics(r);
  EXPECT_FALSE(row.own_coin_prob[0].has_value());
  EXPECT_FALSE(row.own_coin_prob_mean.has_value());
}

TEST(Metrics, ExclusionProbability) {
  EpisodeRecord r;
  r.cell.env = EnvId::kPredatorPrey;
  r.cell.agents = 4;
  StepInfo first;
  first.captures.push_back({3, {1, 2}});
  StepInfo second;
  second.captures.push_back({9, {}});
  r.steps.push_back({{4, 4, 4, 4}, {0.6, -1, -1, 0.6}, {0, 0, 0, 0}, first});
  r.steps.push_back({{4, 4, 4, 4}, {0.6, 0.6, 0.6, 0.6}, {0, 0, 0, 0}, second});
  const auto row = episode_metrics(r);
  // Events: 2/4 and 0/4.
  EXPECT_DOUBLE_EQ(*row.exclusion_prob, 0.25);
  EXPECT_DOUBLE_EQ(row.collective_return, 1.6);
}

TEST(Metrics, EmptyInputThrows) {
  EXPECT_THROW(compute_metrics(std::vector<EpisodeRecord>{}), std::invalid_argument);
}

TEST(Metrics, SummaryUsesSampleStd) {
  const auto s = summarize(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  EXPECT_EQ(s.count, 4);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.std, 1.2909944487358056, 1e-12);
  EXPECT_EQ(summarize(std::vector<double>{5.0}).std, 0.0);
  EXPECT_EQ(summarize(std::vector<double>{}).count, 0);
}

TEST(Metrics, AggregateGroupsByCellInOrder) {
  auto a = episode_metrics(matrix_record());
  auto b = a;
  b.collective_return = -5.0;
  auto c = a;
  c.cell.algorithm = Algorithm::kUct;
  const std::vector<MetricsRow> rows{a, c, b};
  const auto agg = aggregate(rows);
  ASSERT_EQ(agg.size(), 2u);
  EXPECT_EQ(agg[0].cell, a.cell);
  EXPECT_EQ(agg[0].episodes, 2);
  EXPECT_DOUBLE_EQ(agg[0].collective_return.mean, -8.0);
  EXPECT_EQ(agg[1].episodes, 1);
}

// --- runs ---

TEST(Run, EpisodeShape) {
  for (EnvId env : {EnvId::kIpd, EnvId::kCoin, EnvId::kPredatorPrey}) {
    const auto c = small(env, Algorithm::kSoa, 3 - (env != EnvId::kPredatorPrey));
    const auto rec = run_episode(c, 1);
    EXPECT_LE(static_cast<int>(rec.steps.size()), c.episode_length);
    for (const auto& s : rec.steps) {
      EXPECT_EQ(static_cast<int>(s.actions.size()), c.agents);
      EXPECT_EQ(static_cast<int>(s.rewards.size()), c.agents);
      EXPECT_EQ(static_cast<int>(s.plan_ms.size()), c.agents);
      for (double ms : s.plan_ms) EXPECT_GE(ms, 0.0);
    }
  }
}

TEST(Run, ParallelPlanningDoesNotChangeTrajectory) {
  auto c = small(EnvId::kPredatorPrey, Algorithm::kSoa, 3);
  const auto serial = run_episode(c, 5);
  c.parallelism = 3;
  const auto parallel = run_episode(c, 5);
  ASSERT_EQ(serial.steps.size(), parallel.steps.size());
  for (std::size_t t = 0; t < serial.steps.size(); ++t) {
    EXPECT_EQ(serial.steps[t].actions, parallel.steps[t].actions);
    EXPECT_EQ(serial.steps[t].rewards, parallel.steps[t].rewards);
  }
}

TEST_F(TempDir, WritesOneRowPerEpisodeAndCell) {
  std::vector<ExperimentConfig> cells{small(EnvId::kIpd, Algorithm::kUct),
                                      small(EnvId::kIpd, Algorithm::kGrabMcts),
                                      small(EnvId::kIpd, Algorithm::kSoa)};
  const auto result = run_experiment(cells, 2, dir_, true);
  EXPECT_EQ(result.rows.size(), 9u);
  EXPECT_EQ(result.aggregate.size(), 3u);
  for (const char* name : {"episodes.csv", "aggregate.csv", "config.meta", "trace.jsonl"}) {
    EXPECT_TRUE(fs::exists(dir_ / name)) << name;
  }
  std::ifstream is(dir_ / "episodes.csv");
  std::string header;
  std::getline(is, header);
  EXPECT_EQ(header, kEpisodesHeader);
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  EXPECT_EQ(lines, 9);
}

TEST_F(TempDir, SameSeedReproducesEpisodesCsv) {
  std::vector<ExperimentConfig> cells{small(EnvId::kCoin, Algorithm::kSoa),
                                      small(EnvId::kPredatorPrey, Algorithm::kGrabMcts, 2)};
  run_experiment(cells, 1, dir_ / "a", false);
  run_experiment(cells, 2, dir_ / "b", false);
  EXPECT_EQ(strip_timing(read_file(dir_ / "a" / "episodes.csv")),
            strip_timing(read_file(dir_ / "b" / "episodes.csv")));
}

TEST_F(TempDir, UnwritableOutputNamesPath) {
  fs::create_directories(dir_);
  const fs::path blocker = dir_ / "file";
  std::ofstream(blocker) << "x";
  const std::vector<ExperimentConfig> cells{small(EnvId::kIpd, Algorithm::kUct)};
  try {
    run_experiment(cells, 1, blocker / "sub", false);
    FAIL() << "expected an exception";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("file"), std::string::npos) << e.what();
  }
}

TEST(Trace, RoundTripReproducesMetrics) {
  std::vector<ExperimentConfig> cells{small(EnvId::kCoin, Algorithm::kSoa),
                                      small(EnvId::kPredatorPrey, Algorithm::kUct, 3)};
  const auto records = run_cells(cells, 1);
  std::stringstream ss;
  write_trace(ss, records);
  const auto back = read_trace(ss);
  ASSERT_EQ(back.size(), records.size());

  std::ostringstream a, b;
  write_episodes_csv(a, compute_metrics(records));
  write_episodes_csv(b, compute_metrics(back));
  EXPECT_EQ(a.str(), b.str());

  std::ostringstream c, d;
  write_aggregate_csv(c, aggregate(compute_metrics(records)));
  write_aggregate_csv(d, aggregate(compute_metrics(back)));
  EXPECT_EQ(c.str(), d.str());
}

TEST(Trace, MalformedInputThrows) {
  std::istringstream is("{not json}\n");
  EXPECT_ANY_THROW(read_trace(is));
}

TEST(Csv, UndefinedValuesAreEmptyCells) {
  EpisodeRecord r;
  r.cell.env = EnvId::kCoin;
  r.cell.agents = 2;
  r.steps.push_back({{0, 0}, {0.0, 0.0}, {0.5, 0.5}, StepInfo{{0, 0}, {0, 0}, {}}});
  std::ostringstream os;
  write_episodes_csv(os, compute_metrics(std::vector<EpisodeRecord>{r}));
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  std::getline(is, line);
  // action_freq, action_freq_mean, own_coin_prob(;), own_coin_prob_mean, exclusion_prob empty.
  EXPECT_NE(line.find(",,,;,,,"), std::string::npos) << line;
}

}  // namespace
}  // namespace soa
