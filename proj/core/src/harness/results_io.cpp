#include "soa/harness/results_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace soa {

using nlohmann::json;

const char* const kEpisodesHeader =
    "env,algo,agents,budget,l,horizon,alpha,delta,gamma,episode,seed,steps,W,mean_reward,"
    "action_freq,action_freq_mean,own_coin_prob,own_coin_prob_mean,exclusion_prob,plan_ms";

const char* const kAggregateHeader =
    "env,algo,agents,budget,l,horizon,alpha,delta,gamma,episodes,W_mean,W_std,"
    "action_freq_n,action_freq_mean,action_freq_std,own_coin_prob_n,own_coin_prob_mean,"
    "own_coin_prob_std,exclusion_prob_n,exclusion_prob_mean,exclusion_prob_std,plan_ms_mean,"
    "plan_ms_std";

namespace {

// Shortest representation that round-trips.
std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string opt(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

template <class T, class F>
std::string join(const std::vector<T>& values, F&& fmt) {
  std::string s;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) s += ';';
    s += fmt(values[k]);
  }
  return s;
}

void write_cell(std::ostream& os, const CellKey& c) {
  os << to_string(c.env) << ',' << to_string(c.algorithm) << ',' << c.agents << ',' << c.budget
     << ',' << c.l << ',' << c.horizon << ',' << num(c.alpha) << ',' << num(c.delta) << ','
     << num(c.gamma);
}

json cell_json(const CellKey& c) {
  return json{{"env", to_string(c.env)},       {"algo", to_string(c.algorithm)},
              {"agents", c.agents},            {"budget", c.budget},
              {"l", c.l},                      {"horizon", c.horizon},
              {"alpha", c.alpha},              {"delta", c.delta},
              {"gamma", c.gamma}};
}

CellKey cell_from_json(const json& j) {
  CellKey c;
  c.env = parse_env(j.at("env").get<std::string>());
  c.algorithm = parse_algorithm(j.at("algo").get<std::string>());
  c.agents = j.at("agents").get<int>();
  c.budget = j.at("budget").get<int>();
  c.l = j.at("l").get<int>();
  c.horizon = j.at("horizon").get<int>();
  c.alpha = j.at("alpha").get<double>();
  c.delta = j.at("delta").get<double>();
  c.gamma = j.at("gamma").get<double>();
  return c;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return os;
}

void finish(std::ofstream& os, const std::filesystem::path& path) {
  os.flush();
  if (!os) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

void write_episodes_csv(std::ostream& os, std::span<const MetricsRow> rows) {
  os << kEpisodesHeader << '\n';
  for (const MetricsRow& r : rows) {
    write_cell(os, r.cell);
    os << ',' << r.episode << ',' << r.seed << ',' << r.steps << ',' << num(r.collective_return)
       << ',' << join(r.mean_reward, num) << ',' << join(r.action_freq, num) << ','
       << opt(r.action_freq_mean) << ',' << join(r.own_coin_prob, opt) << ','
       << opt(r.own_coin_prob_mean) << ',' << opt(r.exclusion_prob) << ',' << num(r.plan_ms)
       << '\n';
  }
}

void write_aggregate_csv(std::ostream& os, std::span<const AggregateRow> rows) {
  os << kAggregateHeader << '\n';
  auto summary = [&os](const Summary& s, bool with_count) {
    if (with_count) os << ',' << s.count;
    if (s.count == 0) {
      os << ",,";
    } else {
      os << ',' << num(s.mean) << ',' << num(s.std);
    }
  };
  for (const AggregateRow& r : rows) {
    write_cell(os, r.cell);
    os << ',' << r.episodes;
    summary(r.collective_return, false);
    summary(r.action_freq, true);
    summary(r.own_coin_prob, true);
    summary(r.exclusion_prob, true);
    summary(r.plan_ms, false);
    os << '\n';
  }
}

void write_trace(std::ostream& os, std::span<const EpisodeRecord> records) {
  for (const EpisodeRecord& rec : records) {
    const json cell = cell_json(rec.cell);
    for (std::size_t t = 0; t < rec.steps.size(); ++t) {
      const StepRecord& s = rec.steps[t];
      json j = cell;
      j["episode"] = rec.episode;
      j["seed"] = rec.seed;
      j["t"] = t;
      j["actions"] = s.actions;
      j["rewards"] = s.rewards;
      j["plan_ms"] = s.plan_ms;
      if (!s.info.own_pickups.empty()) {
        j["own_pickups"] = s.info.own_pickups;
        j["other_pickups"] = s.info.other_pickups;
      }
      if (!s.info.captures.empty()) {
        json caps = json::array();
        for (const auto& e : s.info.captures) {
          caps.push_back({{"cell", e.cell}, {"excluded", e.excluded}});
        }
        j["captures"] = std::move(caps);
      }
      os << j.dump() << '\n';
    }
  }
}

std::vector<EpisodeRecord> read_trace(std::istream& is) {
  std::vector<EpisodeRecord> records;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const CellKey cell = cell_from_json(j);
      const int episode = j.at("episode").get<int>();
      const auto seed = j.at("seed").get<std::uint64_t>();
      if (records.empty() || !(records.back().cell == cell) ||
          records.back().episode != episode || records.back().seed != seed) {
        records.push_back(EpisodeRecord{cell, episode, seed, {}});
      }
      StepRecord s;
      s.actions = j.at("actions").get<std::vector<ArmId>>();
      s.rewards = j.at("rewards").get<std::vector<double>>();
      s.plan_ms = j.at("plan_ms").get<std::vector<double>>();
      if (j.contains("own_pickups")) {
        s.info.own_pickups = j.at("own_pickups").get<std::vector<int>>();
        s.info.other_pickups = j.at("other_pickups").get<std::vector<int>>();
      }
      if (j.contains("captures")) {
        for (const auto& e : j.at("captures")) {
          s.info.captures.push_back(
              CaptureEvent{e.at("cell").get<int>(), e.at("excluded").get<std::vector<AgentId>>()});
        }
      }
      records.back().steps.push_back(std::move(s));
    } catch (const json::exception& e) {
      throw std::runtime_error("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

void write_config_meta(std::ostream& os, std::span<const ExperimentConfig> cells) {
  json all = json::array();
  for (const ExperimentConfig& c : cells) {
    json j = cell_json(cell_key(c));
    j["episodes"] = c.episodes;
    j["episode_length"] = c.episode_length;
    j["ucb_c"] = c.ucb_c;
    j["seed"] = c.seed;
    j["budget_rule"] = c.budget ? "fixed" : "default";
    j["horizon_rule"] = c.horizon ? "fixed" : "default";
    all.push_back(std::move(j));
  }
  os << json{{"cells", all}}.dump(2) << '\n';
}

void write_metrics_files(const std::filesystem::path& out_dir, std::span<const MetricsRow> rows) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + out_dir.string() +
                             "': " + ec.message());
  }
  {
    const auto path = out_dir / "episodes.csv";
    auto os = open_for_write(path);
    write_episodes_csv(os, rows);
    finish(os, path);
  }
  {
    const auto path = out_dir / "aggregate.csv";
    auto os = open_for_write(path);
    const auto agg = aggregate(rows);
    write_aggregate_csv(os, agg);
    finish(os, path);
  }
}

ExperimentResult run_experiment(std::span<const ExperimentConfig> cells, int parallelism,
                                const std::filesystem::path& out_dir, bool trace) {
  ExperimentResult result;
  result.records = run_cells(cells, parallelism);
  result.rows = compute_metrics(result.records);
  result.aggregate = aggregate(result.rows);
  if (out_dir.empty()) return result;

  write_metrics_files(out_dir, result.rows);
  {
    const auto path = out_dir / "config.meta";
    auto os = open_for_write(path);
    write_config_meta(os, cells);
    finish(os, path);
  }
  if (trace) {
    const auto path = out_dir / "trace.jsonl";
    auto os = open_for_write(path);
    write_trace(os, result.records);
    finish(os, path);
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return run_experiment(std::span<const ExperimentConfig>(&config, 1), config.parallelism,
                        config.out, config.trace);
}

}  // namespace soa
