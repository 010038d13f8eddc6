#include "soa/bandit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace soa {
namespace {

std::atomic<std::int64_t> g_cap_hits{0};

// Uniform choice among the indices where pred holds (reservoir style, so only
// one pass and one rng draw per candidate beyond the first).
template <class Pred>
ArmId pick_uniform_among(int n, Pred pred, Rng& rng) {
  ArmId chosen = -1;
  int seen = 0;
  for (ArmId a = 0; a < n; ++a) {
    if (!pred(a)) continue;
    ++seen;
    if (seen == 1 || uniform_index(rng, seen) == 0) chosen = a;
  }
  return chosen;
}

}  // namespace

PolicyDistribution softmax_policy(std::span<const double> preferences) {
  if (preferences.empty()) {
    throw std::invalid_argument("softmax_policy: empty preference vector");
  }
  double max_h = -std::numeric_limits<double>::infinity();
  for (double h : preferences) {
    if (!std::isfinite(h)) {
      throw std::invalid_argument("softmax_policy: non-finite preference");
    }
    max_h = std::max(max_h, h);
  }
  PolicyDistribution p(preferences.size());
  double total = 0.0;
  for (std::size_t a = 0; a < preferences.size(); ++a) {
    p[a] = std::exp(preferences[a] - max_h);
    total += p[a];
  }
  for (double& x : p) x /= total;
  return p;
}

ArmId sample_from(std::span<const double> probabilities, Rng& rng) {
  const double u = uniform01(rng);
  double cumulative = 0.0;
  const auto n = static_cast<ArmId>(probabilities.size());
  for (ArmId a = 0; a < n; ++a) {
    cumulative += probabilities[a];
    if (u < cumulative) return a;
  }
  // Rounding left u above the accumulated mass; take the last arm with mass.
  for (ArmId a = n - 1; a > 0; --a) {
    if (probabilities[a] > 0.0) return a;
  }
  return 0;
}

std::vector<double> policy_gradient(std::span<const double> policy, ArmId chosen,
                                    double advantage, double step_size) {
  std::vector<double> g(policy.size());
  const double scale = step_size * advantage;
  for (std::size_t a = 0; a < policy.size(); ++a) {
    const double indicator = static_cast<ArmId>(a) == chosen ? 1.0 : 0.0;
    g[a] = scale * (indicator - policy[a]);
  }
  return g;
}

// --- BanditStats ---

BanditStats::BanditStats(int num_agents, int num_arms)
    : num_agents_(num_agents),
      num_arms_(num_arms),
      arm_visits_(static_cast<std::size_t>(num_arms), 0),
      overall_mean_(static_cast<std::size_t>(num_agents), 0.0),
      arm_mean_(static_cast<std::size_t>(num_agents) * num_arms, 0.0) {
  if (num_agents <= 0 || num_arms <= 0) {
    throw std::invalid_argument("BanditStats: need at least one agent and one arm");
  }
}

void BanditStats::update(ArmId chosen, std::span<const double> returns) {
  if (static_cast<int>(returns.size()) != num_agents_) {
    throw std::invalid_argument("BanditStats::update: expected " +
                                std::to_string(num_agents_) + " returns, got " +
                                std::to_string(returns.size()));
  }
  const auto n = static_cast<double>(total_visits_);
  const auto na = static_cast<double>(arm_visits_[chosen]);
  for (AgentId i = 0; i < num_agents_; ++i) {
    overall_mean_[i] = (overall_mean_[i] * n + returns[i]) / (n + 1.0);
    double& m = arm_mean_[static_cast<std::size_t>(i) * num_arms_ + chosen];
    m = (m * na + returns[i]) / (na + 1.0);
  }
  ++total_visits_;
  ++arm_visits_[chosen];
}

void BanditStats::update_agent(ArmId chosen, AgentId agent, double value) {
  const auto n = static_cast<double>(total_visits_);
  const auto na = static_cast<double>(arm_visits_[chosen]);
  overall_mean_[agent] = (overall_mean_[agent] * n + value) / (n + 1.0);
  double& m = arm_mean_[static_cast<std::size_t>(agent) * num_arms_ + chosen];
  m = (m * na + value) / (na + 1.0);
  ++total_visits_;
  ++arm_visits_[chosen];
}

// --- UCB1 ---

Ucb1Bandit::Ucb1Bandit(AgentId owner, int num_agents, int num_arms,
                       const BanditParams& params)
    : owner_(owner), c_(params.ucb_c), stats_(num_agents, num_arms) {
  if (c_ < 0.0) throw std::invalid_argument("Ucb1Bandit: exploration constant < 0");
}

double Ucb1Bandit::ucb_value(ArmId a) const {
  const auto na = stats_.arm_visits(a);
  if (na == 0) return std::numeric_limits<double>::infinity();
  const auto n = static_cast<double>(stats_.total_visits());
  return stats_.arm_mean(owner_, a) +
         c_ * std::sqrt(2.0 * std::log(n) / static_cast<double>(na));
}

ArmId Ucb1Bandit::select(Rng& rng) const {
  const int k = num_arms();
  const ArmId unvisited =
      pick_uniform_among(k, [&](ArmId a) { return stats_.arm_visits(a) == 0; }, rng);
  if (unvisited >= 0) return unvisited;
  double best = -std::numeric_limits<double>::infinity();
  for (ArmId a = 0; a < k; ++a) best = std::max(best, ucb_value(a));
  return pick_uniform_among(k, [&](ArmId a) { return ucb_value(a) == best; }, rng);
}

ArmId Ucb1Bandit::greedy(Rng& rng) const {
  const int k = num_arms();
  double best = -std::numeric_limits<double>::infinity();
  for (ArmId a = 0; a < k; ++a) {
    if (stats_.arm_visits(a) > 0) best = std::max(best, stats_.arm_mean(owner_, a));
  }
  if (best == -std::numeric_limits<double>::infinity()) {
    return uniform_index(rng, k);
  }
  return pick_uniform_among(
      k,
      [&](ArmId a) { return stats_.arm_visits(a) > 0 && stats_.arm_mean(owner_, a) == best; },
      rng);
}

void Ucb1Bandit::update(ArmId chosen, std::span<const double> returns) {
  stats_.update_agent(chosen, owner_, returns[owner_]);
}

// --- gradient bandits ---

GradientBandit::GradientBandit(AgentId owner, int num_agents, int num_arms,
                               const BanditParams& params)
    : owner_(owner),
      alpha_(params.alpha),
      cap_(params.preference_cap),
      stats_(num_agents, num_arms),
      preferences_(static_cast<std::size_t>(num_arms), 0.0) {
  if (!(alpha_ > 0.0)) throw std::invalid_argument("gradient bandit: learning rate must be > 0");
  if (owner < 0 || owner >= num_agents) {
    throw std::invalid_argument("gradient bandit: owner out of range");
  }
}

void GradientBandit::set_preferences(std::span<const double> h) {
  if (h.size() != preferences_.size()) {
    throw std::invalid_argument("set_preferences: arm count mismatch");
  }
  preferences_.assign(h.begin(), h.end());
}

std::vector<double> GradientBandit::first_order_gradient(AgentId target,
                                                         ArmId chosen) const {
  return first_order_gradient(target, chosen, policy());
}

std::vector<double> GradientBandit::first_order_gradient(
    AgentId target, ArmId chosen, std::span<const double> policy) const {
  const double advantage = stats_.arm_mean(target, chosen) - stats_.overall_mean(target);
  return policy_gradient(policy, chosen, advantage, alpha_);
}

void GradientBandit::apply(std::span<const double> delta) {
  bool clamped = false;
  for (std::size_t a = 0; a < preferences_.size(); ++a) {
    double& h = preferences_[a];
    h += delta[a];
    if (h > cap_) {
      h = cap_;
      clamped = true;
    } else if (h < -cap_) {
      h = -cap_;
      clamped = true;
    }
  }
  if (clamped) {
    ++cap_hits_;
    g_cap_hits.fetch_add(1, std::memory_order_relaxed);
  }
}

void GrabBandit::update(ArmId chosen, double own_return) {
  const PolicyDistribution p = policy();
  stats_.update_agent(chosen, owner_, own_return);
  apply(first_order_gradient(owner_, chosen, p));
}

OgaBandit::OgaBandit(AgentId owner, int num_agents, int num_arms,
                     const BanditParams& params)
    : GradientBandit(owner, num_agents, num_arms, params), delta_(params.delta) {
  if (delta_ < 0.0) throw std::invalid_argument("OgaBandit: lola rate must be >= 0");
}

Matrix cross_hessian_estimate(const OgaBandit& bandit_i, const OgaBandit& bandit_j,
                              ArmId chosen_i, ArmId chosen_j, double return_j) {
  return cross_hessian_estimate(bandit_i, bandit_j, bandit_i.policy(), bandit_j.policy(),
                                chosen_i, chosen_j, return_j);
}

Matrix cross_hessian_estimate(const OgaBandit& bandit_i, const OgaBandit& bandit_j,
                              std::span<const double> policy_i,
                              std::span<const double> policy_j, ArmId chosen_i,
                              ArmId chosen_j, double return_j) {
  const double centered = return_j - bandit_j.stats().overall_mean(bandit_j.owner());
  Matrix m(bandit_i.num_arms(), bandit_j.num_arms());
  for (ArmId a = 0; a < m.rows; ++a) {
    const double u = (a == chosen_i ? 1.0 : 0.0) - policy_i[a];
    for (ArmId b = 0; b < m.cols; ++b) {
      const double v = (b == chosen_j ? 1.0 : 0.0) - policy_j[b];
      m(a, b) = centered * u * v;
    }
  }
  return m;
}

void oga_update(std::span<OgaBandit> bandits, std::span<const ArmId> chosen,
                std::span<const double> returns) {
  const auto n = static_cast<int>(bandits.size());
  if (static_cast<int>(chosen.size()) != n || static_cast<int>(returns.size()) != n) {
    throw std::invalid_argument("oga_update: expected " + std::to_string(n) +
                                " chosen arms and returns");
  }
  for (int k = 0; k < n; ++k) {
    if (bandits[k].owner() != k || bandits[k].stats().num_agents() != n) {
      throw std::invalid_argument("oga_update: bandit k must be owned by agent k of n");
    }
  }

  // Policies before any preference moves.
  std::vector<PolicyDistribution> policy(n);
  for (int k = 0; k < n; ++k) policy[k] = bandits[k].policy();

  for (int k = 0; k < n; ++k) bandits[k].mutable_stats().update(chosen[k], returns);

  // The cross-Hessian estimate is the rank-one matrix
  // centered_j * u_i v_j^T, so M_ij g_{j->i} = centered_j * (v_j . g_{j->i}) * u_i.
  // Only the scalar per (i, j) pair is needed.
  std::vector<double> centered(n);
  for (int j = 0; j < n; ++j) {
    centered[j] = returns[j] - bandits[j].stats().overall_mean(j);
  }

  for (int i = 0; i < n; ++i) {
    std::vector<double> step = bandits[i].first_order_gradient(i, chosen[i], policy[i]);
    double lola_scale = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::vector<double> g_ji = bandits[j].first_order_gradient(i, chosen[j], policy[j]);
      double dot = 0.0;
      for (ArmId b = 0; b < bandits[j].num_arms(); ++b) {
        const double v = (b == chosen[j] ? 1.0 : 0.0) - policy[j][b];
        dot += g_ji[b] * v;
      }
      lola_scale += centered[j] * dot;
    }
    const double delta = bandits[i].lola_rate();
    lola_scale *= delta * delta;
    std::vector<double> lola(step.size());
    for (ArmId a = 0; a < bandits[i].num_arms(); ++a) {
      const double u = (a == chosen[i] ? 1.0 : 0.0) - policy[i][a];
      lola[a] = lola_scale * u;
    }
    // Two separate additions so delta = 0 reproduces the plain gradient step
    // bit for bit.
    bandits[i].apply(step);
    if (n > 1) bandits[i].apply(lola);
  }
}

std::int64_t preference_cap_hits() { return g_cap_hits.load(std::memory_order_relaxed); }

}  // namespace soa
