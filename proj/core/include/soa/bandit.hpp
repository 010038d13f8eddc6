#pragma once

// Multi-armed bandits used as tree policies: UCB1, gradient bandits (GRAB)
// and opponent-aware gradient bandits (OGA).

#include <cstdint>
#include <span>
#include <vector>

#include "soa/rng.hpp"

namespace soa {

using ArmId = int;
using AgentId = int;

// Probabilities over the arms of one bandit.
using PolicyDistribution = std::vector<double>;

// Dense row-major matrix, only as large as the bandit code needs.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// exp(H - max H), normalized. Throws std::invalid_argument on an empty or
// non-finite preference vector.
PolicyDistribution softmax_policy(std::span<const double> preferences);

// Inverse-CDF draw from a distribution.
ArmId sample_from(std::span<const double> probabilities, Rng& rng);

// alpha * advantage * (1[a = chosen] - P(a)) for every arm a.
std::vector<double> policy_gradient(std::span<const double> policy, ArmId chosen,
                                    double advantage, double step_size);

struct BanditParams {
  double ucb_c = 1.0;
  double alpha = 0.1;
  double delta = 1.0;
  // Absolute bound on preferences; exceeding it clamps and counts a hit.
  double preference_cap = 50.0;
};

// Visit counts plus per-agent running means of the discounted return, overall
// and per arm of the owning bandit.
class BanditStats {
 public:
  BanditStats(int num_agents, int num_arms);

  int num_agents() const { return num_agents_; }
  int num_arms() const { return num_arms_; }
  std::int64_t total_visits() const { return total_visits_; }
  std::int64_t arm_visits(ArmId a) const { return arm_visits_[a]; }
  double overall_mean(AgentId i) const { return overall_mean_[i]; }
  double arm_mean(AgentId i, ArmId a) const {
    return arm_mean_[static_cast<std::size_t>(i) * num_arms_ + a];
  }

  // Folds one joint return sample into every agent's row, then bumps N and N_a.
  // Throws std::invalid_argument if returns.size() != num_agents().
  void update(ArmId chosen, std::span<const double> returns);

  // Same bookkeeping, but only agent's row receives the sample.
  void update_agent(ArmId chosen, AgentId agent, double value);

 private:
  int num_agents_;
  int num_arms_;
  std::int64_t total_visits_ = 0;
  std::vector<std::int64_t> arm_visits_;
  std::vector<double> overall_mean_;
  std::vector<double> arm_mean_;  // agent-major
};

class Ucb1Bandit {
 public:
  Ucb1Bandit(AgentId owner, int num_agents, int num_arms, const BanditParams& params);

  AgentId owner() const { return owner_; }
  int num_arms() const { return stats_.num_arms(); }
  double exploration_constant() const { return c_; }
  const BanditStats& stats() const { return stats_; }
  BanditStats& mutable_stats() { return stats_; }

  // Mean plus confidence radius for the owner's row; +inf for an unvisited arm.
  double ucb_value(ArmId a) const;

  // Unvisited arms first (uniform among them), otherwise argmax UCB1 with
  // uniform tie-breaking.
  ArmId select(Rng& rng) const;

  // Argmax of the owner's mean return, uniform tie-breaking.
  ArmId greedy(Rng& rng) const;

  // Owner's row only.
  void update(ArmId chosen, std::span<const double> returns);

 private:
  AgentId owner_;
  double c_;
  BanditStats stats_;
};

// Preference-based bandit with a softmax policy; shared by GRAB and OGA.
class GradientBandit {
 public:
  GradientBandit(AgentId owner, int num_agents, int num_arms, const BanditParams& params);

  AgentId owner() const { return owner_; }
  int num_arms() const { return stats_.num_arms(); }
  double learning_rate() const { return alpha_; }
  const BanditStats& stats() const { return stats_; }
  BanditStats& mutable_stats() { return stats_; }
  std::span<const double> preferences() const { return preferences_; }
  void set_preferences(std::span<const double> h);
  std::int64_t cap_hits() const { return cap_hits_; }

  PolicyDistribution policy() const { return softmax_policy(preferences_); }
  ArmId select(Rng& rng) const { return sample_from(policy(), rng); }

  // Gradient of target's value w.r.t. this bandit's preferences, estimated
  // from the stored statistics: alpha * (X_bar[target][chosen] - X[target]) *
  // (1[a = chosen] - P(a)). Uses the current (pre-update) policy.
  std::vector<double> first_order_gradient(AgentId target, ArmId chosen) const;
  std::vector<double> first_order_gradient(AgentId target, ArmId chosen,
                                           std::span<const double> policy) const;

  // Adds delta to the preferences and applies the cap.
  void apply(std::span<const double> delta);

 protected:
  AgentId owner_;
  double alpha_;
  double cap_;
  std::int64_t cap_hits_ = 0;
  BanditStats stats_;
  std::vector<double> preferences_;
};

class GrabBandit : public GradientBandit {
 public:
  using GradientBandit::GradientBandit;

  // update_expectations on the owner's row, then H += first_order_gradient.
  void update(ArmId chosen, double own_return);
};

class OgaBandit : public GradientBandit {
 public:
  OgaBandit(AgentId owner, int num_agents, int num_arms, const BanditParams& params);

  double lola_rate() const { return delta_; }

 private:
  double delta_;
};

// Score-function estimate of d^2 V_j / (d theta_i d theta_j):
// (return_j - X_j) * (1[a = chosen_i] - P_i(a)) * (1[b = chosen_j] - P_j(b)),
// where X_j is bandit_j's overall mean for its own agent.
Matrix cross_hessian_estimate(const OgaBandit& bandit_i, const OgaBandit& bandit_j,
                              ArmId chosen_i, ArmId chosen_j, double return_j);
Matrix cross_hessian_estimate(const OgaBandit& bandit_i, const OgaBandit& bandit_j,
                              std::span<const double> policy_i,
                              std::span<const double> policy_j, ArmId chosen_i,
                              ArmId chosen_j, double return_j);

// Opponent-aware update of all bandits at one state node. bandits[k] must be
// owned by agent k. Phases: expectations for every bandit with the joint
// return, then all pairwise gradients and cross-Hessians under the pre-update
// policies, then H_i += g_{i->i} + delta^2 * sum_{j != i} M_{ij} g_{j->i}.
void oga_update(std::span<OgaBandit> bandits, std::span<const ArmId> chosen,
                std::span<const double> returns);

// Process-wide count of preference-cap clamps.
std::int64_t preference_cap_hits();

}  // namespace soa
