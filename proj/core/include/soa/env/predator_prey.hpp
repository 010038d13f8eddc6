#pragma once

// Predators hunt up to two randomly moving preys on a (n+3) x (n+3) grid.
// A capture pays +1 to a lone predator, +0.6 to each predator when several are
// within Chebyshev distance 1 of the capture cell, and -1 to every predator
// outside that radius. The episode ends when no prey is left.

#include <array>
#include <cstdint>
#include <functional>
#include <span>

#include "soa/env/step_info.hpp"
#include "soa/generative_model.hpp"

namespace soa {

inline constexpr int kMaxPredators = 8;
inline constexpr int kMaxPreys = 2;

struct PredatorPreyState {
  static constexpr std::uint8_t kGone = 0xff;

  std::uint8_t num_predators = 0;
  std::array<std::uint8_t, kMaxPredators> predators{};
  // Captured preys keep position kGone so equal situations compare equal.
  std::array<std::uint8_t, kMaxPreys> preys{kGone, kGone};

  bool alive(int p) const { return preys[p] != kGone; }
  bool any_alive() const {
    for (int p = 0; p < kMaxPreys; ++p) {
      if (alive(p)) return true;
    }
    return false;
  }
  bool operator==(const PredatorPreyState&) const = default;
};

class PredatorPrey {
 public:
  using State = PredatorPreyState;
  static constexpr int kNumActions = 5;  // up, down, left, right, stay
  static constexpr double kSoloReward = 1.0;
  static constexpr double kSharedReward = 0.6;
  static constexpr double kHungerPenalty = -1.0;

  // grid_size 0 means n + 3.
  explicit PredatorPrey(int num_predators, int num_preys = 2, int grid_size = 0);

  int grid_size() const { return size_; }
  int num_preys() const { return num_preys_; }
  int num_agents() const { return n_; }
  int action_count(AgentId) const { return kNumActions; }
  bool is_terminal(const State& s) const { return !s.any_alive(); }

  // All predators and preys on distinct uniform cells.
  State initial_state(Rng& rng) const;

  Transition<State> step(const State& s, std::span<const ArmId> joint, Rng& rng,
                         StepInfo* info) const;
  Transition<State> sample_transition(const State& s, std::span<const ArmId> joint,
                                      Rng& rng) const {
    return step(s, joint, rng, nullptr);
  }

 private:
  int n_;
  int num_preys_;
  int size_;
};

}  // namespace soa

template <>
struct std::hash<soa::PredatorPreyState> {
  std::size_t operator()(const soa::PredatorPreyState& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&h](std::uint8_t b) {
      h ^= b;
      h *= 0x100000001b3ULL;
    };
    for (int k = 0; k < s.num_predators; ++k) feed(s.predators[k]);
    for (auto p : s.preys) feed(p);
    return static_cast<std::size_t>(h);
  }
};
