#pragma once

// Two-agent coin game on a small grid. Agent 0 is red, agent 1 is blue; a coin
// has the color of one of them. Picking up any coin pays +1, and when the
// other agent takes your color you lose 2.

#include <array>
#include <cstdint>
#include <functional>
#include <span>

#include "soa/env/step_info.hpp"
#include "soa/generative_model.hpp"

namespace soa {

struct CoinGameState {
  std::array<std::uint8_t, 2> agents{};  // red, blue
  std::uint8_t coin = 0;
  std::uint8_t coin_color = 0;  // index of the owning agent

  bool operator==(const CoinGameState&) const = default;
};

class CoinGame {
 public:
  using State = CoinGameState;
  static constexpr int kNumActions = 4;  // up, down, left, right

  explicit CoinGame(int grid_size = 3);

  int grid_size() const { return size_; }
  int num_agents() const { return 2; }
  int action_count(AgentId) const { return kNumActions; }
  bool is_terminal(const State&) const { return false; }

  // Agents and coin on three distinct uniform cells, uniform coin color.
  State initial_state(Rng& rng) const;

  Transition<State> step(const State& s, std::span<const ArmId> joint, Rng& rng,
                         StepInfo* info) const;
  Transition<State> sample_transition(const State& s, std::span<const ArmId> joint,
                                      Rng& rng) const {
    return step(s, joint, rng, nullptr);
  }

 private:
  int size_;
};

}  // namespace soa

template <>
struct std::hash<soa::CoinGameState> {
  std::size_t operator()(const soa::CoinGameState& s) const noexcept {
    return (static_cast<std::size_t>(s.agents[0]) << 24) |
           (static_cast<std::size_t>(s.agents[1]) << 16) |
           (static_cast<std::size_t>(s.coin) << 8) | s.coin_color;
  }
};
