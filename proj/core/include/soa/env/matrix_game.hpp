#pragma once

// Memory-1 iterated 2x2 matrix games: prisoner's dilemma, matching pennies and
// chicken drive. Action 0 is C (cooperate / chicken) or H, action 1 is D or T.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>

#include "soa/env/step_info.hpp"
#include "soa/generative_model.hpp"

namespace soa {

enum class MatrixGameName { kIpd, kImp, kIcd };

struct MatrixGameSpec {
  MatrixGameName name;
  // payoff[a0][a1] = {reward of agent 0, reward of agent 1}
  std::array<std::array<std::array<double, 2>, 2>, 2> payoff;
};

MatrixGameSpec matrix_game_spec(MatrixGameName name);
std::string_view to_string(MatrixGameName name);

struct MatrixGameState {
  static constexpr std::int8_t kInitial = -1;
  // kInitial, or 2 * a0 + a1 of the previous joint action.
  std::int8_t memory = kInitial;

  static MatrixGameState after(ArmId a0, ArmId a1) {
    return MatrixGameState{static_cast<std::int8_t>(2 * a0 + a1)};
  }
  bool operator==(const MatrixGameState&) const = default;
};

// (next_state, rewards); iterated play never terminates on its own.
Transition<MatrixGameState> matrix_step(const MatrixGameSpec& spec, const MatrixGameState& state,
                                        std::span<const ArmId> joint_action);

class MatrixGame {
 public:
  using State = MatrixGameState;

  explicit MatrixGame(MatrixGameSpec spec) : spec_(spec) {}
  explicit MatrixGame(MatrixGameName name) : spec_(matrix_game_spec(name)) {}

  const MatrixGameSpec& spec() const { return spec_; }
  int num_agents() const { return 2; }
  int action_count(AgentId) const { return 2; }
  bool is_terminal(const State&) const { return false; }
  State initial_state(Rng&) const { return State{}; }

  Transition<State> sample_transition(const State& s, std::span<const ArmId> joint,
                                      Rng&) const {
    return matrix_step(spec_, s, joint);
  }
  Transition<State> step(const State& s, std::span<const ArmId> joint, Rng&,
                         StepInfo*) const {
    return matrix_step(spec_, s, joint);
  }

 private:
  MatrixGameSpec spec_;
};

}  // namespace soa

template <>
struct std::hash<soa::MatrixGameState> {
  std::size_t operator()(const soa::MatrixGameState& s) const noexcept {
    return static_cast<std::size_t>(s.memory + 1);
  }
};
