#include "soa/env/matrix_game.hpp"

#include <stdexcept>

namespace soa {

MatrixGameSpec matrix_game_spec(MatrixGameName name) {
  switch (name) {
    case MatrixGameName::kIpd:
      return {name, {{{{{-1.0, -1.0}, {-3.0, 0.0}}}, {{{0.0, -3.0}, {-2.0, -2.0}}}}}};
    case MatrixGameName::kImp:
      return {name, {{{{{1.0, -1.0}, {-1.0, 1.0}}}, {{{-1.0, 1.0}, {1.0, -1.0}}}}}};
    case MatrixGameName::kIcd:
      return {name, {{{{{0.0, 0.0}, {-1.0, 1.0}}}, {{{1.0, -1.0}, {-10.0, -10.0}}}}}};
  }
  throw std::invalid_argument("unknown matrix game");
}

std::string_view to_string(MatrixGameName name) {
  switch (name) {
    case MatrixGameName::kIpd:
      return "ipd";
    case MatrixGameName::kImp:
      return "imp";
    case MatrixGameName::kIcd:
      return "icd";
  }
  return "unknown";
}

Transition<MatrixGameState> matrix_step(const MatrixGameSpec& spec, const MatrixGameState&,
                                        std::span<const ArmId> joint_action) {
  const ArmId a0 = joint_action[0];
  const ArmId a1 = joint_action[1];
  const auto& cell = spec.payoff[a0][a1];
  return {MatrixGameState::after(a0, a1), {cell[0], cell[1]}};
}

}  // namespace soa
