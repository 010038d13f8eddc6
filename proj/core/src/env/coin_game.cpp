#include "soa/env/coin_game.hpp"

#include <stdexcept>

#include "soa/env/grid.hpp"

namespace soa {

CoinGame::CoinGame(int grid_size) : size_(grid_size) {
  if (grid_size < 2 || grid_size > 15) {
    throw std::invalid_argument("CoinGame: grid size must be in [2, 15]");
  }
}

CoinGameState CoinGame::initial_state(Rng& rng) const {
  const int cells = size_ * size_;
  State s;
  s.agents[0] = static_cast<std::uint8_t>(uniform_index(rng, cells));
  do {
    s.agents[1] = static_cast<std::uint8_t>(uniform_index(rng, cells));
  } while (s.agents[1] == s.agents[0]);
  do {
    s.coin = static_cast<std::uint8_t>(uniform_index(rng, cells));
  } while (s.coin == s.agents[0] || s.coin == s.agents[1]);
  s.coin_color = static_cast<std::uint8_t>(uniform_index(rng, 2));
  return s;
}

Transition<CoinGameState> CoinGame::step(const State& s, std::span<const ArmId> joint,
                                         Rng& rng, StepInfo* info) const {
  Transition<State> tr{s, {0.0, 0.0}};
  State& next = tr.next;
  for (int k = 0; k < 2; ++k) {
    next.agents[k] = static_cast<std::uint8_t>(grid::move(s.agents[k], joint[k], size_));
  }
  if (info) {
    info->own_pickups.assign(2, 0);
    info->other_pickups.assign(2, 0);
  }

  const int owner = s.coin_color;
  bool picked = false;
  bool taken_by_other = false;
  for (int k = 0; k < 2; ++k) {
    if (next.agents[k] != s.coin) continue;
    picked = true;
    tr.rewards[k] += 1.0;
    if (k != owner) taken_by_other = true;
    if (info) ++(k == owner ? info->own_pickups : info->other_pickups)[k];
  }
  if (taken_by_other) tr.rewards[owner] -= 2.0;

  if (picked) {
    const int cells = size_ * size_;
    do {
      next.coin = static_cast<std::uint8_t>(uniform_index(rng, cells));
    } while (next.coin == next.agents[0] || next.coin == next.agents[1]);
    next.coin_color = static_cast<std::uint8_t>(uniform_index(rng, 2));
  }
  return tr;
}

}  // namespace soa
