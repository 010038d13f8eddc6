#include "soa/env/predator_prey.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "soa/env/grid.hpp"

namespace soa {

PredatorPrey::PredatorPrey(int num_predators, int num_preys, int grid_size)
    : n_(num_predators),
      num_preys_(num_preys),
      size_(grid_size > 0 ? grid_size : num_predators + 3) {
  if (n_ < 1 || n_ > kMaxPredators) {
    throw std::invalid_argument("PredatorPrey: predator count must be in [1, 8]");
  }
  if (num_preys_ < 1 || num_preys_ > kMaxPreys) {
    throw std::invalid_argument("PredatorPrey: prey count must be 1 or 2");
  }
  if (size_ * size_ < n_ + num_preys_ || size_ * size_ > 255) {
    throw std::invalid_argument("PredatorPrey: grid size out of range");
  }
}

PredatorPreyState PredatorPrey::initial_state(Rng& rng) const {
  const int cells = size_ * size_;
  std::vector<int> pool(static_cast<std::size_t>(cells));
  std::iota(pool.begin(), pool.end(), 0);
  // Partial Fisher-Yates: the first n + preys entries become distinct cells.
  const int needed = n_ + num_preys_;
  for (int k = 0; k < needed; ++k) {
    const int pick = k + uniform_index(rng, cells - k);
    std::swap(pool[k], pool[pick]);
  }
  State s;
  s.num_predators = static_cast<std::uint8_t>(n_);
  for (int k = 0; k < n_; ++k) s.predators[k] = static_cast<std::uint8_t>(pool[k]);
  for (int p = 0; p < num_preys_; ++p) s.preys[p] = static_cast<std::uint8_t>(pool[n_ + p]);
  return s;
}

Transition<PredatorPreyState> PredatorPrey::step(const State& s, std::span<const ArmId> joint,
                                                 Rng& rng, StepInfo* info) const {
  Transition<State> tr{s, ReturnVector(static_cast<std::size_t>(n_), 0.0)};
  State& next = tr.next;
  if (info) info->captures.clear();

  for (int k = 0; k < n_; ++k) {
    next.predators[k] = static_cast<std::uint8_t>(grid::move(s.predators[k], joint[k], size_));
  }
  for (int p = 0; p < kMaxPreys; ++p) {
    if (!next.alive(p)) continue;
    const int action = uniform_index(rng, kNumActions);
    next.preys[p] = static_cast<std::uint8_t>(grid::move(next.preys[p], action, size_));
  }

  for (int p = 0; p < kMaxPreys; ++p) {
    if (!next.alive(p)) continue;
    const int cell = next.preys[p];
    bool caught = false;
    for (int k = 0; k < n_ && !caught; ++k) caught = next.predators[k] == cell;
    if (!caught) continue;

    next.preys[p] = State::kGone;
    int nearby = 0;
    for (int k = 0; k < n_; ++k) {
      if (grid::chebyshev(next.predators[k], cell, size_) <= 1) ++nearby;
    }
    CaptureEvent event{cell, {}};
    for (int k = 0; k < n_; ++k) {
      if (grid::chebyshev(next.predators[k], cell, size_) <= 1) {
        tr.rewards[k] += nearby == 1 ? kSoloReward : kSharedReward;
      } else {
        tr.rewards[k] += kHungerPenalty;
        event.excluded.push_back(k);
      }
    }
    if (info) info->captures.push_back(std::move(event));
  }
  return tr;
}

}  // namespace soa
