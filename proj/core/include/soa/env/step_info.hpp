#pragma once

#include <vector>

#include "soa/bandit.hpp"

namespace soa {

struct CaptureEvent {
  int cell = 0;
  // Predators outside the sharing radius, penalized for this capture.
  std::vector<AgentId> excluded;
};

// Side information an environment step can report for metrics. Planning never
// asks for it.
struct StepInfo {
  std::vector<int> own_pickups;    // per agent, coin game
  std::vector<int> other_pickups;  // per agent, coin game
  std::vector<CaptureEvent> captures;
};

}  // namespace soa
