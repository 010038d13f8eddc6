#include "soa/planner.hpp"

#include <stdexcept>

namespace soa {

std::string_view to_string(BanditKind kind) {
  switch (kind) {
    case BanditKind::kUcb1:
      return "ucb1";
    case BanditKind::kGrab:
      return "grab";
    case BanditKind::kOga:
      return "oga";
  }
  return "unknown";
}

void validate(const PlannerConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("planner: horizon must be >= 1");
  if (config.budget < 1) throw std::invalid_argument("planner: budget must be >= 1");
  if (!(config.discount >= 0.0 && config.discount <= 1.0)) {
    throw std::invalid_argument("planner: discount must lie in [0, 1]");
  }
  if (config.planning_agent < 0) {
    throw std::invalid_argument("planner: planning agent must be non-negative");
  }
}

}  // namespace soa
