#pragma once

#include <concepts>
#include <functional>
#include <span>
#include <vector>

#include "soa/bandit.hpp"
#include "soa/rng.hpp"

namespace soa {

// Per-agent discounted (or immediate) reward vector.
using ReturnVector = std::vector<double>;

template <class State>
struct Transition {
  State next;
  ReturnVector rewards;
};

// Black-box simulator the planner searches with. States are values: equality
// comparable and hashable so they can key child lookups.
template <class M>
concept GenerativeModel =
    std::regular<typename M::State> &&
    requires(const M& model, const typename M::State& state,
             std::span<const ArmId> joint_action, Rng& rng, AgentId agent) {
      { model.num_agents() } -> std::convertible_to<int>;
      { model.action_count(agent) } -> std::convertible_to<int>;
      { model.is_terminal(state) } -> std::convertible_to<bool>;
      {
        model.sample_transition(state, joint_action, rng)
      } -> std::same_as<Transition<typename M::State>>;
      { std::hash<typename M::State>{}(state) } -> std::convertible_to<std::size_t>;
    };

}  // namespace soa
