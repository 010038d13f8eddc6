#pragma once

// Monte-Carlo tree search over alternating state/action nodes. Each state node
// holds one bandit per agent; the tree only branches on the planning agent's
// own action, opponents' choices show up as transition stochasticity.
// The bandit kind selects the variant: UCB1 -> UCT, GRAB -> GRAB-MCTS,
// OGA -> SOA.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "soa/bandit.hpp"
#include "soa/generative_model.hpp"
#include "soa/rng.hpp"

namespace soa {

enum class BanditKind { kUcb1, kGrab, kOga };

// How UCT picks the action it finally plays at the root.
enum class RootDecision { kGreedyMean, kUcb1 };

std::string_view to_string(BanditKind kind);

struct PlannerConfig {
  int horizon = 2;
  int budget = 100;
  double discount = 0.9;
  BanditKind bandit_kind = BanditKind::kOga;
  BanditParams bandit;
  AgentId planning_agent = 0;
  RootDecision uct_root = RootDecision::kGreedyMean;
};

void validate(const PlannerConfig& config);

namespace detail {

inline ArmId select_arm(const Ucb1Bandit& b, Rng& rng) { return b.select(rng); }
inline ArmId select_arm(const GradientBandit& b, Rng& rng) { return b.select(rng); }

inline void update_node(std::span<Ucb1Bandit> bandits, std::span<const ArmId> chosen,
                        std::span<const double> returns) {
  for (std::size_t k = 0; k < bandits.size(); ++k) bandits[k].update(chosen[k], returns);
}

inline void update_node(std::span<GrabBandit> bandits, std::span<const ArmId> chosen,
                        std::span<const double> returns) {
  for (std::size_t k = 0; k < bandits.size(); ++k) {
    bandits[k].update(chosen[k], returns[bandits[k].owner()]);
  }
}

inline void update_node(std::span<OgaBandit> bandits, std::span<const ArmId> chosen,
                        std::span<const double> returns) {
  oga_update(bandits, chosen, returns);
}

}  // namespace detail

template <GenerativeModel Model, class Bandit>
class SearchTree {
 public:
  using State = typename Model::State;

  struct StateNode;

  struct ActionNode {
    ArmId action = 0;
    std::unordered_map<State, std::unique_ptr<StateNode>> children;
  };

  struct StateNode {
    State state;
    int depth = 0;
    std::vector<Bandit> bandits;
    std::vector<ActionNode> action_children;

    bool expanded() const { return !bandits.empty(); }
  };

  // Optional instrumentation, used by tests to log and replay the search.
  struct Hooks {
    // Called with the node's bandits as they were when the joint action was drawn.
    std::function<void(const StateNode&, std::span<const ArmId>)> on_selection;
    // Called once per simulate_action with r_t, R_{t+1} and the combined return.
    std::function<void(std::span<const double>, std::span<const double>,
                       std::span<const double>)>
        on_backup;
  };

  SearchTree(const Model& model, State root, PlannerConfig config)
      : model_(model), config_(std::move(config)), root_(std::make_unique<StateNode>()) {
    validate(config_);
    root_->state = std::move(root);
    node_count_ = 1;
  }

  const StateNode& root() const { return *root_; }
  StateNode& mutable_root() { return *root_; }
  std::int64_t node_count() const { return node_count_; }
  const PlannerConfig& config() const { return config_; }
  void set_hooks(Hooks hooks) { hooks_ = std::move(hooks); }

  // Runs the full budget from the root.
  void search(Rng& rng) {
    for (int it = 0; it < config_.budget; ++it) {
      simulate_state(*root_, config_.horizon, it == 0, rng);
    }
  }

  ReturnVector simulate_state(StateNode& node, int remaining, bool is_new, Rng& rng) {
    const int n = model_.num_agents();
    if (remaining <= 0) return ReturnVector(n, 0.0);
    if (is_new) {
      expand(node);
      return rollout(node.state, remaining, rng);
    }
    std::vector<ArmId> joint(n);
    for (int k = 0; k < n; ++k) joint[k] = detail::select_arm(node.bandits[k], rng);
    if (hooks_.on_selection) hooks_.on_selection(node, joint);
    ReturnVector g = simulate_action(node, joint, remaining, rng);
    update_bandits(node, g, joint);
    return g;
  }

  ReturnVector simulate_action(StateNode& node, std::span<const ArmId> joint, int remaining,
                               Rng& rng) {
    Transition<State> tr = model_.sample_transition(node.state, joint, rng);
    const int n = model_.num_agents();
    if (model_.is_terminal(tr.next)) {
      if (hooks_.on_backup) {
        const ReturnVector zero(n, 0.0);
        hooks_.on_backup(tr.rewards, zero, tr.rewards);
      }
      return std::move(tr.rewards);
    }
    ActionNode& action = node.action_children[joint[config_.planning_agent]];
    auto it = action.children.find(tr.next);
    bool created = false;
    if (it == action.children.end()) {
      auto child = std::make_unique<StateNode>();
      child->state = tr.next;
      child->depth = node.depth + 1;
      it = action.children.emplace(std::move(tr.next), std::move(child)).first;
      ++node_count_;
      created = true;
    }
    const ReturnVector future = simulate_state(*it->second, remaining - 1, created, rng);
    ReturnVector g(n);
    for (int k = 0; k < n; ++k) g[k] = tr.rewards[k] + config_.discount * future[k];
    if (hooks_.on_backup) hooks_.on_backup(tr.rewards, future, g);
    return g;
  }

  // Uniformly random joint actions until the remaining horizon is used up or a
  // terminal state is reached.
  ReturnVector rollout(State state, int remaining, Rng& rng) const {
    const int n = model_.num_agents();
    ReturnVector g(n, 0.0);
    std::vector<ArmId> joint(n);
    double weight = 1.0;
    for (int t = 0; t < remaining && !model_.is_terminal(state); ++t) {
      for (int k = 0; k < n; ++k) joint[k] = uniform_index(rng, model_.action_count(k));
      Transition<State> tr = model_.sample_transition(state, joint, rng);
      for (int k = 0; k < n; ++k) g[k] += weight * tr.rewards[k];
      weight *= config_.discount;
      state = std::move(tr.next);
    }
    return g;
  }

  void update_bandits(StateNode& node, std::span<const double> returns,
                      std::span<const ArmId> joint) {
    detail::update_node(std::span<Bandit>(node.bandits), joint, returns);
  }

  // The planning agent's action at the root once the search is done.
  ArmId decide(Rng& rng) const {
    const Bandit& own = root_->bandits.at(config_.planning_agent);
    if constexpr (std::is_same_v<Bandit, Ucb1Bandit>) {
      return config_.uct_root == RootDecision::kGreedyMean ? own.greedy(rng) : own.select(rng);
    } else {
      return own.select(rng);
    }
  }

 private:
  void expand(StateNode& node) {
    const int n = model_.num_agents();
    node.bandits.clear();
    node.bandits.reserve(n);
    for (int k = 0; k < n; ++k) {
      node.bandits.emplace_back(k, n, model_.action_count(k), config_.bandit);
    }
    const int own_actions = model_.action_count(config_.planning_agent);
    node.action_children.resize(own_actions);
    for (int a = 0; a < own_actions; ++a) node.action_children[a].action = a;
  }

  const Model& model_;
  PlannerConfig config_;
  std::unique_ptr<StateNode> root_;
  std::int64_t node_count_ = 0;
  Hooks hooks_;
};

template <GenerativeModel Model, class Bandit>
ArmId plan_with(const Model& model, const typename Model::State& root,
                const PlannerConfig& config, Rng& rng) {
  if (model.is_terminal(root)) throw std::invalid_argument("plan: root state is terminal");
  SearchTree<Model, Bandit> tree(model, root, config);
  tree.search(rng);
  // At most one expansion per iteration.
  if (tree.node_count() > config.budget) {
    throw std::logic_error("plan: more state nodes than iterations");
  }
  return tree.decide(rng);
}

// Runs config.budget iterations from root and returns the planning agent's
// action. Throws std::invalid_argument on a terminal root.
template <GenerativeModel Model>
ArmId plan(const Model& model, const typename Model::State& root, const PlannerConfig& config,
           Rng& rng) {
  switch (config.bandit_kind) {
    case BanditKind::kUcb1:
      return plan_with<Model, Ucb1Bandit>(model, root, config, rng);
    case BanditKind::kGrab:
      return plan_with<Model, GrabBandit>(model, root, config, rng);
    case BanditKind::kOga:
      return plan_with<Model, OgaBandit>(model, root, config, rng);
  }
  throw std::invalid_argument("plan: unknown bandit kind");
}

}  // namespace soa
