#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ukp/core.hpp"

namespace ukp {

/// Node of the MTU1 enumeration tree: items [0, depth) of the efficiency
/// order have fixed copy counts.
struct BBNodeState {
  std::size_t depth{0};
  std::span<const std::int64_t> fixed_counts;
  Weight remaining_capacity{0};
  Profit fixed_profit{0};
};

struct GreedyResult {
  Solution solution;
  Profit value{0};
};

/// Packs, in efficiency order, as many copies of each item as still fit.
GreedyResult greedy_bound(const Instance& instance, Weight capacity);

/// fixed_profit + floor(remaining_capacity * next.profit / next.weight),
/// computed exactly.
Profit continuous_bound(Profit fixed_profit, Weight remaining_capacity, const Item& next);

struct Mtu1Options {
  /// Start from the greedy solution. With false the search starts with no
  /// incumbent, so the first leaf reached is the greedy fill.
  bool seed_with_greedy{true};
  /// Observers. Depth positions index efficiency_order() of the items that
  /// fit the knapsack.
  std::function<void(const BBNodeState&, Profit bound)> on_prune;
  std::function<void(const BBNodeState&)> on_leaf;
  std::function<void(Profit)> on_incumbent;
};

SolverOutcome solve_mtu1(const Instance& instance, const Deadline& deadline = {},
                         const Mtu1Options& options = {});

struct Mtu2Options {
  /// Initial core size; 0 selects max(128, ceil(n / 100)).
  std::size_t initial_core{0};
};

/// MTU1 over a growing core of the most efficient items. Items outside the
/// core are discarded once p_j + floor((c - w_j) * p_b / w_b) cannot beat the
/// core optimum; the core doubles while any remain.
SolverOutcome solve_mtu2(const Instance& instance, const Deadline& deadline = {},
                         Mtu2Options options = {});

}  // namespace ukp
