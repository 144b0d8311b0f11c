#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ukp/core.hpp"

namespace ukp {

/// Largest capacity the dense g/d arrays accept.
inline constexpr Weight kMaxDenseCapacity = Weight{1} << 31;

/// Final arrays of a step-off run. g[y] is the profit of the retained
/// solution of weight exactly y (0 = none); d[y] is the position, in `order`,
/// of the last and most efficient item of that solution.
struct StepOffState {
  std::vector<Profit> g;
  std::vector<std::uint32_t> d;
  /// Sorted position -> instance item index.
  std::vector<ItemIndex> order;
  std::vector<Weight> weights;  ///< weights in sorted order
  std::vector<Profit> profits;  ///< profits in sorted order
  Profit opt{0};
};

struct OsoOptions {
  /// Keep the smaller item position on a g-tie (the revisited rule). Turning
  /// it off gives the original first-generated-wins behaviour.
  bool tiebreak{true};
};

/// opt(y) = max{0, p_i + opt(y - w_i)}; always n*c steps. Project oracle.
SolverOutcome solve_naive_dp(const Instance& instance, const Deadline& deadline = {});

/// Revisited ordered step-off.
SolverOutcome solve_oso(const Instance& instance, const Deadline& deadline = {},
                        OsoOptions options = {});

/// R-OSO that also hands back its g/d arrays.
std::pair<SolverOutcome, StepOffState> solve_oso_with_state(
    const Instance& instance, const Deadline& deadline = {}, OsoOptions options = {});

/// Terminating step-off: R-OSO with a periodicity stop.
SolverOutcome solve_tso(const Instance& instance, const Deadline& deadline = {});

/// Step-off without the best item, checking bounds at multiples of w_b.
/// Behaves exactly as solve_oso when the best efficiency is shared.
SolverOutcome solve_gfdp(const Instance& instance, const Deadline& deadline = {});

/// Solution stored at weight y. Throws std::logic_error on inconsistent arrays
/// and Error when g[y] is empty.
Solution backtrack(const StepOffState& state, const Instance& instance, Weight y);

}  // namespace ukp
