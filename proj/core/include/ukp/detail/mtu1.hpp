#pragma once

// Depth-first branch-and-bound kernel shared by MTU1, the MTU2 core rounds,
// and the floating-point pricer. Items come sorted by non-increasing
// efficiency; node j decides how many copies of item j to pack, trying the
// largest amount first.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "ukp/core.hpp"

namespace ukp::detail {

/// floor(capacity * p / w) in the profit domain (no floor for real profits).
template <typename P>
P relaxed_fill(Weight capacity, P p, Weight w) {
  if constexpr (std::is_floating_point_v<P>) {
    return static_cast<P>(capacity) * p / static_cast<P>(w);
  } else {
    return static_cast<P>(static_cast<__int128>(capacity) * p / w);
  }
}

/// Snapshot of the current branch handed to observers.
template <typename P>
struct BranchView {
  std::size_t depth;                      ///< items [0, depth) are fixed
  std::span<const std::int64_t> counts;   ///< copies of the fixed items
  Weight remaining_capacity;
  P fixed_profit;
};

template <typename P>
struct BranchHooks {
  std::function<void(const BranchView<P>&, P bound)> on_prune;
  std::function<void(const BranchView<P>&)> on_leaf;
  std::function<void(P)> on_incumbent;
};

template <typename P>
struct BranchRun {
  P best{0};
  std::vector<std::int64_t> best_counts;
  std::int64_t nodes_expanded{0};
  std::int64_t pruned_by_bound{0};
  bool timed_out{false};
};

/// Greedy fill: as many copies of each item in order as still fit.
inline std::vector<std::int64_t> greedy_counts(std::span<const Weight> w, Weight c) {
  std::vector<std::int64_t> x(w.size(), 0);
  for (std::size_t j = 0; j < w.size(); ++j) {
    x[j] = c / w[j];
    c -= x[j] * w[j];
  }
  return x;
}

template <typename P>
BranchRun<P> depth_first_bb(std::span<const Weight> w, std::span<const P> p, Weight c,
                            P incumbent, std::vector<std::int64_t> incumbent_counts,
                            const Deadline& deadline,
                            const BranchHooks<P>* hooks = nullptr) {
  const std::size_t n = w.size();
  BranchRun<P> run;
  run.best = incumbent;
  run.best_counts = std::move(incumbent_counts);
  run.best_counts.resize(n, 0);
  if (n == 0) return run;

  std::vector<Weight> min_suffix(n + 1, std::numeric_limits<Weight>::max());
  for (std::size_t j = n; j-- > 0;) min_suffix[j] = std::min(min_suffix[j + 1], w[j]);

  auto bound_at = [&](std::size_t j, Weight cap, P profit) -> P {
    return j < n ? profit + relaxed_fill<P>(cap, p[j], w[j]) : profit;
  };

  std::vector<std::int64_t> x(n, 0);
  std::size_t j = 0;
  Weight cap = c;
  P profit{0};

  auto view = [&](std::size_t depth) {
    return BranchView<P>{depth, std::span<const std::int64_t>(x.data(), depth), cap, profit};
  };

  while (true) {
    bool pruned = false;
    while (j < n && cap >= min_suffix[j]) {
      if ((run.nodes_expanded & 4095) == 0 && deadline.expired()) {
        run.timed_out = true;
        return run;
      }
      ++run.nodes_expanded;
      const P ub = bound_at(j, cap, profit);
      if (ub <= run.best) {
        ++run.pruned_by_bound;
        if (hooks && hooks->on_prune) hooks->on_prune(view(j), ub);
        pruned = true;
        break;
      }
      const std::int64_t k = cap / w[j];
      x[j] = k;
      cap -= k * w[j];
      profit += static_cast<P>(k) * p[j];
      ++j;
    }
    if (!pruned) {
      if (hooks && hooks->on_leaf) hooks->on_leaf(view(j));
      if (profit > run.best) {
        run.best = profit;
        run.best_counts = x;
        if (hooks && hooks->on_incumbent) hooks->on_incumbent(run.best);
      }
    }

    // Backtrack to the deepest item with copies left to remove. Lowering its
    // count only lowers the child bound, so a failing child ends the item.
    bool resumed = false;
    std::size_t i = j;
    while (i-- > 0) {
      if (x[i] == 0) continue;
      --x[i];
      cap += w[i];
      profit -= p[i];
      const P ub = bound_at(i + 1, cap, profit);
      if (ub <= run.best) {
        ++run.pruned_by_bound;
        if (hooks && hooks->on_prune) hooks->on_prune(view(i + 1), ub);
        cap += x[i] * w[i];
        profit -= static_cast<P>(x[i]) * p[i];
        x[i] = 0;
        continue;
      }
      j = i + 1;
      resumed = true;
      break;
    }
    if (!resumed) break;
  }
  return run;
}

}  // namespace ukp::detail
