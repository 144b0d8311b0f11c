#pragma once

// Step-off dynamic programming kernels, generic over the profit type so the
// column-generation pricer can run them on floating-point dual values.
//
// Items are passed in solver order (position 0 is tried first and is the best
// item under an efficiency order). Callers drop items heavier than the
// capacity before calling.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ukp/core.hpp"

namespace ukp::detail {

inline constexpr std::int64_t kDeadlineStride = 4096;

template <typename P>
struct StepOffRun {
  std::vector<P> g;
  std::vector<std::uint32_t> d;
  P opt{0};
  /// Weight of the state realising `opt` (0 = empty solution).
  Weight y_opt{0};
  /// Copies of position 0 appended on top of the state at y_opt.
  std::int64_t extra_best_copies{0};
  std::int64_t capacities_scanned{0};
  std::int64_t states_expanded{0};
  std::int64_t inner_iterations{0};
  std::int64_t checkpoints{0};
  bool timed_out{false};
};

template <typename P>
void seed_single_items(std::span<const Weight> w, std::span<const P> p,
                       StepOffRun<P>& run, Weight* last_nonbest = nullptr) {
  for (std::size_t k = w.size(); k-- > 0;) {
    const auto y = static_cast<std::size_t>(w[k]);
    const auto i = static_cast<std::uint32_t>(k);
    if (run.g[y] < p[k] || (run.g[y] == p[k] && i < run.d[y])) {
      run.g[y] = p[k];
      run.d[y] = i;
      if (last_nonbest && i != 0) *last_nonbest = std::max(*last_nonbest, w[k]);
    }
  }
}

/// Ordered step-off. With `tiebreak` the g-tie rule keeps the smaller item
/// position (fewer descendants); without it the first generated state is kept.
/// With `periodicity` the scan stops once no state above the current capacity
/// was produced by an item other than position 0.
template <typename P>
StepOffRun<P> ordered_step_off(std::span<const Weight> w, std::span<const P> p,
                               Weight c, bool tiebreak, bool periodicity,
                               const Deadline& deadline) {
  StepOffRun<P> run;
  run.g.assign(static_cast<std::size_t>(c) + 1, P{0});
  run.d.assign(static_cast<std::size_t>(c) + 1, std::numeric_limits<std::uint32_t>::max());
  if (w.empty()) return run;

  Weight last_nonbest = 0;
  seed_single_items(w, p, run, periodicity ? &last_nonbest : nullptr);

  const Weight w_min = *std::min_element(w.begin(), w.end());
  P* g = run.g.data();
  std::uint32_t* d = run.d.data();
  Weight y = w_min;
  for (; y <= c; ++y) {
    if ((run.capacities_scanned & (kDeadlineStride - 1)) == 0 && deadline.expired()) {
      run.timed_out = true;
      return run;
    }
    if (periodicity && y > last_nonbest) break;
    ++run.capacities_scanned;
    if (g[y] <= run.opt) continue;  // partial solution dominance
    run.opt = g[y];
    run.y_opt = y;
    ++run.states_expanded;

    const P gy = g[y];
    const std::uint32_t dy = d[y];
    for (std::uint32_t i = 0; i <= dy; ++i) {
      ++run.inner_iterations;
      const Weight ny = y + w[i];
      if (ny > c) continue;
      const P candidate = gy + p[i];
      if (g[ny] < candidate) {
        g[ny] = candidate;
        d[ny] = i;
        if (periodicity && i != 0 && ny > last_nonbest) last_nonbest = ny;
      } else if (tiebreak && g[ny] == candidate && i < d[ny]) {
        d[ny] = i;
      }
    }
  }

  if (periodicity && y <= c) {
    // Every state at or above y only grows by copies of position 0, and no
    // such state exists yet beyond y + w[0] - 1.
    const Weight wb = w[0];
    const P pb = p[0];
    const Weight last = std::min(c, y + wb - 1);
    for (Weight z = y; z <= last; ++z) {
      if (g[z] <= P{0}) continue;
      const std::int64_t copies = (c - z) / wb;
      const P value = g[z] + static_cast<P>(copies) * pb;
      if (value > run.opt) {
        run.opt = value;
        run.y_opt = z;
        run.extra_best_copies = copies;
      }
    }
  }
  return run;
}

/// Step-off that never extends with the best item (position 0), checking at
/// multiples of w[0] whether the best completion found so far can still be
/// beaten. Requires w.size() >= 1 and position 0 strictly more efficient than
/// every other position.
///
/// completion(z, gz): value of state (z, gz) topped up with whole copies of
/// the best item. relaxation(z, gz): continuous upper bound on any descendant
/// of that state. g/d positions of the result refer to w[1..].
template <typename P, typename Completion, typename Relaxation>
StepOffRun<P> best_item_free_step_off(std::span<const Weight> w,
                                      std::span<const P> p, Weight c,
                                      const Deadline& deadline,
                                      Completion completion,
                                      Relaxation relaxation) {
  StepOffRun<P> run;
  run.g.assign(static_cast<std::size_t>(c) + 1, P{0});
  run.d.assign(static_cast<std::size_t>(c) + 1, std::numeric_limits<std::uint32_t>::max());

  const Weight wb = w[0];
  const auto rest_w = w.subspan(1);
  const auto rest_p = p.subspan(1);

  P lower = completion(0, P{0});
  Weight lower_at = 0;
  run.opt = lower;
  run.extra_best_copies = c / wb;
  if (rest_w.empty()) return run;

  // Positions in g/d refer to rest_w (position k is item k + 1 overall).
  seed_single_items(rest_w, rest_p, run);

  const Weight w_min = *std::min_element(rest_w.begin(), rest_w.end());
  const Weight w_max = *std::max_element(rest_w.begin(), rest_w.end());
  const Weight stride = wb * std::max<Weight>(1, (w_max + wb - 1) / wb);

  P* g = run.g.data();
  std::uint32_t* d = run.d.data();
  P running = P{0};
  for (Weight y = w_min; y <= c; ++y) {
    if ((run.capacities_scanned & (kDeadlineStride - 1)) == 0 && deadline.expired()) {
      run.timed_out = true;
      break;
    }
    ++run.capacities_scanned;
    const P gy = g[y];
    if (gy > P{0}) {
      const P topped = completion(y, gy);
      if (topped > lower) {
        lower = topped;
        lower_at = y;
      }
    }
    if (gy > running) {
      running = gy;
      ++run.states_expanded;
      const std::uint32_t dy = d[y];
      for (std::uint32_t i = 0; i <= dy; ++i) {
        ++run.inner_iterations;
        const Weight ny = y + rest_w[i];
        if (ny > c) continue;
        const P candidate = gy + rest_p[i];
        if (g[ny] < candidate) {
          g[ny] = candidate;
          d[ny] = i;
        } else if (g[ny] == candidate && i < d[ny]) {
          d[ny] = i;
        }
      }
    }

    if (y % stride == 0) {
      ++run.checkpoints;
      bool beaten = false;
      const Weight last = std::min(c, y + w_max);
      for (Weight z = y + 1; z <= last && !beaten; ++z) {
        if (g[z] > P{0} && relaxation(z, g[z]) > lower) beaten = true;
      }
      if (!beaten) break;
    }
  }
  run.opt = lower;
  run.y_opt = lower_at;
  run.extra_best_copies = (c - lower_at) / wb;
  return run;
}

/// Rebuilds the item multiset of the state at weight y as per-position counts.
template <typename P>
std::vector<std::int64_t> backtrack_positions(const std::vector<P>& g,
                                              const std::vector<std::uint32_t>& d,
                                              std::span<const Weight> w,
                                              std::span<const P> p, Weight y) {
  std::vector<std::int64_t> counts(w.size(), 0);
  while (y > 0) {
    const auto yy = static_cast<std::size_t>(y);
    if (yy >= g.size() || g[yy] <= P{0} || d[yy] >= w.size()) {
      throw std::logic_error("step-off arrays are inconsistent at weight " +
                             std::to_string(y));
    }
    const std::uint32_t i = d[yy];
    const Weight prev = y - w[i];
    if (prev < 0 || g[static_cast<std::size_t>(prev)] + p[i] != g[yy]) {
      throw std::logic_error("step-off arrays are inconsistent at weight " +
                             std::to_string(y));
    }
    ++counts[i];
    y = prev;
  }
  return counts;
}

}  // namespace ukp::detail
