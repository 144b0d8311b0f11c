#include "ukp/dp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "ukp/detail/prepared.hpp"
#include "ukp/detail/step_off.hpp"

namespace ukp {

namespace {

using Clock = std::chrono::steady_clock;

void require_dense(const Instance& instance) {
  if (instance.capacity() > kMaxDenseCapacity) {
    throw InvalidInstance("capacity " + std::to_string(instance.capacity()) +
                          " exceeds the dense-array limit 2^31");
  }
}

Solution to_solution(const detail::Prepared& items,
                     const std::vector<std::int64_t>& position_counts,
                     std::size_t offset, const Instance& instance) {
  Solution s;
  for (std::size_t k = 0; k < position_counts.size(); ++k) {
    if (position_counts[k] == 0) continue;
    const ItemIndex index = items.order[k + offset];
    s.add(index, instance[index], position_counts[k]);
  }
  return s;
}

void record(SolverOutcome& out, const detail::StepOffRun<Profit>& run) {
  out.stats["capacities_scanned"] = run.capacities_scanned;
  out.stats["states_expanded"] = run.states_expanded;
  out.stats["inner_iterations"] = run.inner_iterations;
}

SolverOutcome finish_step_off(const Instance& instance, const detail::Prepared& items,
                              const detail::StepOffRun<Profit>& run,
                              Clock::time_point start) {
  SolverOutcome out;
  record(out, run);
  if (run.timed_out) {
    out.terminated_by = Termination::timeout;
    out.optimal_value = run.opt;
  } else {
    auto counts = detail::backtrack_positions<Profit>(run.g, run.d, items.weights,
                                                      items.profits, run.y_opt);
    if (run.extra_best_copies > 0) counts[0] += run.extra_best_copies;
    out.solution = to_solution(items, counts, 0, instance);
    out.optimal_value = run.opt;
  }
  out.elapsed = Clock::now() - start;
  return out;
}

}  // namespace

SolverOutcome solve_naive_dp(const Instance& instance, const Deadline& deadline) {
  require_dense(instance);
  const auto start = Clock::now();
  const Weight c = instance.capacity();
  const auto items = instance.items();
  const std::size_t n = items.size();

  constexpr auto kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<Profit> opt(static_cast<std::size_t>(c) + 1, 0);
  std::vector<std::uint32_t> choice(static_cast<std::size_t>(c) + 1, kNone);

  SolverOutcome out;
  std::int64_t steps = 0;
  for (Weight y = 1; y <= c; ++y) {
    if ((y & (detail::kDeadlineStride - 1)) == 0 && deadline.expired()) {
      out.terminated_by = Termination::timeout;
      out.optimal_value = opt[static_cast<std::size_t>(y - 1)];
      out.stats["capacities_scanned"] = y - 1;
      out.stats["inner_iterations"] = steps;
      out.elapsed = Clock::now() - start;
      return out;
    }
    Profit best = 0;
    std::uint32_t best_i = kNone;
    for (std::size_t i = 0; i < n; ++i) {
      ++steps;
      if (items[i].weight > y) continue;
      const Profit candidate = items[i].profit + opt[static_cast<std::size_t>(y - items[i].weight)];
      if (candidate > best) {
        best = candidate;
        best_i = static_cast<std::uint32_t>(i);
      }
    }
    opt[static_cast<std::size_t>(y)] = best;
    choice[static_cast<std::size_t>(y)] = best_i;
  }

  Weight y = c;
  while (y > 0 && choice[static_cast<std::size_t>(y)] != kNone) {
    const ItemIndex i = choice[static_cast<std::size_t>(y)];
    out.solution.add(i, items[i]);
    y -= items[i].weight;
  }
  out.optimal_value = opt[static_cast<std::size_t>(c)];
  out.stats["capacities_scanned"] = c;
  out.stats["inner_iterations"] = steps;
  out.elapsed = Clock::now() - start;
  return out;
}

std::pair<SolverOutcome, StepOffState> solve_oso_with_state(const Instance& instance,
                                                            const Deadline& deadline,
                                                            OsoOptions options) {
  require_dense(instance);
  const auto start = Clock::now();
  const auto items = detail::prepare(instance);
  auto run = detail::ordered_step_off<Profit>(items.weights, items.profits,
                                              instance.capacity(), options.tiebreak,
                                              false, deadline);
  SolverOutcome out = finish_step_off(instance, items, run, start);
  StepOffState state{std::move(run.g), std::move(run.d), items.order,
                     items.weights, items.profits, run.opt};
  return {std::move(out), std::move(state)};
}

SolverOutcome solve_oso(const Instance& instance, const Deadline& deadline,
                        OsoOptions options) {
  require_dense(instance);
  const auto start = Clock::now();
  const auto items = detail::prepare(instance);
  const auto run = detail::ordered_step_off<Profit>(
      items.weights, items.profits, instance.capacity(), options.tiebreak, false, deadline);
  return finish_step_off(instance, items, run, start);
}

SolverOutcome solve_tso(const Instance& instance, const Deadline& deadline) {
  require_dense(instance);
  const auto start = Clock::now();
  const auto items = detail::prepare(instance);
  const auto run = detail::ordered_step_off<Profit>(
      items.weights, items.profits, instance.capacity(), true, true, deadline);
  return finish_step_off(instance, items, run, start);
}

SolverOutcome solve_gfdp(const Instance& instance, const Deadline& deadline) {
  require_dense(instance);
  const auto start = Clock::now();
  const auto items = detail::prepare(instance);
  if (items.empty() || items.shares_best_efficiency()) {
    auto out = solve_oso(instance, deadline);
    out.elapsed = Clock::now() - start;
    return out;
  }

  const Weight c = instance.capacity();
  const Weight wb = items.weights[0];
  const Profit pb = items.profits[0];
  auto completion = [&](Weight z, Profit gz) { return gz + (c - z) / wb * pb; };
  auto relaxation = [&](Weight z, Profit gz) {
    return gz + static_cast<Profit>(static_cast<__int128>(c - z) * pb / wb);
  };
  const auto run = detail::best_item_free_step_off<Profit>(
      items.weights, items.profits, c, deadline, completion, relaxation);

  SolverOutcome out;
  record(out, run);
  out.stats["checkpoints"] = run.checkpoints;
  out.optimal_value = run.opt;
  if (run.timed_out) {
    out.terminated_by = Termination::timeout;
  } else {
    const std::span<const Weight> rest_w(items.weights.data() + 1, items.weights.size() - 1);
    const std::span<const Profit> rest_p(items.profits.data() + 1, items.profits.size() - 1);
    const auto counts = detail::backtrack_positions<Profit>(run.g, run.d, rest_w, rest_p, run.y_opt);
    out.solution = to_solution(items, counts, 1, instance);
    out.solution.add(items.order[0], instance[items.order[0]], run.extra_best_copies);
  }
  out.elapsed = Clock::now() - start;
  return out;
}

Solution backtrack(const StepOffState& state, const Instance& instance, Weight y) {
  if (y < 0 || static_cast<std::size_t>(y) >= state.g.size()) {
    throw Error("weight " + std::to_string(y) + " outside the step-off arrays");
  }
  if (y > 0 && state.g[static_cast<std::size_t>(y)] <= 0) {
    throw Error("no retained solution at weight " + std::to_string(y));
  }
  const auto counts = detail::backtrack_positions<Profit>(state.g, state.d, state.weights,
                                                          state.profits, y);
  Solution s;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0) s.add(state.order[k], instance[state.order[k]], counts[k]);
  }
  return s;
}

}  // namespace ukp
