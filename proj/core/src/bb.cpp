#include "ukp/bb.hpp"

#include <algorithm>
#include <chrono>

#include "ukp/detail/mtu1.hpp"
#include "ukp/detail/prepared.hpp"

namespace ukp {

namespace {

using Clock = std::chrono::steady_clock;

Solution to_solution(std::span<const ItemIndex> order,
                     const std::vector<std::int64_t>& counts, const Instance& instance) {
  Solution s;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] > 0) s.add(order[k], instance[order[k]], counts[k]);
  }
  return s;
}

Profit counts_profit(std::span<const Profit> p, const std::vector<std::int64_t>& counts) {
  Profit total = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) total += p[k] * counts[k];
  return total;
}

/// Efficiency comparator with the weight and index tiebreaks of efficiency_order.
struct MoreEfficient {
  const Instance* instance;
  bool operator()(ItemIndex a, ItemIndex b) const {
    const int cmp = compare_efficiency((*instance)[a], (*instance)[b]);
    if (cmp != 0) return cmp > 0;
    if ((*instance)[a].weight != (*instance)[b].weight) {
      return (*instance)[a].weight < (*instance)[b].weight;
    }
    return a < b;
  }
};

}  // namespace

GreedyResult greedy_bound(const Instance& instance, Weight capacity) {
  GreedyResult out;
  Weight left = capacity;
  for (const ItemIndex i : efficiency_order(instance.items())) {
    const Item& it = instance[i];
    if (it.weight > left) continue;
    const std::int64_t copies = left / it.weight;
    out.solution.add(i, it, copies);
    left -= copies * it.weight;
  }
  out.value = out.solution.total_profit();
  return out;
}

Profit continuous_bound(Profit fixed_profit, Weight remaining_capacity, const Item& next) {
  return fixed_profit + detail::relaxed_fill<Profit>(remaining_capacity, next.profit, next.weight);
}

SolverOutcome solve_mtu1(const Instance& instance, const Deadline& deadline,
                         const Mtu1Options& options) {
  const auto start = Clock::now();
  const auto items = detail::prepare(instance);
  const Weight c = instance.capacity();

  std::vector<std::int64_t> seed;
  Profit incumbent = -1;
  if (options.seed_with_greedy) {
    seed = detail::greedy_counts(items.weights, c);
    incumbent = counts_profit(items.profits, seed);
  }

  detail::BranchHooks<Profit> hooks;
  const bool observed = options.on_prune || options.on_leaf || options.on_incumbent;
  auto convert = [](const detail::BranchView<Profit>& v) {
    return BBNodeState{v.depth, v.counts, v.remaining_capacity, v.fixed_profit};
  };
  if (options.on_prune) {
    hooks.on_prune = [&](const detail::BranchView<Profit>& v, Profit ub) {
      options.on_prune(convert(v), ub);
    };
  }
  if (options.on_leaf) {
    hooks.on_leaf = [&](const detail::BranchView<Profit>& v) { options.on_leaf(convert(v)); };
  }
  if (options.on_incumbent) hooks.on_incumbent = options.on_incumbent;

  const auto run = detail::depth_first_bb<Profit>(items.weights, items.profits, c, incumbent,
                                                  std::move(seed), deadline,
                                                  observed ? &hooks : nullptr);
  SolverOutcome out;
  out.stats["nodes_expanded"] = run.nodes_expanded;
  out.stats["pruned_by_bound"] = run.pruned_by_bound;
  out.optimal_value = std::max<Profit>(run.best, 0);
  if (run.timed_out) {
    out.terminated_by = Termination::timeout;
  } else {
    out.solution = to_solution(items.order, run.best_counts, instance);
  }
  out.elapsed = Clock::now() - start;
  return out;
}

SolverOutcome solve_mtu2(const Instance& instance, const Deadline& deadline,
                         Mtu2Options options) {
  const auto start = Clock::now();
  const Weight c = instance.capacity();
  SolverOutcome out;

  std::vector<ItemIndex> pool;
  for (ItemIndex i = 0; i < instance.size(); ++i) {
    if (instance[i].weight <= c) pool.push_back(i);
  }
  if (pool.empty()) {
    out.elapsed = Clock::now() - start;
    return out;
  }

  const MoreEfficient more_efficient{&instance};
  const std::size_t n = pool.size();
  std::size_t grow = options.initial_core != 0
                         ? options.initial_core
                         : std::max<std::size_t>(128, (n + 99) / 100);

  // core: sorted prefix taken from pool; rest: candidates not yet in the core.
  std::vector<ItemIndex> core;
  std::vector<ItemIndex> rest = std::move(pool);
  auto take_most_efficient = [&](std::size_t k) {
    k = std::min(k, rest.size());
    std::partial_sort(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k), rest.end(),
                      more_efficient);
    core.insert(core.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
    rest.erase(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
  };
  take_most_efficient(grow);

  const Item best = instance[core.front()];
  std::vector<Weight> w;
  std::vector<Profit> p;
  std::vector<std::int64_t> counts;
  Profit z = -1;
  std::int64_t nodes = 0;
  std::int64_t pruned = 0;
  std::int64_t rounds = 0;

  while (true) {
    for (std::size_t k = w.size(); k < core.size(); ++k) {
      w.push_back(instance[core[k]].weight);
      p.push_back(instance[core[k]].profit);
    }
    if (z < 0) {
      counts = detail::greedy_counts(w, c);
      z = counts_profit(p, counts);
    }
    ++rounds;
    auto run = detail::depth_first_bb<Profit>(w, p, c, z, counts, deadline);
    nodes += run.nodes_expanded;
    pruned += run.pruned_by_bound;
    z = run.best;
    counts = std::move(run.best_counts);
    if (run.timed_out) {
      out.terminated_by = Termination::timeout;
      break;
    }

    std::erase_if(rest, [&](ItemIndex j) {
      const Item& it = instance[j];
      return it.profit + detail::relaxed_fill<Profit>(c - it.weight, best.profit, best.weight) <= z;
    });
    if (rest.empty()) break;
    take_most_efficient(grow);
    grow *= 2;
  }

  out.optimal_value = z;
  if (out.terminated_by == Termination::optimal) {
    out.solution = to_solution(core, counts, instance);
  }
  out.stats["nodes_expanded"] = nodes;
  out.stats["pruned_by_bound"] = pruned;
  out.stats["core_rounds"] = rounds;
  out.stats["core_size"] = static_cast<std::int64_t>(core.size());
  out.elapsed = Clock::now() - start;
  return out;
}

}  // namespace ukp
