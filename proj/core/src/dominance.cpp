#include "ukp/dominance.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>


namespace ukp {

bool dominates_solution(const Solution& s, const Solution& t) {
  return s.total_weight() <= t.total_weight() && s.total_profit() >= t.total_profit() &&
         !(s == t);
}

std::string_view to_string(DominanceLevel level) {
  switch (level) {
    case DominanceLevel::simple: return "simple";
    case DominanceLevel::multiple: return "multiple";
    case DominanceLevel::collective: return "collective";
  }
  return "unknown";
}

DominanceLevel parse_dominance_level(std::string_view name) {
  if (name == "simple") return DominanceLevel::simple;
  if (name == "multiple") return DominanceLevel::multiple;
  if (name == "collective") return DominanceLevel::collective;
  throw Error("unknown dominance level '" + std::string(name) + "'");
}

namespace {

/// True when identical-or-better item i at the same weight should knock out j.
bool same_weight_beats(const Item& a, ItemIndex i, const Item& b, ItemIndex j) {
  return a.weight == b.weight && (a.profit > b.profit || (a.profit == b.profit && i < j));
}

std::vector<bool> pairwise_dominated(const Instance& instance, bool multiple) {
  // Candidates are checked against surviving items only; dominance between
  // items is transitive, so a dominated dominator always has a surviving one.
  const auto items = instance.items();
  std::vector<bool> dominated(items.size(), false);
  std::vector<ItemIndex> kept;
  for (const ItemIndex j : efficiency_order(items)) {
    const Item& b = items[j];
    for (const ItemIndex i : kept) {
      const Item& a = items[i];
      if (a.weight > b.weight) continue;
      const std::int64_t copies = multiple ? b.weight / a.weight : 1;
      if (static_cast<__int128>(a.profit) * copies >= b.profit) {
        dominated[j] = true;
        break;
      }
    }
    if (!dominated[j]) kept.push_back(j);
  }
  return dominated;
}

std::vector<bool> collectively_dominated(const Instance& instance) {
  const auto items = instance.items();
  const auto w_max = static_cast<std::size_t>(instance.max_weight());

  // best_le[y]: best profit with weight <= y, for y < w_max.
  // composed[y]: best profit of a solution of weight <= y holding some item
  // lighter than y, for y <= w_max.
  std::vector<Profit> best_le(w_max, 0);
  std::vector<Profit> composed(w_max + 1, 0);
  for (std::size_t y = 1; y <= w_max; ++y) {
    Profit inner = 0;
    Profit exact_single = 0;
    for (const Item& it : items) {
      const auto w = static_cast<std::size_t>(it.weight);
      if (w < y) {
        inner = std::max(inner, it.profit + best_le[y - w]);
      } else if (w == y) {
        exact_single = std::max(exact_single, it.profit);
      }
    }
    composed[y] = inner;
    if (y < w_max) best_le[y] = std::max({best_le[y - 1], inner, exact_single});
  }

  std::vector<bool> dominated(items.size(), false);
  for (ItemIndex j = 0; j < items.size(); ++j) {
    const Item& b = items[j];
    if (composed[static_cast<std::size_t>(b.weight)] >= b.profit) {
      dominated[j] = true;
      continue;
    }
    for (ItemIndex i = 0; i < items.size() && !dominated[j]; ++i) {
      if (i != j && same_weight_beats(items[i], i, b, j)) dominated[j] = true;
    }
  }
  return dominated;
}

}  // namespace

DominanceReport remove_dominated(const Instance& instance, DominanceLevel level) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<bool> dominated;
  switch (level) {
    case DominanceLevel::simple: dominated = pairwise_dominated(instance, false); break;
    case DominanceLevel::multiple: dominated = pairwise_dominated(instance, true); break;
    case DominanceLevel::collective: dominated = collectively_dominated(instance); break;
  }
  DominanceReport report;
  report.level = level;
  for (ItemIndex i = 0; i < instance.size(); ++i) {
    (dominated[i] ? report.removed : report.survivors).push_back(i);
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

Instance reduced_instance(const Instance& instance, const DominanceReport& report) {
  std::vector<Item> items;
  items.reserve(report.survivors.size());
  for (const ItemIndex i : report.survivors) items.push_back(instance[i]);
  return Instance(instance.capacity(), std::move(items));
}

PeriodicityBound periodicity_bound(const Instance& instance) {
  PeriodicityBound out;
  const Weight c = instance.capacity();
  const ItemIndex b = best_item(instance);
  const Weight wb = instance[b].weight;
  out.best_item_index = b;

  const Weight cap = c + 1;
  Weight sum = 0;
  for (ItemIndex j = 0; j < instance.size() && sum < cap; ++j) {
    if (j == b) continue;
    const Weight wj = instance[j].weight;
    const __int128 lcm = static_cast<__int128>(wb / std::gcd(wb, wj)) * wj;
    sum = static_cast<Weight>(std::min<__int128>(cap, sum + lcm));
  }
  out.y_dprime = sum;

  if (sum < c) {
    const std::int64_t toward = (c - sum + wb - 1) / wb;
    out.fill_copies = std::min<std::int64_t>(toward, c / wb);
  }
  out.reduced_capacity = c - out.fill_copies * wb;
  return out;
}

}  // namespace ukp
