#pragma once

#include <vector>

#include "ukp/core.hpp"

namespace ukp {

/// s dominates t when it weighs no more, is worth no less, and differs from t.
/// Simple, multiple, collective and threshold dominance are all this relation
/// applied to single-item or replicated-item solutions.
bool dominates_solution(const Solution& s, const Solution& t);

enum class DominanceLevel { simple, multiple, collective };

std::string_view to_string(DominanceLevel level);
DominanceLevel parse_dominance_level(std::string_view name);

struct DominanceReport {
  DominanceLevel level{DominanceLevel::simple};
  std::vector<ItemIndex> removed;    ///< ascending
  std::vector<ItemIndex> survivors;  ///< ascending
  Seconds elapsed{0};
};

/// Items that some other item (simple: one copy, multiple: ⌊w_j/w_i⌋ copies) or
/// some solution not equal to {j} (collective) can replace. Identical items
/// keep the lowest index.
DominanceReport remove_dominated(const Instance& instance, DominanceLevel level);

/// Instance restricted to `report.survivors`, in their original order.
Instance reduced_instance(const Instance& instance, const DominanceReport& report);

struct PeriodicityBound {
  /// Σ_{j≠b} lcm(w_b, w_j), saturated at c + 1.
  Weight y_dprime{0};
  Weight reduced_capacity{0};
  ItemIndex best_item_index{0};
  std::int64_t fill_copies{0};
};

/// Bound on the periodicity capacity and the capacity the problem can be cut
/// down to: opt(c) = opt(reduced_capacity) + fill_copies * p_b.
PeriodicityBound periodicity_bound(const Instance& instance);

}  // namespace ukp
