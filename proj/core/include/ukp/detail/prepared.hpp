#pragma once

#include <vector>

#include "ukp/core.hpp"

namespace ukp::detail {

/// Items that fit the knapsack, in efficiency order, as parallel arrays.
struct Prepared {
  std::vector<ItemIndex> order;
  std::vector<Weight> weights;
  std::vector<Profit> profits;

  bool empty() const { return order.empty(); }
  std::size_t size() const { return order.size(); }
  bool shares_best_efficiency() const {
    return size() >= 2 &&
           compare_efficiency({weights[0], profits[0]}, {weights[1], profits[1]}) == 0;
  }
};

inline Prepared prepare(const Instance& instance) {
  Prepared out;
  for (const ItemIndex i : efficiency_order(instance.items())) {
    if (instance[i].weight > instance.capacity()) continue;
    out.order.push_back(i);
    out.weights.push_back(instance[i].weight);
    out.profits.push_back(instance[i].profit);
  }
  return out;
}

}  // namespace ukp::detail
