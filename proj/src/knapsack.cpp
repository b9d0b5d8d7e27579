// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/knapsack.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nwatsp {

KnapsackSelection knapsack_select(const std::vector<KnapsackItem>& items, double capacity) {
  for (const auto& item : items) {
    if (item.size < 0.0 || item.profit < 0.0) {
      throw std::invalid_argument("knapsack items need nonnegative size and profit");
    }
  }
  if (capacity < 0.0) throw std::invalid_argument("knapsack capacity must be nonnegative");

  std::vector<int> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  // p_a / s_a > p_b / s_b, cross-multiplied so zero sizes sort first.
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& x = items[a];
    const auto& y = items[b];
    if ((x.size == 0.0) != (y.size == 0.0)) return x.size == 0.0;
    return x.profit * y.size > y.profit * x.size;
  });

  KnapsackSelection sel;
  for (int j : order) {
    const auto& item = items[j];
    if (sel.size + item.size <= capacity) {
      sel.chosen.push_back(j);
      sel.size += item.size;
      sel.profit += item.profit;
      continue;
    }
    const double z = (capacity - sel.size) / item.size;
    if (z > 0.0) {
      sel.fractional = j;
      sel.lp_profit = sel.profit + z * item.profit;
    }
    break;
  }
  if (!sel.fractional) sel.lp_profit = sel.profit;
  std::sort(sel.chosen.begin(), sel.chosen.end());
  return sel;
}

}  // namespace nwatsp
