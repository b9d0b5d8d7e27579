// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

namespace nwatsp {

struct KnapsackItem {
  double size = 0.0;
  double profit = 0.0;
};

struct KnapsackSelection {
  std::vector<int> chosen;         // ascending item indices with z* = 1
  double size = 0.0;
  double profit = 0.0;
  double lp_profit = 0.0;          // objective of the fractional optimum z*
  std::optional<int> fractional;   // the item packed with 0 < z* < 1, if any
};

// Greedy optimal extreme point of the fractional knapsack LP (profit/size
// order, zero-size items first, ties by index), rounded down by dropping the
// single fractional item. The chosen sizes never sum above capacity.
KnapsackSelection knapsack_select(const std::vector<KnapsackItem>& items, double capacity);

}  // namespace nwatsp
