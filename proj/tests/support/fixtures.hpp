// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "nwatsp/graph.hpp"

namespace fixture {

using nwatsp::Edge;
using nwatsp::Instance;

inline Instance cycle(std::vector<double> f) {
  const int n = static_cast<int>(f.size());
  std::vector<Edge> edges;
  for (int v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n});
  return Instance(n, std::move(f), std::move(edges));
}

inline Instance c4() { return cycle({1, 1, 1, 1}); }

inline Instance digon(double a, double b) { return Instance(2, {a, b}, {{0, 1}, {1, 0}}); }

// All ordered pairs, lexicographic edge ids.
inline Instance bidirected_complete(std::vector<double> f) {
  const int n = static_cast<int>(f.size());
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) edges.push_back({u, v});
  return Instance(n, std::move(f), std::move(edges));
}

inline nwatsp::EdgeMultiset all_edges(const Instance& g, std::int64_t times = 1) {
  nwatsp::EdgeMultiset m;
  for (int e = 0; e < g.edge_count(); ++e) m.add(e, times);
  return m;
}

}  // namespace fixture
