// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dinic max-flow over integral or real capacities.
//
// For real capacities, residual arcs below `eps` are treated as saturated so
// that the source side of the final residual graph is a minimum cut.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

namespace nwatsp {

template <typename Cap>
class MaxFlow {
 public:
  struct Arc {
    int to;
    int rev;  // index of the reverse arc in adj[to]
    Cap cap;  // residual capacity
    Cap initial;
  };

  explicit MaxFlow(int n, Cap eps = Cap{}) : adj_(n), level_(n), next_(n), eps_(eps) {}

  int node_count() const { return static_cast<int>(adj_.size()); }

  // Returns a handle usable with flow_on().
  std::pair<int, int> add_arc(int from, int to, Cap cap) {
    adj_[from].push_back({to, static_cast<int>(adj_[to].size()), cap, cap});
    adj_[to].push_back({from, static_cast<int>(adj_[from].size()) - 1, Cap{}, Cap{}});
    return {from, static_cast<int>(adj_[from].size()) - 1};
  }

  Cap flow_on(std::pair<int, int> handle) const {
    const Arc& a = adj_[handle.first][handle.second];
    return a.initial - a.cap;
  }

  Cap run(int source, int sink) {
    Cap total{};
    while (build_levels(source, sink)) {
      std::fill(next_.begin(), next_.end(), 0);
      for (;;) {
        const Cap pushed = augment(source, sink, std::numeric_limits<Cap>::max());
        if (!(pushed > eps_)) break;
        total += pushed;
      }
    }
    return total;
  }

  // Vertices reachable from source in the residual graph after run().
  std::vector<bool> source_side(int source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<int> queue{source};
    seen[source] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      for (const Arc& a : adj_[queue[i]]) {
        if (a.cap > eps_ && !seen[a.to]) {
          seen[a.to] = true;
          queue.push_back(a.to);
        }
      }
    }
    return seen;
  }

 private:
  bool build_levels(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::vector<int> queue{source};
    level_[source] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int v = queue[i];
      for (const Arc& a : adj_[v]) {
        if (a.cap > eps_ && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  Cap augment(int v, int sink, Cap limit) {
    if (v == sink) return limit;
    for (int& i = next_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
      Arc& a = adj_[v][i];
      if (!(a.cap > eps_) || level_[a.to] != level_[v] + 1) continue;
      const Cap pushed = augment(a.to, sink, std::min(limit, a.cap));
      if (pushed > eps_) {
        a.cap -= pushed;
        adj_[a.to][a.rev].cap += pushed;
        return pushed;
      }
    }
    return Cap{};
  }

  std::vector<std::vector<Arc>> adj_;
  std::vector<int> level_;
  std::vector<int> next_;
  Cap eps_;
};

}  // namespace nwatsp
