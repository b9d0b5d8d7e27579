// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

namespace nwatsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string pair_str(Vertex a, Vertex b) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ")";
  return os.str();
}

// Plain BFS reachability along directed edges (forward or reverse).
std::vector<bool> reachable(const Instance& g, Vertex s, bool forward) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<Vertex> queue{s};
  seen[s] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Vertex v = queue[i];
    auto adj = forward ? g.out_edges(v) : g.in_edges(v);
    for (EdgeId e : adj) {
      Vertex w = forward ? g.edge(e).head : g.edge(e).tail;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

void check_edge(const Instance& g, EdgeId e) {
  if (e < 0 || e >= g.edge_count()) {
    throw Error(Errc::UnknownEdge, "edge id " + std::to_string(e));
  }
}

}  // namespace

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NotStronglyConnected: return "NotStronglyConnected";
    case Errc::NegativeWeight: return "NegativeWeight";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::TooFewVertices: return "TooFewVertices";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::Unreachable: return "Unreachable";
    case Errc::NotBalanced: return "NotBalanced";
    case Errc::NotConnected: return "NotConnected";
    case Errc::VertexMissed: return "VertexMissed";
    case Errc::InvalidPartition: return "InvalidPartition";
    case Errc::PartitionNotStronglyConnected: return "PartitionNotStronglyConnected";
    case Errc::SinglePartError: return "SinglePartError";
    case Errc::BadSpec: return "BadSpec";
    case Errc::TooLarge: return "TooLarge";
    case Errc::Infeasible: return "Infeasible";
    case Errc::IterationLimit: return "IterationLimit";
    case Errc::CutBelowOne: return "CutBelowOne";
    case Errc::NoFeasibleCirculation: return "NoFeasibleCirculation";
    case Errc::RebalancePathMissing: return "RebalancePathMissing";
    case Errc::NoProgress: return "NoProgress";
    case Errc::PotentialStalled: return "PotentialStalled";
    case Errc::LightnessBreach: return "LightnessBreach";
    case Errc::RestartLimitExceeded: return "RestartLimitExceeded";
    case Errc::InvariantBreach: return "InvariantBreach";
    case Errc::Io: return "Io";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

ClosureMatrix::ClosureMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kInf) {
  for (int v = 0; v < n; ++v) at(v, v) = 0.0;
}

Instance::Instance(int n, std::vector<double> f, std::vector<Edge> edges)
    : n_(n), f_(std::move(f)), edges_(std::move(edges)) {
  if (n_ < 0) throw Error(Errc::BadSpec, "negative vertex count");
  if (static_cast<int>(f_.size()) != n_) {
    throw Error(Errc::BadSpec, "expected " + std::to_string(n_) + " vertex weights, got " +
                                   std::to_string(f_.size()));
  }
  out_.resize(n_);
  in_.resize(n_);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto [u, v] = edges_[e];
    if (u < 0 || u >= n_ || v < 0 || v >= n_) {
      throw Error(Errc::VertexOutOfRange, "edge " + std::to_string(e) + " = " + pair_str(u, v));
    }
    out_[u].push_back(e);
    in_[v].push_back(e);
  }

  closure_ = ClosureMatrix(n_);
  for (const auto& [u, v] : edges_) {
    if (u != v) closure_.at(u, v) = std::min(closure_(u, v), f_[u]);
  }
  for (int k = 0; k < n_; ++k) {
    for (int i = 0; i < n_; ++i) {
      const double dik = closure_(i, k);
      if (dik == kInf) continue;
      for (int j = 0; j < n_; ++j) {
        const double cand = dik + closure_(k, j);
        if (cand < closure_(i, j)) closure_.at(i, j) = cand;
      }
    }
  }
}

void validate(const Instance& g) {
  const int n = g.vertex_count();
  if (n < 2) throw Error(Errc::TooFewVertices, "need n >= 2, got " + std::to_string(n));
  for (Vertex v = 0; v < n; ++v) {
    if (!(g.vertex_weight(v) >= 0.0)) {
      throw Error(Errc::NegativeWeight, "f(" + std::to_string(v) + ") = " +
                                            std::to_string(g.vertex_weight(v)));
    }
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).tail == g.edge(e).head) {
      throw Error(Errc::SelfLoop, "edge " + std::to_string(e) + " at vertex " +
                                      std::to_string(g.edge(e).tail));
    }
  }
  const auto fwd = reachable(g, 0, true);
  const auto bwd = reachable(g, 0, false);
  for (Vertex v = 0; v < n; ++v) {
    if (!fwd[v]) {
      throw Error(Errc::NotStronglyConnected, "no path for ordered pair " + pair_str(0, v));
    }
    if (!bwd[v]) {
      throw Error(Errc::NotStronglyConnected, "no path for ordered pair " + pair_str(v, 0));
    }
  }
}

void EdgeMultiset::add(EdgeId e, std::int64_t count) {
  if (count <= 0) return;
  counts_[e] += count;
}

std::int64_t EdgeMultiset::count(EdgeId e) const {
  auto it = counts_.find(e);
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t EdgeMultiset::size() const {
  std::int64_t total = 0;
  for (const auto& [e, c] : counts_) total += c;
  return total;
}

EdgeMultiset& EdgeMultiset::operator+=(const EdgeMultiset& other) {
  for (const auto& [e, c] : other.counts_) counts_[e] += c;
  return *this;
}

EdgeMultiset EdgeMultiset::intersect(const EdgeMultiset& other) const {
  EdgeMultiset out;
  for (const auto& [e, c] : counts_) out.add(e, std::min(c, other.count(e)));
  return out;
}

EdgeMultiset EdgeMultiset::minus(const EdgeMultiset& other) const {
  EdgeMultiset out;
  for (const auto& [e, c] : counts_) out.add(e, c - other.count(e));
  return out;
}

double weight_of(const Instance& g, const EdgeMultiset& edges) {
  double total = 0.0;
  for (const auto& [e, c] : edges) {
    check_edge(g, e);
    total += static_cast<double>(c) * g.weight(e);
  }
  return total;
}

std::vector<std::int64_t> out_degrees(const Instance& g, const EdgeMultiset& edges) {
  std::vector<std::int64_t> deg(g.vertex_count(), 0);
  for (const auto& [e, c] : edges) {
    check_edge(g, e);
    deg[g.edge(e).tail] += c;
  }
  return deg;
}

std::vector<std::int64_t> in_degrees(const Instance& g, const EdgeMultiset& edges) {
  std::vector<std::int64_t> deg(g.vertex_count(), 0);
  for (const auto& [e, c] : edges) {
    check_edge(g, e);
    deg[g.edge(e).head] += c;
  }
  return deg;
}

bool is_balanced(const Instance& g, const EdgeMultiset& edges) {
  return out_degrees(g, edges) == in_degrees(g, edges);
}

EdgeMultiset restrict_to(const Instance& g, const EdgeMultiset& edges,
                         const std::vector<bool>& vertex_mask) {
  EdgeMultiset out;
  for (const auto& [e, c] : edges) {
    check_edge(g, e);
    if (vertex_mask[g.edge(e).tail]) out.add(e, c);
  }
  return out;
}

ComponentView components(const Instance& g, const EdgeMultiset& edges) {
  const int n = g.vertex_count();
  DisjointSets sets(n);
  for (const auto& [e, c] : edges) {
    check_edge(g, e);
    sets.unite(g.edge(e).tail, g.edge(e).head);
  }
  ComponentView view;
  view.component_of.assign(n, -1);
  std::vector<int> root_to_index(n, -1);
  for (Vertex v = 0; v < n; ++v) {
    const int r = sets.find(v);
    if (root_to_index[r] < 0) {
      root_to_index[r] = static_cast<int>(view.components.size());
      view.components.emplace_back();
    }
    view.component_of[v] = root_to_index[r];
    view.components[root_to_index[r]].vertices.push_back(v);
  }
  for (const auto& [e, c] : edges) {
    view.components[view.component_of[g.edge(e).tail]].edges.add(e, c);
  }
  return view;
}

Path shortest_path(const Instance& g, Vertex u, Vertex v, const std::vector<bool>* allowed) {
  const int n = g.vertex_count();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw Error(Errc::UnknownVertex, "shortest_path endpoints " + pair_str(u, v));
  }
  auto ok = [&](Vertex x) { return allowed == nullptr || (*allowed)[x]; };
  if (!ok(u) || !ok(v)) {
    throw Error(Errc::Unreachable, "endpoint outside the restriction set " + pair_str(u, v));
  }
  if (u == v) return {};

  // Backward labels (weight, hops) to v; O(n^2) selection keeps tie handling simple.
  std::vector<double> dist(n, kInf);
  std::vector<int> hops(n, std::numeric_limits<int>::max());
  std::vector<bool> done(n, false);
  dist[v] = 0.0;
  hops[v] = 0;
  auto better = [](double aw, int ah, double bw, int bh) {
    if (aw < bw - kWeightTol) return true;
    if (aw > bw + kWeightTol) return false;
    return ah < bh;
  };
  for (;;) {
    Vertex best = -1;
    for (Vertex x = 0; x < n; ++x) {
      if (done[x] || dist[x] == kInf) continue;
      if (best < 0 || better(dist[x], hops[x], dist[best], hops[best])) best = x;
    }
    if (best < 0) break;
    done[best] = true;
    for (EdgeId e : g.in_edges(best)) {
      const Vertex x = g.edge(e).tail;
      if (done[x] || !ok(x)) continue;
      const double cand = g.vertex_weight(x) + dist[best];
      if (better(cand, hops[best] + 1, dist[x], hops[x])) {
        dist[x] = cand;
        hops[x] = hops[best] + 1;
      }
    }
  }
  if (dist[u] == kInf) {
    throw Error(Errc::Unreachable, "no path for ordered pair " + pair_str(u, v));
  }

  Path path;
  path.weight = dist[u];
  Vertex cur = u;
  while (cur != v) {
    EdgeId pick = -1;
    for (EdgeId e : g.out_edges(cur)) {
      const Vertex w = g.edge(e).head;
      if (!ok(w) || dist[w] == kInf || hops[w] != hops[cur] - 1) continue;
      if (std::abs(g.vertex_weight(cur) + dist[w] - dist[cur]) > kWeightTol) continue;
      if (pick < 0 || w < g.edge(pick).head) pick = e;
    }
    if (pick < 0) throw Error(Errc::InvariantBreach, "shortest path reconstruction stalled");
    path.edges.push_back(pick);
    cur = g.edge(pick).head;
  }
  return path;
}

std::vector<EdgeId> eulerian_circuit(const Instance& g, const EdgeMultiset& edges) {
  const int n = g.vertex_count();
  if (edges.empty()) throw Error(Errc::NotConnected, "empty edge multiset");
  const auto out = out_degrees(g, edges);
  const auto in = in_degrees(g, edges);
  for (Vertex v = 0; v < n; ++v) {
    if (out[v] != in[v]) {
      throw Error(Errc::NotBalanced, "vertex " + std::to_string(v) + " has out-degree " +
                                         std::to_string(out[v]) + " and in-degree " +
                                         std::to_string(in[v]));
    }
  }
  const auto view = components(g, edges);
  int nontrivial = 0;
  for (const auto& c : view.components) nontrivial += c.edges.empty() ? 0 : 1;
  if (nontrivial != 1) {
    throw Error(Errc::NotConnected, std::to_string(nontrivial) + " nontrivial components");
  }

  std::vector<std::vector<EdgeId>> adj(n);
  for (const auto& [e, c] : edges) {
    for (std::int64_t i = 0; i < c; ++i) adj[g.edge(e).tail].push_back(e);
  }
  Vertex start = 0;
  while (adj[start].empty()) ++start;

  std::vector<std::size_t> next(n, 0);
  std::vector<Vertex> vertex_stack{start};
  std::vector<EdgeId> edge_stack;
  std::vector<EdgeId> circuit;
  circuit.reserve(static_cast<std::size_t>(edges.size()));
  while (!vertex_stack.empty()) {
    const Vertex v = vertex_stack.back();
    if (next[v] < adj[v].size()) {
      const EdgeId e = adj[v][next[v]++];
      vertex_stack.push_back(g.edge(e).head);
      edge_stack.push_back(e);
    } else {
      vertex_stack.pop_back();
      if (!edge_stack.empty()) {
        circuit.push_back(edge_stack.back());
        edge_stack.pop_back();
      }
    }
  }
  std::reverse(circuit.begin(), circuit.end());
  return circuit;
}

double closure_tour_weight(const Instance& g, std::span<const Vertex> order) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    total += g.closure()(order[i], order[(i + 1) % order.size()]);
  }
  return total;
}

Tour shortcut(const Instance& g, std::span<const EdgeId> circuit) {
  const int n = g.vertex_count();
  std::vector<bool> seen(n, false);
  Tour tour;
  for (EdgeId e : circuit) {
    check_edge(g, e);
    const Vertex v = g.edge(e).tail;
    if (!seen[v]) {
      seen[v] = true;
      tour.order.push_back(v);
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (!seen[v]) throw Error(Errc::VertexMissed, "vertex " + std::to_string(v));
  }
  tour.weight = closure_tour_weight(g, tour.order);
  return tour;
}

}  // namespace nwatsp
