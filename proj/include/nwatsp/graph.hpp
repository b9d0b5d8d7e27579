// SPDX-License-Identifier: Apache-2.0
#pragma once

// Node-weighted directed multigraphs and the Eulerian/connectivity utilities
// shared by the LP, local-connectivity and merge modules.
//
// Edge weights are never stored: w(u,v) = f(u).

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "nwatsp/error.hpp"

namespace nwatsp {

using Vertex = int;
using EdgeId = int;

// Absolute tolerance used for every weight comparison.
inline constexpr double kWeightTol = 1e-9;

struct Edge {
  Vertex tail;
  Vertex head;
};

// All-pairs shortest-path distances under w(u,v) = f(u). d(u,u) = 0, and
// unreachable pairs hold +infinity.
class ClosureMatrix {
 public:
  ClosureMatrix() = default;
  explicit ClosureMatrix(int n);

  int size() const { return n_; }
  double operator()(Vertex u, Vertex v) const { return d_[static_cast<std::size_t>(u) * n_ + v]; }
  double& at(Vertex u, Vertex v) { return d_[static_cast<std::size_t>(u) * n_ + v]; }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

class Instance {
 public:
  // Throws VertexOutOfRange for endpoints outside [0, n) and BadSpec when
  // f.size() != n. Everything else is checked by validate().
  Instance(int n, std::vector<double> f, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  double vertex_weight(Vertex v) const { return f_[v]; }
  std::span<const double> vertex_weights() const { return f_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const { return edges_; }
  double weight(EdgeId e) const { return f_[edges_[e].tail]; }

  // Edge ids leaving / entering v, ascending.
  std::span<const EdgeId> out_edges(Vertex v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(Vertex v) const { return in_[v]; }

  const ClosureMatrix& closure() const { return closure_; }

 private:
  int n_;
  std::vector<double> f_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  ClosureMatrix closure_;
};

// Ok iff n >= 2, f >= 0, no self-loops and strongly connected.
void validate(const Instance& instance);

// Multiset of edge ids with positive multiplicities.
class EdgeMultiset {
 public:
  using Map = std::map<EdgeId, std::int64_t>;

  EdgeMultiset() = default;

  void add(EdgeId e, std::int64_t count = 1);
  std::int64_t count(EdgeId e) const;
  bool empty() const { return counts_.empty(); }
  // Number of occurrences, counting multiplicity.
  std::int64_t size() const;
  std::size_t distinct() const { return counts_.size(); }

  Map::const_iterator begin() const { return counts_.begin(); }
  Map::const_iterator end() const { return counts_.end(); }

  // Multiset union adds multiplicities.
  EdgeMultiset& operator+=(const EdgeMultiset& other);
  friend EdgeMultiset operator+(EdgeMultiset a, const EdgeMultiset& b) { return a += b; }
  EdgeMultiset intersect(const EdgeMultiset& other) const;
  EdgeMultiset minus(const EdgeMultiset& other) const;

  bool operator==(const EdgeMultiset&) const = default;

 private:
  Map counts_;
};

double weight_of(const Instance& instance, const EdgeMultiset& edges);

// Multiplicity-counted out/in degree per vertex.
std::vector<std::int64_t> out_degrees(const Instance& instance, const EdgeMultiset& edges);
std::vector<std::int64_t> in_degrees(const Instance& instance, const EdgeMultiset& edges);

bool is_balanced(const Instance& instance, const EdgeMultiset& edges);

// Occurrences of edges with tail (and therefore, for a connected component,
// head) inside the vertex mask.
EdgeMultiset restrict_to(const Instance& instance, const EdgeMultiset& edges,
                         const std::vector<bool>& vertex_mask);

struct Component {
  std::vector<Vertex> vertices;  // ascending
  EdgeMultiset edges;

  bool trivial() const { return vertices.size() == 1; }
};

// Undirected connected components of (V, E'). Components are ordered by
// their smallest vertex; untouched vertices are singleton components.
struct ComponentView {
  std::vector<Component> components;
  std::vector<int> component_of;  // per vertex

  std::size_t size() const { return components.size(); }
};

ComponentView components(const Instance& instance, const EdgeMultiset& edges);

struct Path {
  std::vector<EdgeId> edges;
  double weight = 0.0;
};

// Minimum-weight directed path from u to v, optionally only through vertices
// flagged in `allowed`. Ties go to the fewest edges, then to the
// lexicographically smallest vertex sequence, then to the smallest edge ids.
Path shortest_path(const Instance& instance, Vertex u, Vertex v,
                   const std::vector<bool>* allowed = nullptr);

// Closed walk using every occurrence exactly once (Hierholzer). Starts at the
// smallest vertex incident to the multiset.
std::vector<EdgeId> eulerian_circuit(const Instance& instance, const EdgeMultiset& edges);

struct Tour {
  std::vector<Vertex> order;
  double weight = 0.0;  // in the metric closure
};

// First-occurrence order of a closed walk, priced in the metric closure.
Tour shortcut(const Instance& instance, std::span<const EdgeId> circuit);

// Closure weight of a Hamiltonian order (returning to order[0]).
double closure_tour_weight(const Instance& instance, std::span<const Vertex> order);

}  // namespace nwatsp
