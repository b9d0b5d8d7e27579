// SPDX-License-Identifier: Apache-2.0
#pragma once

// 3-light algorithm for node-weighted Local-Connectivity ATSP.
//
// Given a partition V_1..V_k of V into strongly connected parts, find an
// Eulerian multiset F with at least one F-edge leaving every V_i such that
// every connected component C of F has w(C) <= 3 lb(C).
//
// Pipeline: auxiliary graph -> fractional circulation witness from x* ->
// integral circulation via max-flow -> F from the middle arcs, plus one
// rebalancing path inside each part.

#include <cstdint>
#include <vector>

#include "nwatsp/graph.hpp"
#include "nwatsp/held_karp.hpp"

namespace nwatsp {

struct Partition {
  std::vector<std::vector<Vertex>> parts;

  int size() const { return static_cast<int>(parts.size()); }
  // Part index per vertex. Throws InvalidPartition unless parts are disjoint,
  // nonempty and cover [0, n).
  std::vector<int> part_of(int n) const;
};

// Throws InvalidPartition, PartitionNotStronglyConnected or SinglePartError.
void validate_partition(const Instance& instance, const Partition& partition);

// Vertex numbering: original v -> v, out_e -> n + 2e, in_e -> n + 2e + 1,
// A_i -> n + 2m + i. Arcs 3e, 3e+1, 3e+2 are (u,out_e), (out_e,in_e),
// (in_e,v); the A-arcs follow.
class AuxGraph {
 public:
  struct Arc {
    int from;
    int to;
  };

  AuxGraph(const Instance& instance, const Partition& partition);

  int original_count() const { return n_; }
  int edge_count() const { return m_; }
  int part_count() const { return k_; }
  int vertex_count() const { return n_ + 2 * m_ + k_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Arc& arc(int a) const { return arcs_[a]; }

  int out_node(EdgeId e) const { return n_ + 2 * e; }
  int in_node(EdgeId e) const { return n_ + 2 * e + 1; }
  int a_node(int part) const { return n_ + 2 * m_ + part; }

  int tail_arc(EdgeId e) const { return 3 * e; }
  int middle_arc(EdgeId e) const { return 3 * e + 1; }
  int head_arc(EdgeId e) const { return 3 * e + 2; }
  // (A_i, out_e) for e leaving its tail's part, -1 for intra-part edges.
  int a_out_arc(EdgeId e) const { return a_out_[e]; }
  // (in_e, A_j) for e entering its head's part, -1 for intra-part edges.
  int a_in_arc(EdgeId e) const { return a_in_[e]; }

  int part_of(Vertex v) const { return part_of_[v]; }
  const Partition& partition() const { return partition_; }

 private:
  int n_;
  int m_;
  int k_;
  Partition partition_;
  std::vector<int> part_of_;
  std::vector<Arc> arcs_;
  std::vector<int> a_out_;
  std::vector<int> a_in_;
};

AuxGraph build_aux(const Instance& instance, const Partition& partition);

using FractionalCirculation = std::vector<double>;        // per aux arc
using IntegralCirculation = std::vector<std::int64_t>;    // per aux arc

// Largest |inflow - outflow| over auxiliary vertices.
double conservation_residual(const AuxGraph& aux, const std::vector<double>& flow);

// Out-throughput of an auxiliary vertex.
double throughput(const AuxGraph& aux, const std::vector<double>& flow, int node);

// The fractional witness: a 1/x*(out(V_i)) share of the flow crossing each cut
// is routed through A_i. Throws CutBelowOne.
FractionalCirculation fractional_circulation(const Instance& instance, const AuxGraph& aux,
                                             const LpSolution& lp);

// ceil(z - 1e-6): out-throughput cap for an original vertex with x*(out(v)) = z.
std::int64_t degree_cap(double out_flow);

// Integral circulation with A_i throughput exactly 1 and original vertex
// out-throughput at most degree_cap(x*(out(v))). Throws NoFeasibleCirculation.
IntegralCirculation integral_circulation(const Instance& instance, const AuxGraph& aux,
                                         const LpSolution& lp);

// F from the middle arcs of y plus, per part, a minimum-weight path inside
// the part from the vertex entered by A_i's inflow to the tail of its outflow.
EdgeMultiset assemble(const Instance& instance, const AuxGraph& aux,
                      const IntegralCirculation& y);

struct LcCheck {
  bool balanced = false;
  bool crosses_every_part = false;
  bool degree_bound = false;
  double max_ratio = 0.0;  // max over nontrivial components of w / lb
  bool light = false;      // every component has w <= alpha lb + tol
};

// Evaluates the guarantees of a Local-Connectivity solution.
LcCheck check_local_connectivity(const Instance& instance, const LpSolution& lp,
                                 const Partition& partition, const EdgeMultiset& f,
                                 double alpha = 3.0, double tol = 1e-6);

// Full pipeline; every guarantee of LcCheck is asserted on the result
// (LightnessBreach / InvariantBreach on failure).
EdgeMultiset solve_lc(const Instance& instance, const LpSolution& lp, const Partition& partition);

}  // namespace nwatsp
