// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/local_connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nwatsp/max_flow.hpp"

namespace nwatsp {

namespace {

constexpr double kCutTol = 1e-7;
constexpr std::int64_t kUnbounded = std::int64_t{1} << 40;

bool strongly_connected_within(const Instance& g, const std::vector<Vertex>& part,
                               const std::vector<bool>& mask) {
  for (bool forward : {true, false}) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<Vertex> queue{part.front()};
    seen[part.front()] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Vertex v = queue[i];
      for (EdgeId e : forward ? g.out_edges(v) : g.in_edges(v)) {
        const Vertex w = forward ? g.edge(e).head : g.edge(e).tail;
        if (mask[w] && !seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
    if (queue.size() != part.size()) return false;
  }
  return true;
}

// x*(out(V_i)) per part.
std::vector<double> part_out_flow(const Instance& g, const AuxGraph& aux, const LpSolution& lp) {
  std::vector<double> out(aux.part_count(), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const int i = aux.part_of(g.edge(e).tail);
    if (i != aux.part_of(g.edge(e).head)) out[i] += lp.x[e];
  }
  return out;
}

}  // namespace

std::vector<int> Partition::part_of(int n) const {
  std::vector<int> owner(n, -1);
  for (int i = 0; i < size(); ++i) {
    if (parts[i].empty()) throw Error(Errc::InvalidPartition, "part " + std::to_string(i) + " is empty");
    for (Vertex v : parts[i]) {
      if (v < 0 || v >= n) throw Error(Errc::InvalidPartition, "vertex " + std::to_string(v) + " out of range");
      if (owner[v] >= 0) {
        throw Error(Errc::InvalidPartition, "vertex " + std::to_string(v) + " appears in parts " +
                                                std::to_string(owner[v]) + " and " + std::to_string(i));
      }
      owner[v] = i;
    }
  }
  for (Vertex v = 0; v < n; ++v) {
    if (owner[v] < 0) throw Error(Errc::InvalidPartition, "vertex " + std::to_string(v) + " uncovered");
  }
  return owner;
}

void validate_partition(const Instance& g, const Partition& partition) {
  const auto owner = partition.part_of(g.vertex_count());
  if (partition.size() < 2) {
    throw Error(Errc::SinglePartError, "a single part has no outgoing cut to cross");
  }
  for (int i = 0; i < partition.size(); ++i) {
    std::vector<bool> mask(g.vertex_count(), false);
    for (Vertex v : partition.parts[i]) mask[v] = true;
    if (!strongly_connected_within(g, partition.parts[i], mask)) {
      throw Error(Errc::PartitionNotStronglyConnected, "part " + std::to_string(i));
    }
  }
  (void)owner;
}

AuxGraph::AuxGraph(const Instance& g, const Partition& partition)
    : n_(g.vertex_count()), m_(g.edge_count()), k_(partition.size()), partition_(partition) {
  validate_partition(g, partition);
  part_of_ = partition.part_of(n_);
  arcs_.reserve(3 * m_);
  for (EdgeId e = 0; e < m_; ++e) {
    const auto [u, v] = g.edge(e);
    arcs_.push_back({u, out_node(e)});
    arcs_.push_back({out_node(e), in_node(e)});
    arcs_.push_back({in_node(e), v});
  }
  a_out_.assign(m_, -1);
  a_in_.assign(m_, -1);
  for (int i = 0; i < k_; ++i) {
    for (EdgeId e = 0; e < m_; ++e) {
      const auto [u, v] = g.edge(e);
      if (part_of_[u] == i && part_of_[v] != i) {
        a_out_[e] = static_cast<int>(arcs_.size());
        arcs_.push_back({a_node(i), out_node(e)});
      }
    }
    for (EdgeId e = 0; e < m_; ++e) {
      const auto [u, v] = g.edge(e);
      if (part_of_[v] == i && part_of_[u] != i) {
        a_in_[e] = static_cast<int>(arcs_.size());
        arcs_.push_back({in_node(e), a_node(i)});
      }
    }
  }
}

AuxGraph build_aux(const Instance& instance, const Partition& partition) {
  return AuxGraph(instance, partition);
}

double throughput(const AuxGraph& aux, const std::vector<double>& flow, int node) {
  double total = 0.0;
  for (int a = 0; a < aux.arc_count(); ++a) {
    if (aux.arc(a).from == node) total += flow[a];
  }
  return total;
}

double conservation_residual(const AuxGraph& aux, const std::vector<double>& flow) {
  std::vector<double> balance(aux.vertex_count(), 0.0);
  for (int a = 0; a < aux.arc_count(); ++a) {
    balance[aux.arc(a).from] -= flow[a];
    balance[aux.arc(a).to] += flow[a];
  }
  double worst = 0.0;
  for (double b : balance) worst = std::max(worst, std::abs(b));
  return worst;
}

FractionalCirculation fractional_circulation(const Instance& g, const AuxGraph& aux,
                                             const LpSolution& lp) {
  const auto cut_out = part_out_flow(g, aux, lp);
  for (int i = 0; i < aux.part_count(); ++i) {
    if (cut_out[i] < 1.0 - kCutTol) {
      throw Error(Errc::CutBelowOne, "x*(out(V_" + std::to_string(i) + ")) = " +
                                         std::to_string(cut_out[i]));
    }
  }
  FractionalCirculation y(aux.arc_count(), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    const int i = aux.part_of(u);
    const int j = aux.part_of(v);
    const double xe = lp.x[e];
    const double keep_i = xe * (1.0 - 1.0 / cut_out[i]);
    if (i == j) {
      y[aux.tail_arc(e)] = y[aux.middle_arc(e)] = y[aux.head_arc(e)] = keep_i;
    } else {
      y[aux.middle_arc(e)] = xe;
      y[aux.a_out_arc(e)] = xe / cut_out[i];
      y[aux.tail_arc(e)] = keep_i;
      y[aux.a_in_arc(e)] = xe / cut_out[j];
      y[aux.head_arc(e)] = xe * (1.0 - 1.0 / cut_out[j]);
    }
  }
  return y;
}

std::int64_t degree_cap(double out_flow) {
  return static_cast<std::int64_t>(std::ceil(out_flow - 1e-6));
}

IntegralCirculation integral_circulation(const Instance& g, const AuxGraph& aux,
                                         const LpSolution& lp) {
  // Every aux vertex x is split into in-copy 2x and out-copy 2x+1. Original
  // vertices get their degree cap on the split arc; A_i has lower = upper = 1,
  // which the lower-bound reduction turns into a source arc into its out-copy
  // and a sink arc from its in-copy.
  const int nodes = aux.vertex_count();
  const int source = 2 * nodes;
  const int sink = source + 1;
  MaxFlow<std::int64_t> flow(sink + 1);

  std::vector<std::pair<int, int>> handle(aux.arc_count());
  for (int a = 0; a < aux.arc_count(); ++a) {
    handle[a] = flow.add_arc(2 * aux.arc(a).from + 1, 2 * aux.arc(a).to, kUnbounded);
  }
  for (Vertex v = 0; v < aux.original_count(); ++v) {
    flow.add_arc(2 * v, 2 * v + 1, degree_cap(lp.out_flow(g, v)));
  }
  for (EdgeId e = 0; e < aux.edge_count(); ++e) {
    flow.add_arc(2 * aux.out_node(e), 2 * aux.out_node(e) + 1, kUnbounded);
    flow.add_arc(2 * aux.in_node(e), 2 * aux.in_node(e) + 1, kUnbounded);
  }
  for (int i = 0; i < aux.part_count(); ++i) {
    flow.add_arc(source, 2 * aux.a_node(i) + 1, 1);
    flow.add_arc(2 * aux.a_node(i), sink, 1);
  }
  const std::int64_t routed = flow.run(source, sink);
  if (routed != aux.part_count()) {
    throw Error(Errc::NoFeasibleCirculation, "routed " + std::to_string(routed) + " of " +
                                                 std::to_string(aux.part_count()) + " A-units");
  }
  IntegralCirculation y(aux.arc_count());
  for (int a = 0; a < aux.arc_count(); ++a) y[a] = flow.flow_on(handle[a]);
  return y;
}

EdgeMultiset assemble(const Instance& g, const AuxGraph& aux, const IntegralCirculation& y) {
  EdgeMultiset f;
  const int k = aux.part_count();
  std::vector<Vertex> entered(k, -1);  // u: head of the unit flowing into A_i
  std::vector<Vertex> left(k, -1);     // v: tail of the unit leaving A_i
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    f.add(e, y[aux.middle_arc(e)]);
    if (aux.a_in_arc(e) >= 0 && y[aux.a_in_arc(e)] > 0) {
      const int i = aux.part_of(g.edge(e).head);
      if (entered[i] >= 0 || y[aux.a_in_arc(e)] != 1) {
        throw Error(Errc::InvariantBreach, "A_" + std::to_string(i) + " inflow is not a single unit");
      }
      entered[i] = g.edge(e).head;
    }
    if (aux.a_out_arc(e) >= 0 && y[aux.a_out_arc(e)] > 0) {
      const int i = aux.part_of(g.edge(e).tail);
      if (left[i] >= 0 || y[aux.a_out_arc(e)] != 1) {
        throw Error(Errc::InvariantBreach, "A_" + std::to_string(i) + " outflow is not a single unit");
      }
      left[i] = g.edge(e).tail;
    }
  }
  for (int i = 0; i < k; ++i) {
    if (entered[i] < 0 || left[i] < 0) {
      throw Error(Errc::InvariantBreach, "A_" + std::to_string(i) + " carries no flow");
    }
    if (entered[i] == left[i]) continue;
    std::vector<bool> mask(g.vertex_count(), false);
    for (Vertex v : aux.partition().parts[i]) mask[v] = true;
    Path path;
    try {
      path = shortest_path(g, entered[i], left[i], &mask);
    } catch (const Error& err) {
      if (err.code() != Errc::Unreachable) throw;
      throw Error(Errc::RebalancePathMissing, "part " + std::to_string(i) + ": " + err.what());
    }
    for (EdgeId e : path.edges) f.add(e);
  }
  return f;
}

LcCheck check_local_connectivity(const Instance& g, const LpSolution& lp,
                                 const Partition& partition, const EdgeMultiset& f, double alpha,
                                 double tol) {
  LcCheck check;
  const int n = g.vertex_count();
  const auto owner = partition.part_of(n);
  const auto out = out_degrees(g, f);
  check.balanced = out == in_degrees(g, f);

  std::vector<bool> crossed(partition.size(), false);
  for (const auto& [e, c] : f) {
    if (owner[g.edge(e).tail] != owner[g.edge(e).head]) crossed[owner[g.edge(e).tail]] = true;
  }
  check.crosses_every_part = std::all_of(crossed.begin(), crossed.end(), [](bool b) { return b; });

  check.degree_bound = true;
  for (Vertex v = 0; v < n; ++v) {
    if (out[v] > degree_cap(lp.out_flow(g, v)) + 1) check.degree_bound = false;
  }

  check.light = true;
  for (const auto& comp : components(g, f).components) {
    if (comp.edges.empty()) continue;
    const double w = weight_of(g, comp.edges);
    const double lb = lb_of(lp, comp.vertices);
    if (w > alpha * lb + tol) check.light = false;
    const double ratio = lb > 0.0 ? w / lb : (w > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    check.max_ratio = std::max(check.max_ratio, ratio);
  }
  return check;
}

EdgeMultiset solve_lc(const Instance& g, const LpSolution& lp, const Partition& partition) {
  const AuxGraph aux = build_aux(g, partition);
  const auto witness = fractional_circulation(g, aux, lp);
  const double residual = conservation_residual(aux, witness);
  if (residual > 1e-9) {
    throw Error(Errc::InvariantBreach, "fractional circulation residual " + std::to_string(residual));
  }
  const auto y = integral_circulation(g, aux, lp);
  EdgeMultiset f = assemble(g, aux, y);

  const LcCheck check = check_local_connectivity(g, lp, partition, f);
  if (!check.balanced) throw Error(Errc::InvariantBreach, "local-connectivity output not Eulerian");
  if (!check.crosses_every_part) throw Error(Errc::InvariantBreach, "a part has no outgoing F-edge");
  if (!check.degree_bound) throw Error(Errc::InvariantBreach, "degree bound exceeded");
  if (!check.light) {
    throw Error(Errc::LightnessBreach, "component ratio " + std::to_string(check.max_ratio) + " > 3");
  }
  return f;
}

}  // namespace nwatsp
