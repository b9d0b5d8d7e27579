// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/held_karp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nwatsp/max_flow.hpp"
#include "nwatsp/simplex.hpp"

namespace nwatsp {

namespace {

constexpr double kFlowEps = 1e-12;

// Minimum cut separating s from t with capacities x; returns the source side.
Cut min_cut(const Instance& g, std::span<const double> x, Vertex s, Vertex t) {
  MaxFlow<double> flow(g.vertex_count(), kFlowEps);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (x[e] > kFlowEps) flow.add_arc(g.edge(e).tail, g.edge(e).head, x[e]);
  }
  flow.run(s, t);
  const auto side = flow.source_side(s);
  Cut cut;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (side[v]) cut.vertices.push_back(v);
  }
  cut.value = cut_value(g, x, cut.vertices);
  return cut;
}

std::vector<std::pair<int, double>> cut_row(const Instance& g, std::span<const Vertex> set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (Vertex v : set) in[v] = true;
  std::vector<std::pair<int, double>> row;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).tail] && !in[g.edge(e).head]) row.emplace_back(e, -1.0);
  }
  return row;
}

}  // namespace

double LpSolution::out_flow(const Instance& g, Vertex v) const {
  double total = 0.0;
  for (EdgeId e : g.out_edges(v)) total += x[e];
  return total;
}

double cut_value(const Instance& g, std::span<const double> x, std::span<const Vertex> set) {
  std::vector<bool> in(g.vertex_count(), false);
  for (Vertex v : set) in[v] = true;
  double total = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).tail] && !in[g.edge(e).head]) total += x[e];
  }
  return total;
}

std::optional<Cut> separate(const Instance& g, std::span<const double> x, double tol) {
  std::optional<Cut> best;
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    for (bool rooted_out : {true, false}) {
      Cut cut = rooted_out ? min_cut(g, x, 0, v) : min_cut(g, x, v, 0);
      if (!best || cut.value < best->value - kWeightTol) best = std::move(cut);
    }
  }
  if (best && best->value < 1.0 - tol) return best;
  return std::nullopt;
}

LpSolution solve_held_karp(const Instance& g, const LpOptions& options) {
  const int n = g.vertex_count();
  const int m = g.edge_count();
  std::vector<double> costs(m);
  for (EdgeId e = 0; e < m; ++e) costs[e] = g.weight(e);
  DualSimplex lp(costs);

  // Conservation as a pair of inequalities, then every singleton cut.
  for (Vertex v = 0; v < n; ++v) {
    std::vector<std::pair<int, double>> row;
    for (EdgeId e : g.out_edges(v)) row.emplace_back(e, 1.0);
    for (EdgeId e : g.in_edges(v)) row.emplace_back(e, -1.0);
    lp.add_row(row, 0.0);
    for (auto& [e, a] : row) a = -a;
    lp.add_row(row, 0.0);
  }
  for (Vertex v = 0; v < n; ++v) {
    const Vertex single[] = {v};
    lp.add_row(cut_row(g, single), -1.0);
  }

  LpSolution sol;
  for (;;) {
    ++sol.rounds;
    if (sol.rounds > options.max_rounds) {
      throw Error(Errc::IterationLimit, "cutting-plane loop exceeded " +
                                            std::to_string(options.max_rounds) + " rounds");
    }
    switch (lp.solve()) {
      case DualSimplex::Status::Optimal: break;
      case DualSimplex::Status::Infeasible:
        throw Error(Errc::Infeasible, "Held-Karp LP reported infeasible");
      case DualSimplex::Status::IterationLimit:
        throw Error(Errc::IterationLimit, "simplex pivot limit");
    }
    sol.x = lp.primal();
    for (double& xe : sol.x) {
      if (std::abs(xe) < 1e-11) xe = 0.0;
    }
    auto cut = separate(g, sol.x, options.cut_tol);
    if (!cut) break;
    lp.add_row(cut_row(g, cut->vertices), -1.0);
    ++sol.cuts_added;
  }

  sol.lb.assign(n, 0.0);
  for (EdgeId e = 0; e < m; ++e) sol.lb[g.edge(e).tail] += sol.x[e] * g.weight(e);
  sol.value = 0.0;
  for (double l : sol.lb) sol.value += l;
  return sol;
}

double lb_of(const LpSolution& lp, std::span<const Vertex> set) {
  double total = 0.0;
  for (Vertex v : set) {
    if (v < 0 || v >= static_cast<int>(lp.lb.size())) {
      throw Error(Errc::UnknownVertex, "vertex " + std::to_string(v));
    }
    total += lp.lb[v];
  }
  return total;
}

}  // namespace nwatsp
