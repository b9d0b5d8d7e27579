// SPDX-License-Identifier: Apache-2.0
#pragma once

// Held-Karp relaxation solved by cutting planes:
//
//   minimize   sum_e x_e w(e)
//   subject to x(out(v)) = x(in(v))   for all v
//              x(out(S)) >= 1         for all nonempty proper S
//              x >= 0
//
// and the per-vertex lower bound lb(v) = sum_{e in out(v)} x_e w(e).

#include <optional>
#include <span>
#include <vector>

#include "nwatsp/graph.hpp"

namespace nwatsp {

struct LpSolution {
  std::vector<double> x;   // per edge id
  double value = 0.0;      // sum_e x_e w(e)
  std::vector<double> lb;  // per vertex
  int rounds = 0;          // simplex re-solves
  int cuts_added = 0;      // non-singleton cuts added by separation

  // x(out(v)).
  double out_flow(const Instance& instance, Vertex v) const;
};

struct Cut {
  std::vector<Vertex> vertices;  // S, ascending
  double value = 0.0;            // x(out(S))
};

struct LpOptions {
  double cut_tol = 1e-7;
  int max_rounds = 20'000;
};

LpSolution solve_held_karp(const Instance& instance, const LpOptions& options = {});

// Most violated out-cut, i.e. the minimum of x(out(S)) over all nonempty
// proper S, if it is below 1 - tol. Uses 2(n-1) max-flows rooted at vertex 0.
std::optional<Cut> separate(const Instance& instance, std::span<const double> x,
                            double tol = 1e-7);

// x(out(S)) for an explicit vertex set.
double cut_value(const Instance& instance, std::span<const double> x, std::span<const Vertex> set);

// Sum of lb over a vertex set. Throws UnknownVertex.
double lb_of(const LpSolution& lp, std::span<const Vertex> set);

}  // namespace nwatsp
