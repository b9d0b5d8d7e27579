// SPDX-License-Identifier: Apache-2.0
#include "nwatsp/exact.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace nwatsp {

ExactTour exact_atsp(const Instance& g) {
  const int n = g.vertex_count();
  if (n > kExactMaxVertices) {
    throw Error(Errc::TooLarge, "exact solver supports n <= " + std::to_string(kExactMaxVertices) +
                                    ", got " + std::to_string(n));
  }
  if (n < 2) throw Error(Errc::TooFewVertices, "need n >= 2");
  const auto& d = g.closure();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // best[S][v]: cheapest path from 0 through exactly the vertices of S (which
  // excludes 0 and contains v) ending at v. Bits index vertices 1..n-1.
  const int rest = n - 1;
  const std::size_t states = std::size_t{1} << rest;
  std::vector<double> best(states * rest, kInf);
  std::vector<int> parent(states * rest, -1);
  auto at = [&](std::size_t s, int v) { return s * rest + (v - 1); };

  for (int v = 1; v < n; ++v) best[at(std::size_t{1} << (v - 1), v)] = d(0, v);
  for (std::size_t s = 1; s < states; ++s) {
    for (int v = 1; v < n; ++v) {
      const std::size_t bit = std::size_t{1} << (v - 1);
      if (!(s & bit)) continue;
      const double base = best[at(s, v)];
      if (base == kInf) continue;
      for (int w = 1; w < n; ++w) {
        const std::size_t wbit = std::size_t{1} << (w - 1);
        if (s & wbit) continue;
        const double cand = base + d(v, w);
        double& slot = best[at(s | wbit, w)];
        if (cand < slot) {
          slot = cand;
          parent[at(s | wbit, w)] = v;
        }
      }
    }
  }

  const std::size_t full = states - 1;
  ExactTour tour;
  tour.weight = kInf;
  int last = -1;
  for (int v = 1; v < n; ++v) {
    const double cand = best[at(full, v)] + d(v, 0);
    if (cand < tour.weight) {
      tour.weight = cand;
      last = v;
    }
  }
  if (last < 0) throw Error(Errc::NotStronglyConnected, "no Hamiltonian cycle in the closure");

  std::vector<Vertex> reversed;
  std::size_t s = full;
  for (int v = last; v > 0;) {
    reversed.push_back(v);
    const int prev = parent[at(s, v)];
    s &= ~(std::size_t{1} << (v - 1));
    v = prev < 0 ? 0 : prev;
  }
  tour.order.push_back(0);
  tour.order.insert(tour.order.end(), reversed.rbegin(), reversed.rend());
  return tour;
}

RelaxationCheck relaxation_check(const Instance& g, const LpSolution& lp) {
  RelaxationCheck check;
  check.lp_value = lp.value;
  check.optimum = exact_atsp(g).weight;
  check.ok = lp.value <= check.optimum + 1e-6;
  return check;
}

}  // namespace nwatsp
