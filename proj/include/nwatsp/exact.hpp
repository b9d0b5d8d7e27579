// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exact ATSP on the metric closure by subset dynamic programming, for small
// instances. Ground truth for tests and the sweep harness.

#include <vector>

#include "nwatsp/graph.hpp"
#include "nwatsp/held_karp.hpp"

namespace nwatsp {

inline constexpr int kExactMaxVertices = 15;

struct ExactTour {
  double weight = 0.0;
  std::vector<Vertex> order;  // starts at vertex 0
};

// Throws TooLarge for n > kExactMaxVertices.
ExactTour exact_atsp(const Instance& instance);

struct RelaxationCheck {
  bool ok = false;
  double lp_value = 0.0;
  double optimum = 0.0;
};

// ok iff lp.value <= exact optimum + 1e-6.
RelaxationCheck relaxation_check(const Instance& instance, const LpSolution& lp);

}  // namespace nwatsp
