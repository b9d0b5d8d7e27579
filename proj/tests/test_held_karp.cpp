// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "nwatsp/harness.hpp"
#include "nwatsp/held_karp.hpp"
#include "oracles.hpp"

using namespace nwatsp;

TEST_CASE("C4: value 4, x = 1, lb = 1") {
  const auto lp = solve_held_karp(fixture::c4());
  CHECK(lp.value == doctest::Approx(4.0));
  for (double x : lp.x) CHECK(x == doctest::Approx(1.0));
  for (double l : lp.lb) CHECK(l == doctest::Approx(1.0));
}

TEST_CASE("digon f=(2,3): value 5") {
  const auto lp = solve_held_karp(fixture::digon(2, 3));
  CHECK(lp.value == doctest::Approx(5.0));
  CHECK(lp.x[0] == doctest::Approx(1.0));
  CHECK(lp.x[1] == doctest::Approx(1.0));
  CHECK(lp.lb[0] == doctest::Approx(2.0));
  CHECK(lp.lb[1] == doctest::Approx(3.0));
}

TEST_CASE("bidirected complete n=5, seed 7: matches an all-cuts LP") {
  GeneratorSpec spec;
  spec.kind = InstanceKind::BidirectedComplete;
  spec.n = 5;
  spec.seed = 7;
  const auto g = generate(spec);
  const auto lp = solve_held_karp(g);
  CHECK(lp.value == doctest::Approx(oracle::held_karp_all_cuts(g)).epsilon(1e-6));
}

TEST_CASE("ear instances: cutting planes match the all-cuts LP") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto g = oracle::ear_instance(7, seed);
    const auto lp = solve_held_karp(g);
    CAPTURE(seed);
    CHECK(lp.value == doctest::Approx(oracle::held_karp_all_cuts(g)).epsilon(1e-6));
    CHECK(oracle::brute_min_cut(g, lp.x) >= 1.0 - 1e-6);
    for (int v = 0; v < g.vertex_count(); ++v) {
      double out = 0, in = 0;
      for (EdgeId e : g.out_edges(v)) out += lp.x[e];
      for (EdgeId e : g.in_edges(v)) in += lp.x[e];
      CHECK(out == doctest::Approx(in));
      CHECK(lp.lb[v] == doctest::Approx(g.vertex_weight(v) * out));
    }
  }
}

TEST_CASE("separation") {
  const auto g = fixture::c4();
  const auto half = separate(g, std::vector<double>(4, 0.5));
  REQUIRE(half.has_value());
  CHECK(half->value == doctest::Approx(0.5));
  CHECK(!separate(g, std::vector<double>(4, 1.0)).has_value());
}

TEST_CASE("separation finds the minimum cut over all 62 subsets") {
  std::mt19937_64 rng(5);
  auto unif = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const auto g = fixture::bidirected_complete({1, 2, 3, 4, 5, 6});
  for (int trial = 0; trial < 50; ++trial) {
    // Perturb the feasible point x = 1/(n-1) on every edge.
    std::vector<double> x(g.edge_count());
    for (double& v : x) v = 0.2 * (0.3 + 1.4 * unif());
    const double brute = oracle::brute_min_cut(g, x);
    const auto cut = separate(g, x);
    if (brute < 1.0 - 1e-7) {
      REQUIRE(cut.has_value());
      CHECK(cut->value == doctest::Approx(brute));
      CHECK(cut_value(g, x, cut->vertices) == doctest::Approx(brute));
    } else {
      CHECK(!cut.has_value());
    }
  }
}

TEST_CASE("lb of vertex sets") {
  const auto d = solve_held_karp(fixture::digon(2, 3));
  CHECK(lb_of(d, std::vector<Vertex>{0, 1}) == doctest::Approx(5.0));
  CHECK(lb_of(d, std::vector<Vertex>{}) == 0.0);
  const auto c = solve_held_karp(fixture::c4());
  CHECK(lb_of(c, std::vector<Vertex>{0, 2}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(lb_of(c, std::vector<Vertex>{9}), Error);
}
