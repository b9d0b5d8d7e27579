// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "nwatsp/held_karp.hpp"
#include "nwatsp/local_connectivity.hpp"
#include "oracles.hpp"

using namespace nwatsp;

namespace {

Partition singletons(int n) {
  Partition p;
  for (int v = 0; v < n; ++v) p.parts.push_back({v});
  return p;
}

}  // namespace

TEST_CASE("auxiliary graph sizes") {
  const auto c4 = fixture::c4();
  const AuxGraph a(c4, singletons(4));
  CHECK(a.vertex_count() == 16);
  CHECK(a.arc_count() == 20);
  const auto d = fixture::digon(2, 3);
  const AuxGraph b(d, singletons(2));
  CHECK(b.vertex_count() == 8);
  CHECK(b.arc_count() == 10);
}

TEST_CASE("partition validation") {
  const auto d = fixture::digon(2, 3);
  CHECK_THROWS_AS(validate_partition(d, Partition{{{0, 1}}}), Error);
  try {
    validate_partition(d, Partition{{{0, 1}}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SinglePartError);
  }
  const auto c4 = fixture::c4();
  try {
    validate_partition(c4, Partition{{{0, 1}, {2, 3}}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PartitionNotStronglyConnected);
  }
  try {
    validate_partition(c4, Partition{{{0, 1}, {1, 2, 3}}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidPartition);
  }
}

TEST_CASE("fractional witness on C4 singletons") {
  const auto g = fixture::c4();
  const auto lp = solve_held_karp(g);
  const AuxGraph a(g, singletons(4));
  const auto y = fractional_circulation(g, a, lp);
  for (EdgeId e = 0; e < 4; ++e) {
    CHECK(y[a.middle_arc(e)] == doctest::Approx(1.0));
    CHECK(y[a.a_out_arc(e)] == doctest::Approx(1.0));
    CHECK(y[a.tail_arc(e)] == doctest::Approx(0.0));
    CHECK(y[a.a_in_arc(e)] == doctest::Approx(1.0));
    CHECK(y[a.head_arc(e)] == doctest::Approx(0.0));
  }
  const auto yi = integral_circulation(g, a, lp);
  for (int arc = 0; arc < a.arc_count(); ++arc) CHECK(static_cast<double>(yi[arc]) == doctest::Approx(y[arc]));
}

TEST_CASE("fractional witness on the digon") {
  const auto g = fixture::digon(2, 3);
  const auto lp = solve_held_karp(g);
  const AuxGraph a(g, singletons(2));
  const auto y = fractional_circulation(g, a, lp);
  for (int i = 0; i < 2; ++i) CHECK(throughput(a, y, a.a_node(i)) == doctest::Approx(1.0));
  CHECK(conservation_residual(a, y) < 1e-9);
  const auto yi = integral_circulation(g, a, lp);
  CHECK(yi[a.middle_arc(0)] == 1);
  CHECK(yi[a.middle_arc(1)] == 1);
}

TEST_CASE("bidirected square, two parts: witness conserves flow") {
  const auto g = fixture::bidirected_complete({1, 1, 1, 1});
  const Partition p{{{0, 1}, {2, 3}}};
  const auto lp = solve_held_karp(g);
  const AuxGraph a(g, p);
  const auto y = fractional_circulation(g, a, lp);
  CHECK(conservation_residual(a, y) < 1e-9);
  for (int i = 0; i < 2; ++i) CHECK(throughput(a, y, a.a_node(i)) == doctest::Approx(1.0));
}

TEST_CASE("bidirected K4 f=(1,1,2,2): LC solution properties") {
  const auto g = fixture::bidirected_complete({1, 1, 2, 2});
  const Partition p{{{0, 1}, {2, 3}}};
  const auto lp = solve_held_karp(g);
  const AuxGraph a(g, p);
  const auto y = integral_circulation(g, a, lp);
  for (Vertex v = 0; v < 4; ++v) {
    std::int64_t out = 0;
    for (EdgeId e : g.out_edges(v)) out += y[a.tail_arc(e)];
    CHECK(out <= degree_cap(lp.out_flow(g, v)));
  }
  for (int i = 0; i < 2; ++i) {
    std::int64_t through = 0;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
      if (a.a_out_arc(e) >= 0 && a.part_of(g.edge(e).tail) == i) through += y[a.a_out_arc(e)];
    CHECK(through == 1);
  }
  const auto f = solve_lc(g, lp, p);
  const auto v = oracle::check_lc(g, lp.x, p, f);
  CHECK(v.balanced);
  CHECK(v.crosses);
  CHECK(v.degree);
  CHECK(v.light);
}

TEST_CASE("C4 and digon singletons give the whole cycle") {
  const auto c4 = fixture::c4();
  const auto f = solve_lc(c4, solve_held_karp(c4), singletons(4));
  CHECK(f == fixture::all_edges(c4));
  const auto check = check_local_connectivity(c4, solve_held_karp(c4), singletons(4), f);
  CHECK(check.max_ratio == doctest::Approx(1.0));
  const auto d = fixture::digon(2, 3);
  CHECK(solve_lc(d, solve_held_karp(d), singletons(2)) == fixture::all_edges(d));
}

TEST_CASE("degree cap rounding") {
  CHECK(degree_cap(1.0) == 1);
  CHECK(degree_cap(1.0 + 1e-9) == 1);
  CHECK(degree_cap(1.2) == 2);
  CHECK(degree_cap(2.0) == 2);
}

TEST_CASE("randomized sweep: every output is 3-light") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto g = oracle::ear_instance(6 + static_cast<int>(seed % 10), seed);
    const auto lp = solve_held_karp(g);
    const auto p = oracle::random_partition(g, seed * 31);
    CAPTURE(seed);
    REQUIRE_NOTHROW(validate_partition(g, p));
    const auto f = solve_lc(g, lp, p);
    const auto v = oracle::check_lc(g, lp.x, p, f);
    CHECK(v.balanced);
    CHECK(v.crosses);
    CHECK(v.degree);
    CHECK(v.light);
    ++checked;
  }
  CHECK(checked == 50);
}
