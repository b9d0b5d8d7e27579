// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "nwatsp/graph.hpp"
#include "oracles.hpp"

using namespace nwatsp;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::InvariantBreach;
}

}  // namespace

TEST_CASE("validate accepts strongly connected instances") {
  CHECK_NOTHROW(validate(fixture::c4()));
  CHECK_NOTHROW(validate(fixture::digon(2, 3)));
}

TEST_CASE("validate rejects") {
  CHECK(error_of([] { validate(Instance(2, {1, 1}, {{0, 1}})); }) == Errc::NotStronglyConnected);
  CHECK(error_of([] { validate(Instance(1, {1}, {})); }) == Errc::TooFewVertices);
  CHECK(error_of([] { validate(Instance(2, {1, -1}, {{0, 1}, {1, 0}})); }) == Errc::NegativeWeight);
  CHECK(error_of([] { validate(Instance(2, {1, 1}, {{0, 1}, {1, 0}, {1, 1}})); }) == Errc::SelfLoop);
  CHECK(error_of([] { Instance(2, {1, 1}, {{0, 2}}); }) == Errc::VertexOutOfRange);
  CHECK(error_of([] { Instance(2, {1}, {}); }) == Errc::BadSpec);
}

TEST_CASE("error categories") {
  CHECK(category_of(Errc::NotStronglyConnected) == ErrorCategory::InvalidInput);
  CHECK(category_of(Errc::LightnessBreach) == ErrorCategory::InvariantBreach);
  CHECK(category_of(Errc::Parse) == ErrorCategory::Io);
}

TEST_CASE("closure matches an independent Floyd-Warshall") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = oracle::ear_instance(9, seed);
    const auto d = oracle::apsp(g);
    for (int u = 0; u < 9; ++u)
      for (int v = 0; v < 9; ++v) CHECK(g.closure()(u, v) == doctest::Approx(d[u][v]));
  }
}

TEST_CASE("components") {
  const auto g = fixture::c4();
  SUBCASE("empty set gives singletons") {
    const auto view = components(g, {});
    REQUIRE(view.size() == 4);
    for (int v = 0; v < 4; ++v) CHECK(view.components[v].vertices == std::vector<Vertex>{v});
  }
  SUBCASE("cycle edges give one component") {
    const auto view = components(g, fixture::all_edges(g));
    REQUIRE(view.size() == 1);
    CHECK(view.components[0].vertices == std::vector<Vertex>{0, 1, 2, 3});
  }
  SUBCASE("digon inside a 4-vertex instance") {
    const auto h = fixture::bidirected_complete({1, 1, 1, 1});
    EdgeMultiset d;
    d.add(0);  // (0,1)
    d.add(3);  // (1,0)
    const auto view = components(h, d);
    REQUIRE(view.size() == 3);
    CHECK(view.components[0].vertices == std::vector<Vertex>{0, 1});
    CHECK(view.components[1].vertices == std::vector<Vertex>{2});
    CHECK(view.components[2].vertices == std::vector<Vertex>{3});
    CHECK(view.component_of[1] == 0);
  }
}

TEST_CASE("shortest paths") {
  const auto g = fixture::c4();
  const auto p = shortest_path(g, 0, 2);
  CHECK(p.edges == std::vector<EdgeId>{0, 1});
  CHECK(p.weight == 2.0);
  const auto self = shortest_path(g, 3, 3);
  CHECK(self.edges.empty());
  CHECK(self.weight == 0.0);

  // f = (1,5,1): direct (0,1) costs 1, the detour via 2 costs 2.
  const auto tri = fixture::bidirected_complete({1, 5, 1});
  const auto direct = shortest_path(tri, 0, 1);
  REQUIRE(direct.edges.size() == 1);
  CHECK(tri.edge(direct.edges[0]).tail == 0);
  CHECK(tri.edge(direct.edges[0]).head == 1);
  CHECK(direct.weight == 1.0);

  std::vector<bool> allowed{true, false, true, true};
  CHECK(error_of([&] { shortest_path(g, 0, 2, &allowed); }) == Errc::Unreachable);
  CHECK(error_of([&] { shortest_path(g, 0, 7); }) == Errc::UnknownVertex);
}

TEST_CASE("shortest path weights equal the closure on random instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = oracle::ear_instance(8, seed);
    const auto d = oracle::apsp(g);
    for (int u = 0; u < 8; ++u)
      for (int v = 0; v < 8; ++v) {
        const auto p = shortest_path(g, u, v);
        CHECK(p.weight == doctest::Approx(d[u][v]));
        Vertex at = u;
        double w = 0;
        for (EdgeId e : p.edges) {
          CHECK(g.edge(e).tail == at);
          w += g.weight(e);
          at = g.edge(e).head;
        }
        CHECK(at == v);
        CHECK(w == doctest::Approx(p.weight));
      }
  }
}

TEST_CASE("eulerian circuits") {
  const auto g = fixture::c4();
  const auto c = eulerian_circuit(g, fixture::all_edges(g));
  CHECK(c == std::vector<EdgeId>{0, 1, 2, 3});

  const auto d = fixture::digon(2, 3);
  const auto doubled = fixture::all_edges(d, 2);
  const auto walk = eulerian_circuit(d, doubled);
  CHECK(walk.size() == 4);
  CHECK(oracle::walk_matches(d, walk, doubled));

  // Two triangles sharing vertex 0.
  const Instance eight(5, {1, 1, 1, 1, 1}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
  const auto fig = fixture::all_edges(eight);
  const auto w8 = eulerian_circuit(eight, fig);
  CHECK(w8.size() == 6);
  CHECK(oracle::walk_matches(eight, w8, fig));

  EdgeMultiset unbalanced;
  unbalanced.add(0);
  CHECK(error_of([&] { eulerian_circuit(g, unbalanced); }) == Errc::NotBalanced);
  const Instance two(4, {1, 1, 1, 1}, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  CHECK(error_of([&] { eulerian_circuit(two, fixture::all_edges(two)); }) == Errc::NotConnected);
}

TEST_CASE("shortcutting") {
  const auto g = fixture::c4();
  const auto t = shortcut(g, eulerian_circuit(g, fixture::all_edges(g)));
  CHECK(t.order == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(t.weight == 4.0);

  // Star: 0 <-> 1, 0 <-> 2; walk 0,1,0,2,0.
  const Instance star(3, {1, 2, 3}, {{0, 1}, {1, 0}, {0, 2}, {2, 0}});
  const auto all = fixture::all_edges(star);
  const auto s = shortcut(star, eulerian_circuit(star, all));
  CHECK(s.order == std::vector<Vertex>{0, 1, 2});
  const auto d = oracle::apsp(star);
  CHECK(s.weight == doctest::Approx(d[0][1] + d[1][2] + d[2][0]));
  CHECK(s.weight <= weight_of(star, all) + 1e-9);

  CHECK(error_of([&] { shortcut(star, std::vector<EdgeId>{0, 1}); }) == Errc::VertexMissed);
}

TEST_CASE("edge multiset algebra") {
  EdgeMultiset a;
  a.add(1, 2);
  a.add(3);
  EdgeMultiset b;
  b.add(1);
  b.add(4);
  CHECK((a + b).count(1) == 3);
  CHECK((a + b).size() == 5);
  CHECK(a.intersect(b).count(1) == 1);
  CHECK(a.intersect(b).distinct() == 1);
  CHECK(a.minus(b).count(1) == 1);
  CHECK(a.minus(b).count(3) == 1);
  CHECK(a.minus(b).count(4) == 0);
}
