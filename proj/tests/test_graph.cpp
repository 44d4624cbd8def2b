#include "doctest.h"

#include <numeric>
#include <random>

#include "circlekit/coloring.hpp"
#include "circlekit/errors.hpp"
#include "circlekit/graph.hpp"
#include "oracles.hpp"

using namespace circlekit;
using namespace circlekit::graph;

namespace {

Graph cycle(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph petersen() {
  Graph g(10);
  for (std::size_t i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

bool is_proper(const Graph& g, const Coloring& c) {
  for (const auto& [u, v] : g.edges())
    if (c[u] == c[v]) return false;
  return true;
}

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("graph basics") {
    Graph g(3);
    g.add_edge(2, 0);
    g.add_edge(0, 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(0, 2));
    CHECK(g.edges() == std::vector<Edge>{{0, 2}});
    CHECK_THROWS(g.add_edge(1, 1));
  }

  TEST_CASE("tangency and theta graphs") {
    const std::vector<geom::Circle> tri{{0, 0, 1}, {2, 0, 1}, {1, Scalar(3, 4), Scalar(1, 4)}};
    CHECK(tangency_graph(tri, true) == complete(3));
    const std::vector<geom::Circle> apart{{0, 0, 1}, {5, 0, 1}};
    CHECK(tangency_graph(apart, true).edge_count() == 0);
    const std::vector<geom::Circle> chain{{0, 0, 1}, {2, 0, 1}, {4, 0, 1}};
    CHECK(tangency_graph(chain, true).edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    const std::vector<geom::Circle> nested{{1, 0, 2}, {0, 0, 1}};
    CHECK(tangency_graph(nested, true).edge_count() == 1);
    CHECK(tangency_graph(nested, false).edge_count() == 0);
    const std::vector<geom::Circle> ortho{{0, 0, 1}, {1, 1, 1}};
    CHECK(theta_graph(ortho, geom::CosAngle::right()).edge_count() == 1);
    CHECK(theta_graph(ortho, geom::CosAngle::tangency()).edge_count() == 0);
  }

  TEST_CASE("girth examples") {
    CHECK(girth(cycle(5)) == 5u);
    Graph tree(5);
    for (std::size_t i = 1; i < 5; ++i) tree.add_edge(0, i);
    CHECK_FALSE(girth(tree));
    auto k3 = complete(3);
    Graph pendant(4);
    for (const auto& [u, v] : k3.edges()) pendant.add_edge(u, v);
    pendant.add_edge(2, 3);
    CHECK(girth(pendant) == 3u);
    CHECK(girth(petersen()) == 5u);
  }

  TEST_CASE("colorability examples") {
    CHECK_FALSE(is_k_colorable(complete(4), 3).colorable());
    const auto c5 = is_k_colorable(cycle(5), 3);
    REQUIRE(c5.colorable());
    CHECK(is_proper(cycle(5), *c5.coloring()));
    const auto empty = is_k_colorable(Graph(4), 1);
    REQUIRE(empty.colorable());
    CHECK(*empty.coloring() == Coloring(4, 0));
  }

  TEST_CASE("chromatic number examples") {
    CHECK(chromatic_number(cycle(7)).value() == 3);
    CHECK(chromatic_number(cycle(7)).exact);
    // Bipartite double cover of K_4.
    Graph cover(8);
    for (const auto& [u, v] : complete(4).edges()) {
      cover.add_edge(u, v + 4);
      cover.add_edge(v, u + 4);
    }
    CHECK(chromatic_number(cover).value() == 2);
    const auto p = chromatic_number(petersen());
    CHECK(p.value() == 3);
    REQUIRE(p.below);
    CHECK_FALSE(p.below->colorable());
    CHECK(p.below->colors() == 2);
    CHECK(is_proper(petersen(), p.coloring));
  }

  TEST_CASE("witnesses are validated and traces deterministic") {
    CHECK_THROWS_AS(ColoringWitness::proper(complete(2), 2, {0, 0}), VerificationFailed);
    CHECK_THROWS_AS(ColoringWitness::proper(complete(2), 2, {0, 2}), VerificationFailed);
    const auto a = is_k_colorable(petersen(), 2);
    const auto b = is_k_colorable(petersen(), 2);
    CHECK(a.trace() == b.trace());
    CHECK(a.trace().nodes > 0);
  }

  TEST_CASE("budget exhaustion is reported") {
    CHECK_THROWS_AS(is_k_colorable(complete(12), 11, SearchBudget{5}), BudgetExceeded);
    // The clique settles K12 even when no search fits in the budget.
    const auto r = chromatic_number(complete(12), SearchBudget{5});
    CHECK(r.exact);
    CHECK(r.lower == 12);
    CHECK(r.upper == 12);
    CHECK_FALSE(r.below);
    const auto c7 = chromatic_number(cycle(7), SearchBudget{0});
    CHECK_FALSE(c7.exact);
    CHECK(c7.lower == 2);
    CHECK(c7.upper == 3);
  }

  TEST_CASE("chromatic number matches partition brute force") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + rng() % 9;
      const auto edges = oracle::random_graph(rng, n, 0.2 + 0.1 * (trial % 7));
      const auto r = chromatic_number(Graph(n, edges));
      CHECK(r.exact);
      CHECK(r.value() == oracle::chromatic_number(n, edges));
    }
  }

  TEST_CASE("girth matches edge-deletion brute force") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 1 + rng() % 12;
      const auto edges = oracle::random_graph(rng, n, 0.1 + 0.05 * (trial % 6));
      CHECK(girth(Graph(n, edges)) == oracle::girth(n, edges));
    }
  }

  TEST_CASE("adding an edge never raises girth or lowers chi") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 3 + rng() % 7;
      auto edges = oracle::random_graph(rng, n, 0.3);
      const Graph before(n, edges);
      std::size_t u = rng() % n, v = rng() % n;
      if (u == v) continue;
      edges.emplace_back(std::min(u, v), std::max(u, v));
      const Graph after(n, edges);
      const auto gb = girth(before), ga = girth(after);
      if (gb) CHECK((ga && *ga <= *gb));
      CHECK(chromatic_number(after).value() >= chromatic_number(before).value());
    }
  }

  TEST_CASE("colorability is invariant under relabeling") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 2 + rng() % 9;
      const auto edges = oracle::random_graph(rng, n, 0.45);
      std::vector<std::size_t> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      oracle::Edges relabeled;
      for (const auto& [a, b] : edges) relabeled.emplace_back(perm[a], perm[b]);
      for (int k = 1; k <= 4; ++k)
        CHECK(is_k_colorable(Graph(n, edges), k).colorable() == is_k_colorable(Graph(n, relabeled), k).colorable());
    }
  }

  TEST_CASE("avoiding colorings of hypergraphs match exhaustive listing") {
    std::mt19937_64 rng(505);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t n = 3 + rng() % 7;
      std::vector<Hyperedge> edges;
      const std::size_t count = 1 + rng() % 12;
      for (std::size_t e = 0; e < count; ++e) {
        Hyperedge h;
        for (std::size_t v = 0; v < n; ++v)
          if (rng() % 3 == 0) h.push_back(v);
        if (h.size() >= 2) edges.push_back(h);
      }
      const int k = 2 + static_cast<int>(rng() % 2);
      const auto found = find_avoiding_coloring(n, edges, k);
      const bool all_hit = oracle::every_coloring_hits(n, edges, k);
      CHECK(found.coloring.has_value() == !all_hit);
      if (found.coloring) CHECK_FALSE(has_monochromatic_edge(edges, *found.coloring));
    }
  }
}
