#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "fpseed/graph.hpp"
#include "support/fixtures.hpp"

using namespace fpseed;

TEST_CASE("build_graph maps tokens to dense indices in first-appearance order") {
  auto [g, report] = build_graph({{"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "d"}});
  REQUIRE(g.node_count() == 4);
  REQUIRE(g.edge_count() == 4);
  REQUIRE(g.degree(0) == 2); // a
  REQUIRE(g.degree(1) == 2); // b
  REQUIRE(g.degree(2) == 3); // c
  REQUIRE(g.degree(3) == 1); // d
  REQUIRE(g.label(2) == "c");
  REQUIRE(report.edges_kept == 4);
  REQUIRE(report.self_loops_dropped == 0);
  REQUIRE(report.duplicates_merged == 0);
}

TEST_CASE("self loops are dropped and counted") {
  auto [g, report] = build_graph({{"a", "a"}, {"a", "b"}});
  REQUIRE(g.node_count() == 2);
  REQUIRE(g.edge_count() == 1);
  REQUIRE(report.self_loops_dropped == 1);
  REQUIRE(report.edges_kept == 1);
}

TEST_CASE("duplicate undirected edges are merged and counted") {
  auto [g, report] = build_graph({{"a", "b"}, {"b", "a"}, {"a", "b"}});
  REQUIRE(g.edge_count() == 1);
  REQUIRE(report.duplicates_merged == 2);
  REQUIRE(report.edges_kept == 1);
}

TEST_CASE("empty input is rejected") {
  REQUIRE_THROWS_WITH(build_graph({}), "empty graph");
}

TEST_CASE("explicit isolated nodes are representable with degree 0") {
  auto [g, report] = build_graph({{"a", "b"}}, {"z"});
  REQUIRE(g.node_count() == 3);
  REQUIRE(g.degree(2) == 0);
  REQUIRE(g.label(2) == "z");
  REQUIRE(report.node_count == 3);
}

TEST_CASE("degree is bounds-checked") {
  auto g = testsupport::star(5);
  REQUIRE(g.degree(0) == 4);
  REQUIRE_THROWS_AS(g.degree(5), std::out_of_range);
}

TEST_CASE("remove_nodes deletes incident edges and reindexes densely") {
  auto g = testsupport::four_node_example();
  const Graph h = g.remove_nodes(std::vector<NodeId>{2}); // remove c
  REQUIRE(h.node_count() == 3);
  REQUIRE(h.edge_count() == 1);
  REQUIRE(h.has_edge(0, 1)); // a-b survives
  REQUIRE(h.label(0) == "a");
  REQUIRE(h.label(1) == "b");
  REQUIRE(h.label(2) == "d");
  REQUIRE(h.degree(2) == 0);
}

TEST_CASE("removing every node yields the empty graph") {
  auto g = testsupport::four_node_example();
  const Graph h = g.remove_nodes(std::vector<NodeId>{0, 1, 2, 3});
  REQUIRE(h.node_count() == 0);
  REQUIRE(h.edge_count() == 0);
}

TEST_CASE("removing nothing preserves the graph") {
  auto g = testsupport::four_node_example();
  const Graph h = g.remove_nodes(std::vector<NodeId>{});
  REQUIRE(h.node_count() == g.node_count());
  REQUIRE(h.undirected_edges() == g.undirected_edges());
  REQUIRE(h.label(3) == "d");
}

TEST_CASE("remove_nodes changes degrees only through victim adjacency") {
  std::mt19937 rng(991);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testsupport::random_graph(rng, 40, 0.15);
    std::vector<NodeId> victims{3, 17, 28};
    std::set<NodeId> victim_set(victims.begin(), victims.end());
    const Graph h = g.remove_nodes(victims);

    std::vector<NodeId> survivors;
    for (NodeId i = 0; i < g.node_count(); ++i)
      if (!victim_set.count(i)) survivors.push_back(i);
    REQUIRE(h.node_count() == survivors.size());
    for (std::size_t new_id = 0; new_id < survivors.size(); ++new_id) {
      const NodeId old_id = survivors[new_id];
      std::size_t victim_neighbors = 0;
      for (NodeId j : g.neighbors(old_id)) victim_neighbors += victim_set.count(j);
      REQUIRE(h.degree(static_cast<NodeId>(new_id)) == g.degree(old_id) - victim_neighbors);
    }
  }
}

TEST_CASE("directed edge view yields both orientations of every edge") {
  auto g = testsupport::four_node_example();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (auto e : g.directed_edges()) pairs.push_back(e);
  REQUIRE(pairs.size() == 8);
  REQUIRE(pairs.size() == g.directed_edge_count());
  for (auto [i, j] : pairs) REQUIRE(g.has_edge(i, j));

  const Graph single = Graph::from_edges(2, {{0, 1}});
  std::vector<std::pair<NodeId, NodeId>> sp;
  for (auto e : single.directed_edges()) sp.push_back(e);
  REQUIRE(sp == std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {1, 0}});

  const Graph empty = Graph::from_edges(3, {});
  REQUIRE(empty.directed_edges().begin() == empty.directed_edges().end());
}

TEST_CASE("canonicalization invariants hold on dirty random input") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> node(0, 14);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<std::string, std::string>> edges;
    const int len = 1 + static_cast<int>(rng() % 60);
    for (int e = 0; e < len; ++e)
      edges.emplace_back(std::to_string(node(rng)), std::to_string(node(rng)));
    auto [g, report] = build_graph(edges);

    REQUIRE(report.edges_kept + report.duplicates_merged + report.self_loops_dropped ==
            edges.size());
    std::size_t degree_total = 0;
    for (NodeId i = 0; i < g.node_count(); ++i) {
      degree_total += g.degree(i);
      NodeId prev = 0;
      bool first = true;
      for (NodeId j : g.neighbors(i)) {
        REQUIRE(j != i);                        // no self loops
        if (!first) REQUIRE(j > prev);          // sorted, no duplicates
        REQUIRE(g.has_edge(j, i));              // symmetry
        prev = j;
        first = false;
      }
    }
    REQUIRE(degree_total == 2 * g.edge_count());
  }
}
