#pragma once

// Shared test graphs and an independent random-graph source (std::mt19937,
// deliberately not the library RNG).

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fpseed/generators.hpp"
#include "fpseed/graph.hpp"

namespace testsupport {

// Four nodes a..d with edges a-b, a-c, b-c, c-d; degrees (2,2,3,1).
inline fpseed::Graph four_node_example() {
  auto [g, report] = fpseed::build_graph({{"a", "b"}, {"a", "c"}, {"b", "c"}, {"c", "d"}});
  (void)report;
  return std::move(g);
}

inline fpseed::Graph star(std::size_t n) {
  std::vector<std::pair<fpseed::NodeId, fpseed::NodeId>> edges;
  for (fpseed::NodeId i = 1; i < n; ++i) edges.emplace_back(0, i);
  return fpseed::Graph::from_edges(n, edges);
}

inline fpseed::Graph ring(std::size_t n) {
  std::vector<std::pair<fpseed::NodeId, fpseed::NodeId>> edges;
  for (fpseed::NodeId i = 0; i < n; ++i)
    edges.emplace_back(i, static_cast<fpseed::NodeId>((i + 1) % n));
  return fpseed::Graph::from_edges(n, edges);
}

inline fpseed::Graph path(std::size_t n) {
  std::vector<std::pair<fpseed::NodeId, fpseed::NodeId>> edges;
  for (fpseed::NodeId i = 0; i + 1 < n; ++i)
    edges.emplace_back(i, static_cast<fpseed::NodeId>(i + 1));
  return fpseed::Graph::from_edges(n, edges);
}

inline fpseed::Graph complete(std::size_t n) {
  std::vector<std::pair<fpseed::NodeId, fpseed::NodeId>> edges;
  for (fpseed::NodeId i = 0; i < n; ++i)
    for (fpseed::NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return fpseed::Graph::from_edges(n, edges);
}

// Two triangles 0-1-2 and 3-4-5 plus the detached edge 6-7.
inline fpseed::Graph two_triangles_and_pendant_edge() {
  return fpseed::Graph::from_edges(
      8, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {6, 7}});
}

// Uniform random simple graph with no isolated nodes (pendant edges are
// attached to fix any). Independent of the library generators.
inline fpseed::Graph random_graph(std::mt19937& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<fpseed::NodeId, fpseed::NodeId>> edges;
  for (fpseed::NodeId i = 0; i < n; ++i)
    for (fpseed::NodeId j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  std::vector<std::size_t> deg(n, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  for (fpseed::NodeId i = 0; i < n; ++i) {
    if (deg[i] == 0) {
      const auto j = static_cast<fpseed::NodeId>((i + 1) % n);
      edges.emplace_back(i, j);
      ++deg[i];
      ++deg[j];
    }
  }
  return fpseed::Graph::from_edges(n, edges);
}

inline bool is_connected(const fpseed::Graph& g) {
  if (g.node_count() == 0) return true;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<fpseed::NodeId> stack{0};
  seen[0] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    ++count;
    for (auto w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return count == g.node_count();
}

// Mixed family corpus used by the identity property tests. Graphs that
// collapse below 3 nodes or 2 edges after isolated-node pruning are dropped.
inline std::vector<fpseed::Graph> generated_corpus(std::size_t per_family, std::size_t max_n,
                                                   std::uint64_t seed_base) {
  std::vector<fpseed::Graph> graphs;
  auto keep = [&](fpseed::Graph g) {
    if (g.node_count() >= 3 && g.edge_count() >= 2) graphs.push_back(std::move(g));
  };
  for (std::size_t i = 0; i < per_family; ++i) {
    fpseed::GenSpec er;
    er.family = fpseed::Family::erdos_renyi;
    er.n = 20 + (i * 37) % max_n;
    er.p_edge = 0.04 + 0.3 * static_cast<double>(i % 7) / 7.0;
    er.rng_seed = seed_base + i;
    keep(fpseed::generate(er).graph);

    fpseed::GenSpec sf;
    sf.family = fpseed::Family::scale_free;
    sf.n = 20 + (i * 53) % max_n;
    sf.gamma = 1.5 + static_cast<double>(i % 10) / 2.0;
    sf.m_edges = 2 * sf.n;
    sf.rng_seed = seed_base + 1000 + i;
    keep(fpseed::generate(sf).graph);

    fpseed::GenSpec sw;
    sw.family = fpseed::Family::small_world;
    sw.n = 20 + (i * 41) % max_n;
    sw.k_neighbors = 4;
    sw.p_rewire = 0.05 + 0.9 * static_cast<double>(i % 5) / 5.0;
    sw.rng_seed = seed_base + 2000 + i;
    keep(fpseed::generate(sw).graph);
  }
  return graphs;
}

} // namespace testsupport
