#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "fpseed/graph.hpp"
#include "fpseed/metrics.hpp"
#include "fpseed/rng.hpp"

namespace fpseed {

enum class Family { erdos_renyi, scale_free, small_world, star };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::erdos_renyi: return "erdos_renyi";
    case Family::scale_free: return "scale_free";
    case Family::small_world: return "small_world";
    case Family::star: return "star";
  }
  return "?";
}

inline Family family_from_name(const std::string& s) {
  if (s == "erdos_renyi" || s == "er") return Family::erdos_renyi;
  if (s == "scale_free" || s == "sf") return Family::scale_free;
  if (s == "small_world" || s == "sw") return Family::small_world;
  if (s == "star") return Family::star;
  throw std::invalid_argument("unknown graph family: " + s);
}

struct GenSpec {
  Family family = Family::erdos_renyi;
  std::size_t n = 0;
  double p_edge = 0.0;          // erdos_renyi
  double gamma = 0.0;           // scale_free weight exponent, > 1
  std::size_t m_edges = 0;      // scale_free edge budget
  std::size_t k_neighbors = 0;  // small_world ring degree, even
  double p_rewire = 0.0;        // small_world rewiring probability
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (n < 2) throw std::invalid_argument("generator: n must be >= 2");
    switch (family) {
      case Family::erdos_renyi:
        if (!(p_edge > 0.0 && p_edge <= 1.0))
          throw std::invalid_argument("erdos_renyi: p_edge must be in (0,1]");
        break;
      case Family::scale_free: {
        if (!(gamma > 1.0)) throw std::invalid_argument("scale_free: gamma must be > 1");
        if (m_edges == 0) throw std::invalid_argument("scale_free: m_edges must be >= 1");
        const std::size_t max_edges = n * (n - 1) / 2;
        if (m_edges > max_edges)
          throw std::invalid_argument("scale_free: m_edges exceeds simple-graph capacity");
        break;
      }
      case Family::small_world:
        if (k_neighbors < 2 || k_neighbors % 2 != 0)
          throw std::invalid_argument("small_world: k_neighbors must be even and >= 2");
        if (k_neighbors >= n)
          throw std::invalid_argument("small_world: k_neighbors must be < n");
        if (!(p_rewire >= 0.0 && p_rewire <= 1.0))
          throw std::invalid_argument("small_world: p_rewire must be in [0,1]");
        break;
      case Family::star:
        break;
    }
  }
};

struct Generated {
  Graph graph;
  std::size_t isolated_pruned = 0;
};

namespace detail {

inline std::pair<NodeId, NodeId> norm_edge(NodeId a, NodeId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

inline std::uint64_t pack_edge(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline std::vector<std::pair<NodeId, NodeId>> gen_erdos_renyi(std::size_t n, double p,
                                                              Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (p >= 1.0) {
    edges.reserve(total_pairs);
    for (NodeId i = 0; i < n; ++i)
      for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    return edges;
  }
  // Geometric gaps between successive present pairs; decode linear pair
  // index to (i, j) incrementally since indices only ascend.
  const double log1mp = std::log1p(-p);
  std::uint64_t cursor = 0; // next candidate pair index
  NodeId row = 0;
  std::uint64_t row_start = 0;
  std::uint64_t row_len = n - 1;
  bool first = true;
  for (;;) {
    const double u = rng.uniform_real();
    const auto gap = static_cast<std::uint64_t>(std::floor(std::log1p(-u) / log1mp));
    cursor += first ? gap : gap + 1;
    first = false;
    if (cursor >= total_pairs) break;
    while (cursor >= row_start + row_len) {
      row_start += row_len;
      ++row;
      row_len = n - 1 - row;
    }
    const NodeId j = static_cast<NodeId>(row + 1 + (cursor - row_start));
    edges.emplace_back(row, j);
  }
  return edges;
}

// Static weighted model: node i carries weight (i+1)^(-1/(gamma-1)); edges
// draw both endpoints proportional to weight, rejecting loops and repeats.
inline std::vector<std::pair<NodeId, NodeId>> gen_scale_free(std::size_t n, double gamma,
                                                             std::size_t m_edges, Rng& rng) {
  const double alpha = 1.0 / (gamma - 1.0);
  std::vector<double> cum(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::pow(static_cast<double>(i + 1), -alpha);
    cum[i] = total;
  }
  auto draw = [&]() -> NodeId {
    const double u = rng.uniform_real() * total;
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    return static_cast<NodeId>(std::min<std::size_t>(it - cum.begin(), n - 1));
  };

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(m_edges * 2);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m_edges);
  std::size_t attempts = 0;
  const std::size_t max_attempts = 200 * m_edges + 10000;
  while (edges.size() < m_edges) {
    if (++attempts > max_attempts)
      throw std::invalid_argument(
          "scale_free: could not place requested edges (weights too concentrated)");
    const NodeId a = draw();
    const NodeId b = draw();
    if (a == b) continue;
    if (!seen.insert(pack_edge(a, b)).second) continue;
    edges.emplace_back(a, b);
  }
  return edges;
}

inline std::vector<std::pair<NodeId, NodeId>> gen_small_world(std::size_t n, std::size_t k,
                                                              double p_rewire, Rng& rng) {
  std::vector<std::unordered_set<NodeId>> adj(n);
  auto connect = [&](NodeId a, NodeId b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  auto disconnect = [&](NodeId a, NodeId b) {
    adj[a].erase(b);
    adj[b].erase(a);
  };
  for (std::size_t j = 1; j <= k / 2; ++j)
    for (std::size_t i = 0; i < n; ++i)
      connect(static_cast<NodeId>(i), static_cast<NodeId>((i + j) % n));

  // Rewire the clockwise endpoint of each lattice edge with probability p.
  for (std::size_t j = 1; j <= k / 2; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!rng.bernoulli(p_rewire)) continue;
      const auto a = static_cast<NodeId>(i);
      const auto old_b = static_cast<NodeId>((i + j) % n);
      if (adj[a].size() >= n - 1) continue; // saturated, nowhere to go
      NodeId t;
      do {
        t = static_cast<NodeId>(rng.uniform_below(n));
      } while (t == a || adj[a].count(t));
      disconnect(a, old_b);
      connect(a, t);
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j : adj[i])
      if (j > i) edges.emplace_back(i, j);
  std::sort(edges.begin(), edges.end());
  return edges;
}

inline std::vector<std::pair<NodeId, NodeId>> gen_star(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n - 1);
  for (NodeId i = 1; i < n; ++i) edges.emplace_back(0, i);
  return edges;
}

} // namespace detail

// Deterministic for a fixed spec (including rng_seed). Nodes that end up
// with no edge are pruned and counted, since the degree metrics require
// minimum degree 1.
inline Generated generate(const GenSpec& spec) {
  spec.validate();
  Rng rng(spec.rng_seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  switch (spec.family) {
    case Family::erdos_renyi:
      edges = detail::gen_erdos_renyi(spec.n, spec.p_edge, rng);
      break;
    case Family::scale_free:
      edges = detail::gen_scale_free(spec.n, spec.gamma, spec.m_edges, rng);
      break;
    case Family::small_world:
      edges = detail::gen_small_world(spec.n, spec.k_neighbors, spec.p_rewire, rng);
      break;
    case Family::star:
      edges = detail::gen_star(spec.n);
      break;
  }
  Graph g = Graph::from_edges(spec.n, edges);
  std::vector<NodeId> isolated;
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (g.degree(i) == 0) isolated.push_back(i);
  if (isolated.empty()) return {std::move(g), 0};
  Graph pruned = g.remove_nodes(isolated);
  return {std::move(pruned), isolated.size()};
}

// Swap of two disjoint edges (a,b),(c,d) into (a,d),(b,c). Degrees are
// untouched; the local mean moves by a closed-form amount that is strictly
// positive under the ordering D_a < D_c and D_b < D_d.
struct RewireMove {
  NodeId a = 0, b = 0, c = 0, d = 0;
};

inline void validate_move(const Graph& g, const RewireMove& m) {
  const NodeId ids[4] = {m.a, m.b, m.c, m.d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (ids[i] == ids[j]) throw std::invalid_argument("rewire: nodes not distinct");
  if (!g.has_edge(m.a, m.b) || !g.has_edge(m.c, m.d))
    throw std::invalid_argument("rewire: required edge missing");
  if (g.has_edge(m.a, m.d) || g.has_edge(m.b, m.c))
    throw std::invalid_argument("rewire: replacement edge already present");
}

inline bool satisfies_degree_ordering(const Graph& g, const RewireMove& m) {
  return g.degree(m.b) < g.degree(m.d) && g.degree(m.a) < g.degree(m.c);
}

// Exact local-mean change of applying the move, from the edge form of the
// mean: (1/N) [ (D_d-D_b)(1/D_a-1/D_c) + (D_c-D_a)(1/D_b-1/D_d) ].
inline double rewire_local_mean_delta(const Graph& g, const RewireMove& m) {
  const double da = static_cast<double>(g.degree(m.a));
  const double db = static_cast<double>(g.degree(m.b));
  const double dc = static_cast<double>(g.degree(m.c));
  const double dd = static_cast<double>(g.degree(m.d));
  return ((dd - db) * (1.0 / da - 1.0 / dc) + (dc - da) * (1.0 / db - 1.0 / dd)) /
         static_cast<double>(g.node_count());
}

inline Graph rewire(const Graph& g, const RewireMove& m) {
  validate_move(g, m);
  auto edges = g.undirected_edges();
  for (auto& e : edges) {
    if (e == detail::norm_edge(m.a, m.b)) e = detail::norm_edge(m.a, m.d);
    else if (e == detail::norm_edge(m.c, m.d)) e = detail::norm_edge(m.b, m.c);
  }
  std::vector<std::string> labels;
  if (g.has_labels()) {
    labels.reserve(g.node_count());
    for (NodeId i = 0; i < g.node_count(); ++i) labels.push_back(g.label(i));
  }
  return Graph::from_edges(g.node_count(), edges, std::move(labels));
}

namespace detail {

// The simultaneous relabeling (a,b,c,d) -> (b,a,d,c) describes the same
// swap and the same ordering conditions; keep the lexicographically
// smaller representative.
inline std::tuple<NodeId, NodeId, NodeId, NodeId> canonical_move(const RewireMove& m) {
  const auto t1 = std::make_tuple(m.a, m.b, m.c, m.d);
  const auto t2 = std::make_tuple(m.b, m.a, m.d, m.c);
  return std::min(t1, t2);
}

inline bool try_orient(const Graph& g, NodeId a, NodeId b, NodeId c, NodeId d,
                       RewireMove& out) {
  if (!(g.degree(a) < g.degree(c) && g.degree(b) < g.degree(d))) return false;
  if (g.has_edge(a, d) || g.has_edge(b, c)) return false;
  out = {a, b, c, d};
  return true;
}

} // namespace detail

// Randomly samples pairs of disjoint edges and returns up to max_moves
// distinct moves that satisfy the degree ordering. Empty result means none
// were found within the sampling budget.
inline std::vector<RewireMove> find_rewire_moves(const Graph& g, Rng& rng,
                                                 std::size_t max_moves) {
  std::vector<RewireMove> moves;
  if (max_moves == 0) return moves;
  const auto edges = g.undirected_edges();
  if (edges.size() < 2) return moves;

  std::set<std::tuple<NodeId, NodeId, NodeId, NodeId>> seen;
  const std::size_t budget = std::max<std::size_t>(4096, 64 * max_moves);
  for (std::size_t attempt = 0; attempt < budget && moves.size() < max_moves; ++attempt) {
    const auto& e1 = edges[rng.uniform_below(edges.size())];
    const auto& e2 = edges[rng.uniform_below(edges.size())];
    const NodeId u1 = e1.first, v1 = e1.second, u2 = e2.first, v2 = e2.second;
    if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) continue;

    RewireMove m;
    const bool found = detail::try_orient(g, u1, v1, u2, v2, m) ||
                       detail::try_orient(g, v1, u1, u2, v2, m) ||
                       detail::try_orient(g, u1, v1, v2, u2, m) ||
                       detail::try_orient(g, v1, u1, v2, u2, m) ||
                       detail::try_orient(g, u2, v2, u1, v1, m) ||
                       detail::try_orient(g, v2, u2, u1, v1, m) ||
                       detail::try_orient(g, u2, v2, v1, u1, m) ||
                       detail::try_orient(g, v2, u2, v1, u1, m);
    if (!found) continue;
    if (seen.insert(detail::canonical_move(m)).second) moves.push_back(m);
  }
  return moves;
}

// Erdos-Gallai test on an arbitrary degree list.
inline bool is_graphical(std::vector<std::size_t> degrees) {
  if (degrees.empty()) return false;
  std::sort(degrees.begin(), degrees.end(), std::greater<>());
  const std::size_t n = degrees.size();
  if (degrees[0] >= n) return false;
  std::uint64_t total = 0;
  for (auto d : degrees) total += d;
  if (total % 2 != 0) return false;

  std::vector<std::uint64_t> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + degrees[i];

  std::uint64_t prefix = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    prefix += degrees[k - 1];
    // first index >= k whose degree < k (degrees sorted descending)
    const auto it = std::lower_bound(degrees.begin() + k, degrees.end(), k,
                                     [](std::size_t deg, std::size_t val) { return deg >= val; });
    const std::size_t big = static_cast<std::size_t>(it - degrees.begin()) - k;
    const std::uint64_t tail =
        static_cast<std::uint64_t>(big) * k + suffix[k + big];
    if (prefix > static_cast<std::uint64_t>(k) * (k - 1) + tail) return false;
  }
  return true;
}

struct MaximizeResult {
  Graph graph;
  bool converged = false;
  std::size_t steps = 0;
};

namespace detail {

// Havel-Hakimi realization; deterministic, throws if the sequence fails.
inline std::vector<std::pair<NodeId, NodeId>> realize_degree_sequence(
    const std::vector<std::size_t>& degrees) {
  const std::size_t n = degrees.size();
  std::vector<std::pair<std::size_t, NodeId>> rem(n);
  for (std::size_t i = 0; i < n; ++i) rem[i] = {degrees[i], static_cast<NodeId>(i)};
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (;;) {
    std::sort(rem.begin(), rem.end(), std::greater<>());
    if (rem[0].first == 0) break;
    const auto [d, v] = rem[0];
    if (d >= rem.size()) throw std::invalid_argument("degree sequence is not graphical");
    for (std::size_t t = 1; t <= d; ++t) {
      if (rem[t].first == 0) throw std::invalid_argument("degree sequence is not graphical");
      edges.emplace_back(v, rem[t].second);
      --rem[t].first;
    }
    rem[0].first = 0;
  }
  return edges;
}

struct MutableGraph {
  std::vector<std::unordered_set<NodeId>> adj;
  std::vector<std::pair<NodeId, NodeId>> edges; // normalized (min,max)
  std::vector<std::size_t> degree;              // constant under swaps

  bool has(NodeId a, NodeId b) const { return adj[a].count(b) > 0; }

  void apply(std::size_t e1, std::size_t e2, const RewireMove& m) {
    adj[m.a].erase(m.b); adj[m.b].erase(m.a);
    adj[m.c].erase(m.d); adj[m.d].erase(m.c);
    adj[m.a].insert(m.d); adj[m.d].insert(m.a);
    adj[m.b].insert(m.c); adj[m.c].insert(m.b);
    edges[e1] = norm_edge(m.a, m.d);
    edges[e2] = norm_edge(m.b, m.c);
  }

  bool orient(NodeId a, NodeId b, NodeId c, NodeId d, RewireMove& out) const {
    if (!(degree[a] < degree[c] && degree[b] < degree[d])) return false;
    if (has(a, d) || has(b, c)) return false;
    out = {a, b, c, d};
    return true;
  }

  // Best (largest local-mean gain) admissible move on the edge pair, if any.
  bool best_on_pair(std::size_t e1, std::size_t e2, RewireMove& out, double& delta) const {
    const NodeId u1 = edges[e1].first, v1 = edges[e1].second;
    const NodeId u2 = edges[e2].first, v2 = edges[e2].second;
    if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) return false;
    bool found = false;
    const NodeId combos[8][4] = {
        {u1, v1, u2, v2}, {v1, u1, u2, v2}, {u1, v1, v2, u2}, {v1, u1, v2, u2},
        {u2, v2, u1, v1}, {v2, u2, u1, v1}, {u2, v2, v1, u1}, {v2, u2, v1, u1}};
    for (const auto& c : combos) {
      RewireMove m;
      if (!orient(c[0], c[1], c[2], c[3], m)) continue;
      const double da = static_cast<double>(degree[m.a]), db = static_cast<double>(degree[m.b]);
      const double dc = static_cast<double>(degree[m.c]), dd = static_cast<double>(degree[m.d]);
      const double gain = (dd - db) * (1.0 / da - 1.0 / dc) + (dc - da) * (1.0 / db - 1.0 / dd);
      if (!found || gain > delta) {
        found = true;
        delta = gain;
        out = m;
      }
    }
    return found;
  }
};

} // namespace detail

// Greedy local-mean maximization over graphs realizing the given degree
// sequence: steepest ascent over sampled degree-preserving swaps (256 edge
// pairs per step), stopping when an exhaustive pass finds no admissible move
// or the step budget is exhausted.
inline MaximizeResult maximize_local_mean(const std::vector<std::size_t>& degree_sequence,
                                          std::size_t budget, Rng& rng) {
  if (degree_sequence.empty()) throw std::invalid_argument("empty degree sequence");
  for (auto d : degree_sequence)
    if (d == 0)
      throw std::invalid_argument("degree sequence contains zero: local mean undefined");
  if (!is_graphical(degree_sequence))
    throw std::invalid_argument("degree sequence is not graphical");

  detail::MutableGraph mg;
  mg.degree = degree_sequence;
  mg.edges = detail::realize_degree_sequence(degree_sequence);
  for (auto& e : mg.edges) e = detail::norm_edge(e.first, e.second);
  mg.adj.assign(degree_sequence.size(), {});
  for (auto [a, b] : mg.edges) {
    mg.adj[a].insert(b);
    mg.adj[b].insert(a);
  }

  constexpr std::size_t kSamplePairs = 256;
  constexpr std::size_t kExhaustiveLimit = 4'000'000; // |E|^2 bound for the final certificate
  const std::size_t m = mg.edges.size();

  MaximizeResult result;
  bool converged = false;
  std::size_t steps = 0;
  while (steps < budget && m >= 2) {
    RewireMove best{};
    double best_delta = 0.0;
    std::size_t best_e1 = 0, best_e2 = 0;
    bool found = false;
    for (std::size_t s = 0; s < kSamplePairs; ++s) {
      const std::size_t e1 = rng.uniform_below(m);
      const std::size_t e2 = rng.uniform_below(m);
      if (e1 == e2) continue;
      RewireMove mv;
      double delta = 0.0;
      if (mg.best_on_pair(e1, e2, mv, delta) && (!found || delta > best_delta)) {
        found = true;
        best = mv;
        best_delta = delta;
        best_e1 = e1;
        best_e2 = e2;
      }
    }
    if (!found) {
      if (m * m > kExhaustiveLimit) break; // cannot certify, stop unconverged
      for (std::size_t e1 = 0; e1 < m && !found; ++e1)
        for (std::size_t e2 = e1 + 1; e2 < m && !found; ++e2) {
          RewireMove mv;
          double delta = 0.0;
          if (mg.best_on_pair(e1, e2, mv, delta)) {
            found = true;
            best = mv;
            best_e1 = e1;
            best_e2 = e2;
          }
        }
      if (!found) {
        converged = true;
        break;
      }
    }
    mg.apply(best_e1, best_e2, best);
    ++steps;
  }
  if (m < 2) converged = true;
  result.graph = Graph::from_edges(degree_sequence.size(), mg.edges);
  result.converged = converged;
  result.steps = steps;
  return result;
}

} // namespace fpseed
