#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fpseed {

using NodeId = std::uint32_t;

// What build_graph dropped or merged while canonicalizing an edge list.
// edges_kept + duplicates_merged + self_loops_dropped equals the input length.
struct EdgeListReport {
  std::size_t edges_kept = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
  std::size_t node_count = 0;
};

// Immutable undirected simple graph. Nodes are dense indices 0..N-1 with
// sorted adjacency lists; j in adj[i] iff i in adj[j]; no self loops, no
// duplicates. Safe to share across threads after construction.
class Graph {
public:
  Graph() = default;

  // Canonicalizes raw index pairs: drops self loops, merges duplicate
  // undirected edges, sorts adjacency. Counts go to `report` when given.
  static Graph from_edges(std::size_t node_count,
                          const std::vector<std::pair<NodeId, NodeId>>& edges,
                          std::vector<std::string> labels = {},
                          EdgeListReport* report = nullptr) {
    Graph g;
    g.adj_.assign(node_count, {});
    g.labels_ = std::move(labels);
    if (!g.labels_.empty() && g.labels_.size() != node_count)
      throw std::invalid_argument("label count does not match node count");

    std::vector<std::pair<NodeId, NodeId>> canon;
    canon.reserve(edges.size());
    std::size_t self_loops = 0;
    for (auto [a, b] : edges) {
      if (a >= node_count || b >= node_count)
        throw std::invalid_argument("edge endpoint out of range");
      if (a == b) {
        ++self_loops;
        continue;
      }
      if (a > b) std::swap(a, b);
      canon.emplace_back(a, b);
    }
    std::sort(canon.begin(), canon.end());
    const auto last = std::unique(canon.begin(), canon.end());
    const std::size_t unique_count = static_cast<std::size_t>(last - canon.begin());
    const std::size_t duplicates = canon.size() - unique_count;
    canon.erase(last, canon.end());

    for (auto [a, b] : canon) {
      g.adj_[a].push_back(b);
      g.adj_[b].push_back(a);
    }
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
    g.edge_count_ = unique_count;

    if (report) {
      report->edges_kept = unique_count;
      report->self_loops_dropped = self_loops;
      report->duplicates_merged = duplicates;
      report->node_count = node_count;
    }
    return g;
  }

  std::size_t node_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::size_t directed_edge_count() const { return 2 * edge_count_; }

  std::size_t degree(NodeId i) const {
    check_index(i);
    return adj_[i].size();
  }

  std::span<const NodeId> neighbors(NodeId i) const {
    check_index(i);
    return {adj_[i].data(), adj_[i].size()};
  }

  bool has_edge(NodeId i, NodeId j) const {
    check_index(i);
    check_index(j);
    const auto& nbrs = adj_[i];
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
  }

  // Original string identifier of a node; synthesized from the index for
  // generated graphs that never had labels.
  std::string label(NodeId i) const {
    check_index(i);
    return labels_.empty() ? std::to_string(i) : labels_[i];
  }

  bool has_labels() const { return !labels_.empty(); }

  std::size_t max_degree() const {
    std::size_t m = 0;
    for (const auto& nbrs : adj_) m = std::max(m, nbrs.size());
    return m;
  }

  std::size_t min_degree() const {
    std::size_t m = adj_.empty() ? 0 : adj_[0].size();
    for (const auto& nbrs : adj_) m = std::min(m, nbrs.size());
    return m;
  }

  std::vector<std::size_t> degree_sequence() const {
    std::vector<std::size_t> d(adj_.size());
    for (std::size_t i = 0; i < adj_.size(); ++i) d[i] = adj_[i].size();
    return d;
  }

  bool is_regular() const {
    if (adj_.empty()) return true;
    const std::size_t d0 = adj_[0].size();
    for (const auto& nbrs : adj_)
      if (nbrs.size() != d0) return false;
    return true;
  }

  // New graph on the surviving nodes, densely re-indexed in original order,
  // with every edge incident to a victim deleted. Labels carry over; nodes
  // left with degree 0 survive.
  Graph remove_nodes(std::span<const NodeId> victims) const {
    std::vector<char> doomed(adj_.size(), 0);
    for (NodeId v : victims) {
      check_index(v);
      doomed[v] = 1;
    }
    std::vector<NodeId> new_index(adj_.size(), 0);
    std::size_t kept = 0;
    for (std::size_t i = 0; i < adj_.size(); ++i)
      if (!doomed[i]) new_index[i] = static_cast<NodeId>(kept++);

    Graph g;
    g.adj_.assign(kept, {});
    if (!labels_.empty()) {
      g.labels_.reserve(kept);
      for (std::size_t i = 0; i < adj_.size(); ++i)
        if (!doomed[i]) g.labels_.push_back(labels_[i]);
    }
    std::size_t edges = 0;
    for (std::size_t i = 0; i < adj_.size(); ++i) {
      if (doomed[i]) continue;
      auto& out = g.adj_[new_index[i]];
      for (NodeId j : adj_[i]) {
        if (doomed[j]) continue;
        out.push_back(new_index[j]);
        if (j > i) ++edges;
      }
    }
    g.edge_count_ = edges;
    return g;
  }

  Graph remove_nodes(const std::vector<NodeId>& victims) const {
    return remove_nodes(std::span<const NodeId>(victims));
  }

  // Forward iteration over the directed view: every undirected edge appears
  // in both orientations, 2|E| pairs total, ordered by origin then target.
  class DirectedEdgeIterator {
  public:
    using value_type = std::pair<NodeId, NodeId>;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    DirectedEdgeIterator() = default;
    DirectedEdgeIterator(const Graph* g, NodeId node, std::size_t pos)
        : g_(g), node_(node), pos_(pos) {
      advance_past_empty();
    }

    value_type operator*() const { return {node_, g_->adj_[node_][pos_]}; }

    DirectedEdgeIterator& operator++() {
      ++pos_;
      advance_past_empty();
      return *this;
    }

    DirectedEdgeIterator operator++(int) {
      auto tmp = *this;
      ++(*this);
      return tmp;
    }

    bool operator==(const DirectedEdgeIterator& o) const {
      return node_ == o.node_ && pos_ == o.pos_;
    }

  private:
    void advance_past_empty() {
      while (node_ < g_->adj_.size() && pos_ >= g_->adj_[node_].size()) {
        ++node_;
        pos_ = 0;
      }
    }

    const Graph* g_ = nullptr;
    NodeId node_ = 0;
    std::size_t pos_ = 0;
  };

  class DirectedEdgeRange {
  public:
    explicit DirectedEdgeRange(const Graph* g) : g_(g) {}
    DirectedEdgeIterator begin() const { return {g_, 0, 0}; }
    DirectedEdgeIterator end() const {
      return {g_, static_cast<NodeId>(g_->adj_.size()), 0};
    }

  private:
    const Graph* g_;
  };

  DirectedEdgeRange directed_edges() const { return DirectedEdgeRange(this); }

  // Undirected edges as (i, j) with i < j, in index order.
  std::vector<std::pair<NodeId, NodeId>> undirected_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId i = 0; i < adj_.size(); ++i)
      for (NodeId j : adj_[i])
        if (j > i) out.emplace_back(i, j);
    return out;
  }

private:
  void check_index(NodeId i) const {
    if (i >= adj_.size()) throw std::out_of_range("node index out of range");
  }

  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::string> labels_;
  std::size_t edge_count_ = 0;
};

// Builds a graph from labeled token pairs. Tokens map to dense indices in
// first-appearance order; `isolated` lists tokens that must exist as nodes
// even without any edge. Self loops and duplicate undirected edges are dirty
// input, dropped or merged and counted rather than rejected.
inline std::pair<Graph, EdgeListReport> build_graph(
    const std::vector<std::pair<std::string, std::string>>& edges,
    const std::vector<std::string>& isolated = {}) {
  if (edges.empty() && isolated.empty()) throw std::invalid_argument("empty graph");

  std::unordered_map<std::string, NodeId> index;
  std::vector<std::string> labels;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = index.emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::vector<std::pair<NodeId, NodeId>> index_edges;
  index_edges.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const NodeId ia = intern(a); // sequence the interning: first appearance wins
    const NodeId ib = intern(b);
    index_edges.emplace_back(ia, ib);
  }
  for (const auto& token : isolated) intern(token);

  EdgeListReport report;
  const std::size_t n = labels.size();
  Graph g = Graph::from_edges(n, index_edges, std::move(labels), &report);
  return {std::move(g), report};
}

} // namespace fpseed
