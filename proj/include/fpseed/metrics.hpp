#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "fpseed/graph.hpp"

namespace fpseed {

// Compensated (Kahan) accumulator. Degree moments of heavy-tailed networks
// span many orders of magnitude, and the mean identities asserted below are
// tested at 1e-9, so every floating sum here is compensated.
class KahanSum {
public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

// kappa_m = (1/N) sum_i D_i^m for m in {-1, 1, 2, 3}.
struct DegreeMoments {
  double kappa_minus1 = 0;
  double kappa_1 = 0;
  double kappa_2 = 0;
  double kappa_3 = 0;
  double mu_D = 0;     // = kappa_1
  double sigma2_D = 0; // = kappa_2 - kappa_1^2
};

struct Leverage {
  double local = 0;
  double global = 0;
};

// The nine scalar properties, serialized under exactly these names.
struct MeansReport {
  double mu_D = 0;
  double mu_L = 0;
  double mu_G = 0;
  double inversity = 0;
  double psi = 0;
  double assortativity = 0;
  double leverage_local = 0;
  double leverage_global = 0;
  double fp_fraction = 0;
};

// Multiset of (origin degree, destination degree) pairs over the directed
// edge view, multiplicity-compressed. Total multiplicity is 2|E| and the
// multiset is symmetric under swapping the two degrees.
struct TwoKEntry {
  std::uint32_t origin_degree = 0;
  std::uint32_t destination_degree = 0;
  std::uint64_t multiplicity = 0;
};

struct TwoKDistribution {
  std::vector<TwoKEntry> entries;
};

namespace detail {

inline void require_min_degree_one(const Graph& g) {
  for (NodeId i = 0; i < g.node_count(); ++i)
    if (g.degree(i) == 0)
      throw std::invalid_argument("isolated node: inverse-degree moments undefined");
}

inline void require_edges(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("graph has no edges");
}

// Pearson correlation over the directed edge view of (origin degree, f(dest
// degree)). Two-pass centered form; exact zeros for regular graphs.
template <class DestFn>
double edge_pearson(const Graph& g, DestFn&& dest_value, const char* what) {
  require_min_degree_one(g);
  require_edges(g);
  const double n = static_cast<double>(g.directed_edge_count());

  KahanSum sx, sy;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const double di = static_cast<double>(g.degree(i));
    for (NodeId j : g.neighbors(i)) {
      sx.add(di);
      sy.add(dest_value(g.degree(j)));
    }
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;

  KahanSum sxx, syy, sxy;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const double dx = static_cast<double>(g.degree(i)) - mx;
    for (NodeId j : g.neighbors(i)) {
      const double dy = dest_value(g.degree(j)) - my;
      sxx.add(dx * dx);
      syy.add(dy * dy);
      sxy.add(dx * dy);
    }
  }
  const double denom2 = sxx.value() * syy.value();
  if (denom2 <= 0.0) throw std::invalid_argument(what);
  return std::clamp(sxy.value() / std::sqrt(denom2), -1.0, 1.0);
}

} // namespace detail

inline DegreeMoments degree_moments(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  detail::require_min_degree_one(g);
  const double n = static_cast<double>(g.node_count());

  std::uint64_t sum_d = 0, sum_d2 = 0;
  KahanSum sum_d3, sum_inv;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::uint64_t d = g.degree(i);
    sum_d += d;
    sum_d2 += d * d;
    sum_d3.add(static_cast<double>(d) * static_cast<double>(d) * static_cast<double>(d));
    sum_inv.add(1.0 / static_cast<double>(d));
  }

  DegreeMoments m;
  m.kappa_1 = static_cast<double>(sum_d) / n;
  m.kappa_2 = static_cast<double>(sum_d2) / n;
  m.kappa_3 = sum_d3.value() / n;
  m.kappa_minus1 = sum_inv.value() / n;
  m.mu_D = m.kappa_1;
  m.sigma2_D = m.kappa_2 - m.kappa_1 * m.kappa_1;
  return m;
}

inline double mean_degree(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  return static_cast<double>(g.directed_edge_count()) / static_cast<double>(g.node_count());
}

// Average over nodes of the mean degree of their neighbors:
// (1/N) sum_i (1/D_i) sum_{j~i} D_j. Requires min degree >= 1.
inline double local_mean(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  detail::require_min_degree_one(g);
  KahanSum acc;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    std::uint64_t neighbor_degree_sum = 0;
    for (NodeId j : g.neighbors(i)) neighbor_degree_sum += g.degree(j);
    acc.add(static_cast<double>(neighbor_degree_sum) / static_cast<double>(g.degree(i)));
  }
  return acc.value() / static_cast<double>(g.node_count());
}

// Equivalent edge-imbalance form: mu_D plus the per-edge degree-gap penalty
// (1/2N) sum over ordered edges of (D_i - D_j)^2 / (D_i D_j). Kept as a
// separate route so the two can be checked against each other.
inline double local_mean_edge_gap_form(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  detail::require_min_degree_one(g);
  KahanSum acc;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const double di = static_cast<double>(g.degree(i));
    for (NodeId j : g.neighbors(i)) {
      const double dj = static_cast<double>(g.degree(j));
      const double gap = di - dj;
      acc.add(gap * gap / (di * dj));
    }
  }
  return mean_degree(g) + acc.value() / (2.0 * static_cast<double>(g.node_count()));
}

// Total friends-of-friends over total friends: sum D_i^2 / sum D_i.
// Cross-checked against the degree-distribution form mu_D + sigma2/mu_D;
// disagreement beyond 1e-9 relative indicates accumulation trouble.
inline double global_mean(const Graph& g) {
  detail::require_edges(g);
  std::uint64_t sum_d = 0, sum_d2 = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const std::uint64_t d = g.degree(i);
    sum_d += d;
    sum_d2 += d * d;
  }
  const double direct = static_cast<double>(sum_d2) / static_cast<double>(sum_d);
  const double n = static_cast<double>(g.node_count());
  const double mu = static_cast<double>(sum_d) / n;
  const double sigma2 = static_cast<double>(sum_d2) / n - mu * mu;
  const double via_moments = mu + sigma2 / mu;
  if (std::abs(direct - via_moments) > 1e-9 * std::max(1.0, std::abs(direct)))
    throw std::logic_error("global mean routes disagree beyond tolerance");
  return direct;
}

// Correlation between origin degree and inverse destination degree over the
// directed edge view. Undefined (0/0) on regular graphs.
inline double inversity(const Graph& g) {
  return detail::edge_pearson(
      g, [](std::size_t dj) { return 1.0 / static_cast<double>(dj); },
      "inversity undefined: zero variance");
}

// Correlation between origin and destination degree over the directed edges.
inline double assortativity(const Graph& g) {
  return detail::edge_pearson(
      g, [](std::size_t dj) { return static_cast<double>(dj); },
      "assortativity undefined: zero variance");
}

// Nonnegative moment factor linking the two means: the local mean equals the
// global mean plus inversity times this factor.
inline double psi(const DegreeMoments& m) {
  const double radicand = ((m.kappa_1 * m.kappa_3 - m.kappa_2 * m.kappa_2) / m.kappa_1) *
                          (m.kappa_minus1 - 1.0 / m.kappa_1);
  if (radicand < -1e-12) throw std::invalid_argument("psi: inconsistent degree moments");
  return radicand > 0.0 ? std::sqrt(radicand) : 0.0;
}

inline TwoKDistribution extract_2k(const Graph& g) {
  detail::require_min_degree_one(g);
  std::unordered_map<std::uint64_t, std::uint64_t> mult;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto di = static_cast<std::uint64_t>(g.degree(i));
    for (NodeId j : g.neighbors(i)) {
      const std::uint64_t key = (di << 32) | static_cast<std::uint64_t>(g.degree(j));
      ++mult[key];
    }
  }
  TwoKDistribution d;
  d.entries.reserve(mult.size());
  for (const auto& [key, count] : mult)
    d.entries.push_back({static_cast<std::uint32_t>(key >> 32),
                         static_cast<std::uint32_t>(key & 0xFFFFFFFFULL), count});
  std::sort(d.entries.begin(), d.entries.end(), [](const TwoKEntry& a, const TwoKEntry& b) {
    return std::pair(a.origin_degree, a.destination_degree) <
           std::pair(b.origin_degree, b.destination_degree);
  });
  return d;
}

// Inversity from the degree-pair multiset alone; the full graph is not
// needed. Matches inversity(g) when the distribution was extracted from g.
inline double inversity_from_2k(const TwoKDistribution& d) {
  std::uint64_t total = 0;
  for (const auto& e : d.entries) {
    if (e.origin_degree == 0 || e.destination_degree == 0)
      throw std::invalid_argument("2k distribution contains degree-0 endpoint");
    if (e.multiplicity == 0) throw std::invalid_argument("2k entry with zero multiplicity");
    total += e.multiplicity;
  }
  if (total == 0) throw std::invalid_argument("empty 2k distribution");
  const double n = static_cast<double>(total);

  KahanSum sx, sy;
  for (const auto& e : d.entries) {
    const double w = static_cast<double>(e.multiplicity);
    sx.add(w * static_cast<double>(e.origin_degree));
    sy.add(w / static_cast<double>(e.destination_degree));
  }
  const double mx = sx.value() / n;
  const double my = sy.value() / n;

  KahanSum sxx, syy, sxy;
  for (const auto& e : d.entries) {
    const double w = static_cast<double>(e.multiplicity);
    const double dx = static_cast<double>(e.origin_degree) - mx;
    const double dy = 1.0 / static_cast<double>(e.destination_degree) - my;
    sxx.add(w * dx * dx);
    syy.add(w * dy * dy);
    sxy.add(w * dx * dy);
  }
  const double denom2 = sxx.value() * syy.value();
  if (denom2 <= 0.0) throw std::invalid_argument("inversity undefined: zero variance");
  return std::clamp(sxy.value() / std::sqrt(denom2), -1.0, 1.0);
}

// Fraction of nodes whose neighbors' mean degree strictly exceeds their own
// degree. The comparison is exact: sum_{j~i} D_j > D_i^2 in integers.
inline double fp_fraction(const Graph& g) {
  if (g.node_count() == 0) throw std::invalid_argument("empty graph");
  detail::require_min_degree_one(g);
  std::size_t count = 0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    std::uint64_t neighbor_degree_sum = 0;
    for (NodeId j : g.neighbors(i)) neighbor_degree_sum += g.degree(j);
    const std::uint64_t d = g.degree(i);
    if (neighbor_degree_sum > d * d) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(g.node_count());
}

// Expected-degree gain of each neighborhood strategy over uniform sampling.
inline Leverage leverage(const Graph& g) {
  const double mu = mean_degree(g);
  if (mu <= 0.0) throw std::invalid_argument("leverage undefined: no edges");
  return {local_mean(g) / mu, global_mean(g) / mu};
}

// All nine properties at once. Throws on regular graphs, where the two edge
// correlations are 0/0; compute the individual means directly in that case.
inline MeansReport means_report(const Graph& g) {
  MeansReport r;
  const DegreeMoments m = degree_moments(g);
  r.mu_D = m.mu_D;
  r.mu_L = local_mean(g);
  r.mu_G = global_mean(g);
  r.inversity = inversity(g);
  r.psi = psi(m);
  r.assortativity = assortativity(g);
  r.leverage_local = r.mu_L / r.mu_D;
  r.leverage_global = r.mu_G / r.mu_D;
  r.fp_fraction = fp_fraction(g);
  return r;
}

} // namespace fpseed
