#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpseed/graph.hpp"
#include "fpseed/parallel.hpp"
#include "fpseed/rng.hpp"

namespace fpseed {

enum class Strategy { random, local, global };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::random: return "random";
    case Strategy::local: return "local";
    case Strategy::global: return "global";
  }
  return "?";
}

inline Strategy strategy_from_name(const std::string& s) {
  if (s == "random") return Strategy::random;
  if (s == "local") return Strategy::local;
  if (s == "global") return Strategy::global;
  throw std::invalid_argument("unknown strategy: " + s);
}

struct StrategyConfig {
  Strategy strategy = Strategy::random;
  std::size_t k = 1;
  double p = 0.5; // global only: per-neighbor admission probability
  std::uint64_t rng_seed = 0;
  std::size_t max_rounds = 0; // 0 means 1000 * k

  std::size_t effective_max_rounds() const { return max_rounds == 0 ? 1000 * k : max_rounds; }
};

struct SeedSet {
  std::vector<NodeId> seeds; // distinct, ascending
  std::size_t rounds_used = 0;
  std::size_t initial_draws = 0;
};

// Round budget exhausted before k distinct seeds accumulated; carries the
// partial progress.
class SeedBudgetError : public std::runtime_error {
public:
  SeedBudgetError(std::string msg, SeedSet partial)
      : std::runtime_error(std::move(msg)), partial_(std::move(partial)) {}
  const SeedSet& partial() const { return partial_; }

private:
  SeedSet partial_;
};

namespace detail {

class SeedAccumulator {
public:
  explicit SeedAccumulator(std::size_t n) : member_(n, 0) {}

  bool insert(NodeId v) {
    if (member_[v]) return false;
    member_[v] = 1;
    seeds_.push_back(v);
    return true;
  }

  std::size_t size() const { return seeds_.size(); }

  std::vector<NodeId> sorted() const {
    auto out = seeds_;
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::vector<char> member_;
  std::vector<NodeId> seeds_;
};

// k distinct values from [0, n) via partial Fisher-Yates.
inline std::vector<NodeId> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  std::vector<NodeId> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<NodeId>(i);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

} // namespace detail

// Draws exactly k distinct seeds.
//   random: k uniform nodes without replacement.
//   local:  per round, a uniform node's uniform neighbor joins the set.
//   global: per round, each neighbor of a uniform node joins independently
//           with probability p; once at least k members exist, k of them are
//           subsampled uniformly without replacement.
// Rounds whose initial node has no neighbors are discarded but counted.
inline SeedSet select_seeds(const Graph& g, const StrategyConfig& cfg) {
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("select_seeds: empty graph");
  if (cfg.k == 0) throw std::invalid_argument("select_seeds: k must be >= 1");
  if (cfg.k > n) throw std::invalid_argument("select_seeds: k exceeds node count");
  if (cfg.strategy == Strategy::global && !(cfg.p > 0.0 && cfg.p <= 1.0))
    throw std::invalid_argument("select_seeds: p must be in (0,1]");

  Rng rng(cfg.rng_seed);
  SeedSet out;

  if (cfg.strategy == Strategy::random) {
    out.seeds = detail::sample_without_replacement(n, cfg.k, rng);
    std::sort(out.seeds.begin(), out.seeds.end());
    out.rounds_used = cfg.k;
    out.initial_draws = cfg.k;
    return out;
  }

  // Seeds produced by the neighbor strategies always have degree >= 1, so k
  // beyond the non-isolated pool can never complete.
  std::size_t reachable = 0;
  for (NodeId i = 0; i < n; ++i)
    if (g.degree(i) > 0) ++reachable;
  if (cfg.k > reachable)
    throw std::invalid_argument("select_seeds: k exceeds the neighbor pool (degree >= 1 nodes)");

  detail::SeedAccumulator acc(n);
  const std::size_t max_rounds = cfg.effective_max_rounds();
  std::size_t rounds = 0;
  while (acc.size() < cfg.k) {
    if (rounds >= max_rounds) {
      SeedSet partial;
      partial.seeds = acc.sorted();
      partial.rounds_used = rounds;
      partial.initial_draws = rounds;
      throw SeedBudgetError("select_seeds: max_rounds exhausted with " +
                                std::to_string(acc.size()) + " of " + std::to_string(cfg.k) +
                                " seeds",
                            std::move(partial));
    }
    ++rounds;
    const auto r = static_cast<NodeId>(rng.uniform_below(n));
    const auto nbrs = g.neighbors(r);
    if (nbrs.empty()) continue;
    if (cfg.strategy == Strategy::local) {
      acc.insert(nbrs[rng.uniform_below(nbrs.size())]);
    } else {
      for (NodeId s : nbrs)
        if (rng.bernoulli(cfg.p)) acc.insert(s);
    }
  }

  out.rounds_used = rounds;
  out.initial_draws = rounds;
  auto members = acc.sorted();
  if (members.size() > cfg.k) {
    // global overshoot: keep k uniformly without replacement
    for (std::size_t i = 0; i < cfg.k; ++i) {
      const std::size_t j = i + rng.uniform_below(members.size() - i);
      std::swap(members[i], members[j]);
    }
    members.resize(cfg.k);
    std::sort(members.begin(), members.end());
  }
  out.seeds = std::move(members);
  return out;
}

struct DegreeEstimate {
  double mean = 0;
  double stderr_mean = 0;
  std::size_t replicates = 0;
  std::uint64_t observations = 0; // > replicates for global (one per admitted node)
};

namespace detail {

struct ChunkSums {
  double sy = 0, sx = 0, syy = 0, sxx = 0, sxy = 0;
};

} // namespace detail

// Monte-Carlo estimate of the expected degree of a single selected seed.
// random and local contribute one degree observation per replicate. global
// weights every admitted neighbor as one observation (a replicate is one
// successful round; empty rounds are redrawn), so the estimate is the ratio
// sum(degrees)/sum(admissions), whose expectation is invariant in p. The
// returned stderr is the linearized ratio-estimator standard error, which
// reduces to the plain standard error when every replicate has one
// observation.
inline DegreeEstimate estimate_expected_degree(const Graph& g, Strategy strategy, double p,
                                               std::size_t replicates, std::uint64_t rng_seed,
                                               std::size_t workers = 1) {
  if (replicates == 0) throw std::invalid_argument("estimate: replicates must be >= 1");
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("estimate: empty graph");
  if (strategy != Strategy::random) {
    bool any_edge = g.edge_count() > 0;
    if (!any_edge) throw std::invalid_argument("estimate: neighbor strategies need edges");
  }
  if (strategy == Strategy::global && !(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("estimate: p must be in (0,1]");

  // Fixed-size chunks with per-chunk partial sums; the sequential combine
  // makes the result independent of worker count.
  constexpr std::size_t kChunk = 8192;
  const std::size_t n_chunks = (replicates + kChunk - 1) / kChunk;
  std::vector<detail::ChunkSums> partial(n_chunks);

  parallel_for_index(n_chunks, workers, [&](std::size_t chunk) {
    const std::size_t begin = chunk * kChunk;
    const std::size_t end = std::min(begin + kChunk, replicates);
    detail::ChunkSums s;
    for (std::size_t rep = begin; rep < end; ++rep) {
      Rng rng = Rng::stream(rng_seed, rep);
      double y = 0, x = 0;
      switch (strategy) {
        case Strategy::random: {
          const auto r = static_cast<NodeId>(rng.uniform_below(n));
          y = static_cast<double>(g.degree(r));
          x = 1.0;
          break;
        }
        case Strategy::local: {
          for (;;) {
            const auto r = static_cast<NodeId>(rng.uniform_below(n));
            const auto nbrs = g.neighbors(r);
            if (nbrs.empty()) continue;
            const NodeId s_node = nbrs[rng.uniform_below(nbrs.size())];
            y = static_cast<double>(g.degree(s_node));
            x = 1.0;
            break;
          }
          break;
        }
        case Strategy::global: {
          std::uint64_t deg_sum = 0, admitted = 0;
          while (admitted == 0) {
            const auto r = static_cast<NodeId>(rng.uniform_below(n));
            for (NodeId s_node : g.neighbors(r)) {
              if (rng.bernoulli(p)) {
                deg_sum += g.degree(s_node);
                ++admitted;
              }
            }
          }
          y = static_cast<double>(deg_sum);
          x = static_cast<double>(admitted);
          break;
        }
      }
      s.sy += y;
      s.sx += x;
      s.syy += y * y;
      s.sxx += x * x;
      s.sxy += x * y;
    }
    partial[chunk] = s;
  });

  double sy = 0, sx = 0, syy = 0, sxx = 0, sxy = 0;
  for (const auto& s : partial) {
    sy += s.sy;
    sx += s.sx;
    syy += s.syy;
    sxx += s.sxx;
    sxy += s.sxy;
  }

  const auto r_count = static_cast<double>(replicates);
  const double ratio = sy / sx;
  // sum (y_i - ratio * x_i)^2 expanded through the accumulated moments
  const double sse = std::max(0.0, syy - 2.0 * ratio * sxy + ratio * ratio * sxx);
  const double xbar = sx / r_count;
  double se = 0.0;
  if (replicates > 1) se = std::sqrt(sse / (r_count - 1.0) / r_count) / xbar;

  DegreeEstimate est;
  est.mean = ratio;
  est.stderr_mean = se;
  est.replicates = replicates;
  est.observations = static_cast<std::uint64_t>(sx);
  return est;
}

} // namespace fpseed
