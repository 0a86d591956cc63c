#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpseed/graph.hpp"
#include "fpseed/parallel.hpp"
#include "fpseed/rng.hpp"
#include "fpseed/seeding.hpp"

namespace fpseed {

struct SpectralResult {
  double lambda1 = 0;
  double tau = std::numeric_limits<double>::infinity(); // 1/lambda1; +inf iff no edges
  std::size_t iterations = 0;
  double residual = 0; // ||A v - lambda v|| with ||v|| = 1, winning component
};

class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(std::string msg, double best_estimate, double residual, std::size_t iterations)
      : std::runtime_error(std::move(msg)),
        best_estimate_(best_estimate),
        residual_(residual),
        iterations_(iterations) {}
  double best_estimate() const { return best_estimate_; }
  double residual() const { return residual_; }
  std::size_t iterations() const { return iterations_; }

private:
  double best_estimate_;
  double residual_;
  std::size_t iterations_;
};

namespace detail {

inline std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> visited(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (visited[s]) continue;
    visited[s] = 1;
    stack.assign(1, s);
    std::vector<NodeId> comp;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (NodeId w : g.neighbors(v))
        if (!visited[w]) {
          visited[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

struct ComponentSpectral {
  double lambda1 = 0;
  double residual = 0;
  std::size_t iterations = 0;
  bool converged = true;
};

// Power iteration on A + I restricted to one component. The identity shift
// keeps the dominant eigenvalue simple in magnitude on bipartite spectra.
inline ComponentSpectral component_lambda1(const Graph& g, const std::vector<NodeId>& comp,
                                           double tol, std::size_t max_iter) {
  ComponentSpectral out;
  const std::size_t n = comp.size();
  if (n == 1) return out;

  std::vector<NodeId> local(g.node_count(), 0);
  for (std::size_t i = 0; i < n; ++i) local[comp[i]] = static_cast<NodeId>(i);

  // Deterministic start: ones plus a tiny index-dependent perturbation.
  std::vector<double> v(n), w(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = 1.0 + 1e-8 * static_cast<double>(i % 101) / 101.0;
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;

  double lambda_shifted = 0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = v[i]; // identity shift
      for (NodeId nb : g.neighbors(comp[i])) acc += v[local[nb]];
      w[i] = acc;
    }
    lambda_shifted = 0;
    for (std::size_t i = 0; i < n; ++i) lambda_shifted += v[i] * w[i];

    double res2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = w[i] - lambda_shifted * v[i];
      res2 += r * r;
    }
    const double res = std::sqrt(res2);
    out.iterations = it;
    if (res <= tol * std::max(1.0, std::abs(lambda_shifted))) {
      out.lambda1 = lambda_shifted - 1.0;
      out.residual = res;
      return out;
    }
    double wnorm = 0;
    for (double x : w) wnorm += x * x;
    wnorm = std::sqrt(wnorm);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / wnorm;
  }
  out.lambda1 = lambda_shifted - 1.0;
  double res2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = w[i] - lambda_shifted * v[i];
    res2 += r * r;
  }
  out.residual = std::sqrt(res2);
  out.converged = false;
  return out;
}

} // namespace detail

// Largest adjacency eigenvalue, computed per connected component so that
// near-ties between components cannot stall the iteration.
inline SpectralResult largest_eigenvalue(const Graph& g, double tol = 1e-10,
                                         std::size_t max_iter = 100000) {
  SpectralResult result;
  if (g.edge_count() == 0) {
    result.lambda1 = 0;
    result.tau = std::numeric_limits<double>::infinity();
    return result;
  }
  double best = 0, best_res = 0;
  std::size_t total_iter = 0;
  for (const auto& comp : detail::connected_components(g)) {
    const auto cs = detail::component_lambda1(g, comp, tol, max_iter);
    total_iter += cs.iterations;
    if (!cs.converged)
      throw ConvergenceError("power iteration did not converge in " +
                                 std::to_string(max_iter) + " iterations",
                             cs.lambda1, cs.residual, cs.iterations);
    if (cs.lambda1 > best) {
      best = cs.lambda1;
      best_res = cs.residual;
    }
  }
  result.lambda1 = best;
  result.residual = best_res;
  result.iterations = total_iter;
  result.tau = best > 0 ? 1.0 / best : std::numeric_limits<double>::infinity();
  return result;
}

inline double epidemic_threshold(const Graph& g) { return largest_eigenvalue(g).tau; }

enum class Regime { dies_out, epidemic };

struct RegimeResult {
  Regime regime = Regime::dies_out;
  bool flagged = false; // knife-edge equality, or the delta=0 convention
  double r0 = 0;
};

// beta/delta below tau dies out, above grows. Exact equality counts as
// epidemic; delta = 0 with transmission is epidemic by convention.
inline RegimeResult classify_regime(double beta, double delta, double tau) {
  if (beta < 0 || delta < 0) throw std::invalid_argument("classify_regime: negative rate");
  RegimeResult out;
  if (beta == 0) {
    out.regime = Regime::dies_out;
    out.r0 = 0;
    return out;
  }
  if (delta == 0) {
    out.regime = Regime::epidemic;
    out.flagged = true;
    out.r0 = std::numeric_limits<double>::infinity();
    return out;
  }
  out.r0 = beta / delta;
  if (out.r0 < tau) {
    out.regime = Regime::dies_out;
  } else {
    out.regime = Regime::epidemic;
    if (out.r0 == tau) out.flagged = true;
  }
  return out;
}

struct SirConfig {
  double beta = 0.20;
  double delta = 0.15;
  double initial_infected_fraction = 0.01;
  std::size_t replicates = 100;
  std::size_t t_max = 10000;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("sir: beta must be in [0,1]");
    if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("sir: delta must be in [0,1]");
    if (!(initial_infected_fraction > 0.0 && initial_infected_fraction <= 1.0))
      throw std::invalid_argument("sir: initial fraction must be in (0,1]");
    if (replicates == 0) throw std::invalid_argument("sir: replicates must be >= 1");
    if (t_max == 0) throw std::invalid_argument("sir: t_max must be >= 1");
  }
};

struct SirReplicate {
  double peak_fraction = 0;
  double ever_fraction = 0;
  double total_suffering = 0;
  std::size_t duration = 0;                // periods with at least one infected
  std::uint64_t infected_node_periods = 0; // raw sum, for alternate normalizations
};

struct Summary {
  double mean = 0;
  double sd = 0;
};

struct SirOutcome {
  std::vector<SirReplicate> replicates;
  Summary peak_fraction, ever_fraction, total_suffering;
  double mean_duration = 0;
  bool degenerate = false; // no node was eligible for infection
};

namespace detail {

// One synchronous SIR trajectory. States update simultaneously from the
// period-start configuration: susceptibles with m infected neighbors catch
// with probability 1-(1-beta)^m, infected recover with probability delta.
// Immunized nodes never transmit or catch; denominators stay the full N.
inline SirReplicate sir_single_run(const Graph& g, const SirConfig& cfg,
                                   const std::vector<char>& immunized_mask,
                                   const std::vector<NodeId>& eligible, Rng& rng) {
  enum : char { S = 0, I = 1, R = 2, V = 3 };
  const std::size_t n = g.node_count();
  SirReplicate rep;
  if (eligible.empty()) return rep;

  std::vector<char> state(n, S);
  for (std::size_t i = 0; i < n; ++i)
    if (immunized_mask[i]) state[i] = V;

  const std::size_t initial =
      static_cast<std::size_t>(std::ceil(cfg.initial_infected_fraction *
                                         static_cast<double>(eligible.size())));
  std::vector<NodeId> pool = eligible;
  for (std::size_t i = 0; i < initial; ++i) {
    const std::size_t j = i + rng.uniform_below(pool.size() - i);
    std::swap(pool[i], pool[j]);
    state[pool[i]] = I;
  }

  std::vector<double> infect_prob(g.max_degree() + 1, 0.0);
  for (std::size_t m = 1; m < infect_prob.size(); ++m)
    infect_prob[m] = 1.0 - std::pow(1.0 - cfg.beta, static_cast<double>(m));

  std::vector<char> ever(n, 0);
  for (std::size_t i = 0; i < n; ++i) ever[i] = state[i] == I;

  std::vector<std::uint32_t> pressure(n, 0);
  std::vector<NodeId> infected, touched, newly_infected, recovered;
  std::size_t peak = 0;

  for (std::size_t t = 0; t < cfg.t_max; ++t) {
    infected.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (state[i] == I) infected.push_back(static_cast<NodeId>(i));
    if (infected.empty()) break;

    rep.infected_node_periods += infected.size();
    peak = std::max(peak, infected.size());
    ++rep.duration;

    touched.clear();
    for (NodeId i : infected)
      for (NodeId j : g.neighbors(i))
        if (state[j] == S) {
          if (pressure[j] == 0) touched.push_back(j);
          ++pressure[j];
        }
    std::sort(touched.begin(), touched.end());

    newly_infected.clear();
    for (NodeId j : touched) {
      if (rng.bernoulli(infect_prob[pressure[j]])) newly_infected.push_back(j);
      pressure[j] = 0;
    }
    recovered.clear();
    for (NodeId i : infected)
      if (rng.bernoulli(cfg.delta)) recovered.push_back(i);

    for (NodeId j : newly_infected) {
      state[j] = I;
      ever[j] = 1;
    }
    for (NodeId i : recovered) state[i] = R;
  }

  std::size_t ever_count = 0;
  for (char e : ever) ever_count += e;
  const auto nd = static_cast<double>(n);
  rep.peak_fraction = static_cast<double>(peak) / nd;
  rep.ever_fraction = static_cast<double>(ever_count) / nd;
  rep.total_suffering =
      rep.duration == 0
          ? 0.0
          : static_cast<double>(rep.infected_node_periods) / (nd * static_cast<double>(rep.duration));
  return rep;
}

inline Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  double sum = 0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

inline void summarize_outcome(SirOutcome& out) {
  std::vector<double> peak, ever, suf;
  double dur = 0;
  for (const auto& r : out.replicates) {
    peak.push_back(r.peak_fraction);
    ever.push_back(r.ever_fraction);
    suf.push_back(r.total_suffering);
    dur += static_cast<double>(r.duration);
  }
  out.peak_fraction = summarize(peak);
  out.ever_fraction = summarize(ever);
  out.total_suffering = summarize(suf);
  out.mean_duration = out.replicates.empty() ? 0 : dur / static_cast<double>(out.replicates.size());
}

} // namespace detail

// Ensemble of SIR trajectories on a fixed immunization set. Replicate r uses
// the derived stream (cfg.rng_seed, r); results are independent of worker
// count.
inline SirOutcome sir_simulate(const Graph& g, const SirConfig& cfg,
                               std::span<const NodeId> immunized, std::size_t workers = 1) {
  cfg.validate();
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("sir: empty graph");

  std::vector<char> mask(n, 0);
  for (NodeId v : immunized) {
    if (v >= n) throw std::out_of_range("sir: immunized index out of range");
    mask[v] = 1;
  }
  std::vector<NodeId> eligible;
  for (NodeId i = 0; i < n; ++i)
    if (!mask[i]) eligible.push_back(i);

  SirOutcome out;
  out.replicates.resize(cfg.replicates);
  out.degenerate = eligible.empty();
  parallel_for_index(cfg.replicates, workers, [&](std::size_t rep) {
    Rng rng = Rng::stream(cfg.rng_seed, rep);
    out.replicates[rep] = detail::sir_single_run(g, cfg, mask, eligible, rng);
  });
  detail::summarize_outcome(out);
  return out;
}

struct ThresholdPoint {
  Strategy strategy = Strategy::random;
  double fraction = 0;
  std::vector<double> taus; // one per replicate
  double mean_tau = 0;
  double ci_lo = 0;
  double ci_hi = 0;
};

struct ThresholdCurve {
  std::vector<double> fractions;
  std::vector<Strategy> strategies;
  std::vector<ThresholdPoint> points; // strategy-major, fraction-minor
};

namespace detail {

inline void fill_ci(ThresholdPoint& pt) {
  const std::size_t r = pt.taus.size();
  bool finite = true;
  for (double t : pt.taus)
    if (!std::isfinite(t)) finite = false;
  if (!finite) {
    pt.mean_tau = std::numeric_limits<double>::infinity();
    pt.ci_lo = pt.ci_hi = std::numeric_limits<double>::infinity();
    return;
  }
  const Summary s = summarize(pt.taus);
  pt.mean_tau = s.mean;
  const double half = r > 1 ? 1.96 * s.sd / std::sqrt(static_cast<double>(r)) : 0.0;
  pt.ci_lo = s.mean - half;
  pt.ci_hi = s.mean + half;
}

} // namespace detail

// For each (strategy, fraction, replicate): select ceil(fraction*N) nodes,
// delete them, and take the threshold of the residual graph. Replicate
// streams derive from (rng_seed, task index) with task index
// (si * |fractions| + fi) * replicates + r.
inline ThresholdCurve immunization_curve(const Graph& g, const std::vector<Strategy>& strategies,
                                         const std::vector<double>& fractions,
                                         std::size_t replicates, std::uint64_t rng_seed,
                                         double global_p = 0.5, std::size_t workers = 1) {
  if (replicates == 0) throw std::invalid_argument("immunization_curve: replicates must be >= 1");
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("immunization_curve: empty graph");
  for (double f : fractions)
    if (!(f >= 0.0 && f <= 0.99))
      throw std::invalid_argument("immunization_curve: fractions must lie in [0, 0.99]");

  ThresholdCurve curve;
  curve.fractions = fractions;
  curve.strategies = strategies;
  curve.points.resize(strategies.size() * fractions.size());

  const std::size_t tasks = strategies.size() * fractions.size() * replicates;
  std::vector<double> taus(tasks, 0.0);
  parallel_for_index(tasks, workers, [&](std::size_t task) {
    const std::size_t per_strategy = fractions.size() * replicates;
    const std::size_t si = task / per_strategy;
    const std::size_t fi = (task % per_strategy) / replicates;
    const double fraction = fractions[fi];
    const auto k = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
    if (k == 0) {
      taus[task] = epidemic_threshold(g);
      return;
    }
    StrategyConfig cfg;
    cfg.strategy = strategies[si];
    cfg.k = k;
    cfg.p = global_p;
    cfg.rng_seed = Rng::stream(rng_seed, task).next_u64();
    const SeedSet seeds = select_seeds(g, cfg);
    taus[task] = epidemic_threshold(g.remove_nodes(seeds.seeds));
  });

  for (std::size_t si = 0; si < strategies.size(); ++si) {
    for (std::size_t fi = 0; fi < fractions.size(); ++fi) {
      auto& pt = curve.points[si * fractions.size() + fi];
      pt.strategy = strategies[si];
      pt.fraction = fractions[fi];
      pt.taus.assign(taus.begin() + static_cast<std::ptrdiff_t>((si * fractions.size() + fi) * replicates),
                     taus.begin() + static_cast<std::ptrdiff_t>((si * fractions.size() + fi + 1) * replicates));
      detail::fill_ci(pt);
    }
  }
  return curve;
}

struct Histogram {
  std::size_t bin_count = 0;
  std::vector<std::uint64_t> counts; // over [0,1], value 1 lands in the last bin
};

inline Histogram histogram01(const std::vector<double>& xs, std::size_t bins) {
  Histogram h;
  h.bin_count = bins;
  h.counts.assign(bins, 0);
  for (double x : xs) {
    auto b = static_cast<std::size_t>(std::clamp(x, 0.0, 1.0) * static_cast<double>(bins));
    if (b >= bins) b = bins - 1;
    ++h.counts[b];
  }
  return h;
}

struct StrategyComparison {
  Strategy strategy = Strategy::random;
  SirOutcome outcome;
  Histogram peak_hist, ever_hist, suffering_hist;
};

// Per strategy, each replicate draws a fresh immunization set and runs one
// SIR trajectory, so the densities reflect both sources of randomness.
// Replicate task (si, r) uses master stream (rng_seed, si * replicates + r);
// within a task, stream 0 selects the immunization set and stream 1 drives
// the simulation.
inline std::vector<StrategyComparison> compare_strategies(
    const Graph& g, const SirConfig& cfg, double immunize_fraction,
    const std::vector<Strategy>& strategies, std::size_t replicates, std::uint64_t rng_seed,
    double global_p = 0.5, std::size_t histogram_bins = 20, std::size_t workers = 1) {
  cfg.validate();
  if (replicates == 0) throw std::invalid_argument("compare_strategies: replicates must be >= 1");
  const std::size_t n = g.node_count();
  if (n == 0) throw std::invalid_argument("compare_strategies: empty graph");
  if (!(immunize_fraction >= 0.0 && immunize_fraction <= 0.99))
    throw std::invalid_argument("compare_strategies: fraction must lie in [0, 0.99]");
  const auto k = static_cast<std::size_t>(std::ceil(immunize_fraction * static_cast<double>(n)));

  std::vector<StrategyComparison> result(strategies.size());
  std::vector<SirReplicate> flat(strategies.size() * replicates);

  const std::size_t tasks = strategies.size() * replicates;
  parallel_for_index(tasks, workers, [&](std::size_t task) {
    const std::size_t si = task / replicates;
    const std::uint64_t task_master = Rng::stream(rng_seed, task).next_u64();

    std::vector<NodeId> immunized;
    if (k > 0) {
      StrategyConfig scfg;
      scfg.strategy = strategies[si];
      scfg.k = k;
      scfg.p = global_p;
      scfg.rng_seed = Rng::stream(task_master, 0).next_u64();
      immunized = select_seeds(g, scfg).seeds;
    }
    std::vector<char> mask(n, 0);
    for (NodeId v : immunized) mask[v] = 1;
    std::vector<NodeId> eligible;
    for (NodeId i = 0; i < n; ++i)
      if (!mask[i]) eligible.push_back(i);

    Rng sim_rng = Rng::stream(task_master, 1);
    flat[task] = detail::sir_single_run(g, cfg, mask, eligible, sim_rng);
  });

  for (std::size_t si = 0; si < strategies.size(); ++si) {
    auto& sc = result[si];
    sc.strategy = strategies[si];
    sc.outcome.replicates.assign(flat.begin() + static_cast<std::ptrdiff_t>(si * replicates),
                                 flat.begin() + static_cast<std::ptrdiff_t>((si + 1) * replicates));
    detail::summarize_outcome(sc.outcome);
    std::vector<double> peak, ever, suf;
    for (const auto& r : sc.outcome.replicates) {
      peak.push_back(r.peak_fraction);
      ever.push_back(r.ever_fraction);
      suf.push_back(r.total_suffering);
    }
    sc.peak_hist = histogram01(peak, histogram_bins);
    sc.ever_hist = histogram01(ever, histogram_bins);
    sc.suffering_hist = histogram01(suf, histogram_bins);
  }
  return result;
}

} // namespace fpseed
