#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fpseed/epidemic.hpp"
#include "fpseed/metrics.hpp"
#include "support/dense_eig.hpp"
#include "support/fixtures.hpp"

using namespace fpseed;
using Catch::Matchers::WithinAbs;

TEST_CASE("spectral radius of analytic graphs") {
  const auto star5 = largest_eigenvalue(testsupport::star(5));
  REQUIRE_THAT(star5.lambda1, WithinAbs(2.0, 1e-10));
  REQUIRE_THAT(star5.tau, WithinAbs(0.5, 1e-10));
  REQUIRE(star5.residual <= 1e-10 * std::max(1.0, star5.lambda1) + 1e-15);

  const auto k6 = largest_eigenvalue(testsupport::complete(6));
  REQUIRE_THAT(k6.lambda1, WithinAbs(5.0, 1e-10));
  REQUIRE_THAT(k6.tau, WithinAbs(0.2, 1e-10));
}

TEST_CASE("spectral radius of the four-node example matches the dense oracle") {
  const auto g = testsupport::four_node_example();
  const auto r = largest_eigenvalue(g);
  REQUIRE_THAT(r.lambda1, WithinAbs(2.17009, 1e-5));
  REQUIRE_THAT(r.tau, WithinAbs(0.46081, 1e-5));
  REQUIRE_THAT(r.lambda1, WithinAbs(testsupport::dense_lambda1(g), 1e-8));
  REQUIRE(r.iterations > 0);
}

TEST_CASE("edgeless graphs have infinite threshold") {
  const Graph g = Graph::from_edges(4, {});
  const auto r = largest_eigenvalue(g);
  REQUIRE(r.lambda1 == 0.0);
  REQUIRE(std::isinf(r.tau));
  REQUIRE(std::isinf(epidemic_threshold(g)));
  const Graph empty;
  REQUIRE(std::isinf(largest_eigenvalue(empty).tau));
}

TEST_CASE("power iteration agrees with the dense oracle on random graphs") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<std::size_t> size_dist(4, 50);
  std::uniform_real_distribution<double> p_dist(0.05, 0.6);
  for (int t = 0; t < 40; ++t) {
    const auto g = testsupport::random_graph(rng, size_dist(rng), p_dist(rng));
    const auto r = largest_eigenvalue(g);
    const double oracle = testsupport::dense_lambda1(g);
    REQUIRE_THAT(r.lambda1, WithinAbs(oracle, 1e-8));
    // dominant eigenvalue lies between mean and max degree
    REQUIRE(r.lambda1 >= mean_degree(g) - 1e-9);
    REQUIRE(r.lambda1 <= static_cast<double>(g.max_degree()) + 1e-9);
  }
}

TEST_CASE("bipartite spectra converge despite the +/- symmetry") {
  // even rings and stars are bipartite
  const auto ring = largest_eigenvalue(testsupport::ring(8));
  REQUIRE_THAT(ring.lambda1, WithinAbs(2.0, 1e-9));
  const auto star = largest_eigenvalue(testsupport::star(17));
  REQUIRE_THAT(star.lambda1, WithinAbs(4.0, 1e-9));
}

TEST_CASE("removing more nodes never raises the spectral radius") {
  std::mt19937 rng(64);
  for (int t = 0; t < 15; ++t) {
    const auto g = testsupport::random_graph(rng, 30, 0.2);
    const std::vector<NodeId> small{1, 4};
    const std::vector<NodeId> large{1, 4, 9, 22};
    const double l_small = largest_eigenvalue(g.remove_nodes(small)).lambda1;
    const double l_large = largest_eigenvalue(g.remove_nodes(large)).lambda1;
    REQUIRE(l_large <= l_small + 1e-10);
  }
}

TEST_CASE("regime classification") {
  const auto epidemic = classify_regime(0.20, 0.15, 0.5);
  REQUIRE(epidemic.regime == Regime::epidemic);
  REQUIRE_FALSE(epidemic.flagged);
  REQUIRE_THAT(epidemic.r0, WithinAbs(4.0 / 3.0, 1e-12));

  const auto dies = classify_regime(0.0, 0.5, 0.5);
  REQUIRE(dies.regime == Regime::dies_out);
  REQUIRE(dies.r0 == 0.0);

  const auto knife = classify_regime(0.25, 0.5, 0.5);
  REQUIRE(knife.regime == Regime::epidemic);
  REQUIRE(knife.flagged);

  const auto no_cure = classify_regime(0.3, 0.0, 0.5);
  REQUIRE(no_cure.regime == Regime::epidemic);
  REQUIRE(no_cure.flagged);
  REQUIRE(std::isinf(no_cure.r0));
}

TEST_CASE("sir with zero transmission infects nobody new") {
  SirConfig cfg;
  cfg.beta = 0.0;
  cfg.delta = 0.5;
  cfg.initial_infected_fraction = 0.25;
  cfg.replicates = 25;
  cfg.t_max = 1000;
  cfg.rng_seed = 7;
  const auto out = sir_simulate(testsupport::ring(8), cfg, {});
  for (const auto& rep : out.replicates) {
    REQUIRE_THAT(rep.ever_fraction, WithinAbs(0.25, 1e-12));
    REQUIRE_THAT(rep.peak_fraction, WithinAbs(0.25, 1e-12));
    REQUIRE(rep.duration >= 1);
    REQUIRE(rep.duration < cfg.t_max); // all initial infections recover
  }
}

TEST_CASE("deterministic two-period epidemic on the three-node path") {
  // pick a seed whose first replicate starts at the middle node
  std::uint64_t seed = 0;
  for (;; ++seed) {
    Rng probe = Rng::stream(seed, 0);
    if (probe.uniform_below(3) == 1) break;
  }
  SirConfig cfg;
  cfg.beta = 1.0;
  cfg.delta = 1.0;
  cfg.initial_infected_fraction = 0.2; // ceil(0.6) = 1 initial
  cfg.replicates = 1;
  cfg.t_max = 100;
  cfg.rng_seed = seed;
  const auto out = sir_simulate(testsupport::path(3), cfg, {});
  const auto& rep = out.replicates[0];
  REQUIRE(rep.duration == 2);
  REQUIRE_THAT(rep.ever_fraction, WithinAbs(1.0, 1e-12));
  REQUIRE_THAT(rep.peak_fraction, WithinAbs(2.0 / 3.0, 1e-12));
  REQUIRE_THAT(rep.total_suffering, WithinAbs(0.5, 1e-12)); // (1+2)/(3*2)
}

TEST_CASE("deterministic saturating epidemic on K4 without recovery") {
  SirConfig cfg;
  cfg.beta = 1.0;
  cfg.delta = 0.0;
  cfg.initial_infected_fraction = 0.01; // one initial node
  cfg.replicates = 8;
  cfg.t_max = 10;
  cfg.rng_seed = 3;
  const auto out = sir_simulate(testsupport::complete(4), cfg, {});
  for (const auto& rep : out.replicates) {
    REQUIRE_THAT(rep.ever_fraction, WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(rep.peak_fraction, WithinAbs(1.0, 1e-12));
    REQUIRE(rep.duration == 10);
    REQUIRE(rep.infected_node_periods == 1 + 4 * 9);
    REQUIRE_THAT(rep.total_suffering, WithinAbs(37.0 / 40.0, 1e-12));
  }
}

TEST_CASE("outcome invariants hold on random ensembles") {
  SirConfig cfg;
  cfg.replicates = 40;
  cfg.rng_seed = 99;
  std::mt19937 rng(12);
  const auto g = testsupport::random_graph(rng, 60, 0.08);
  const std::vector<NodeId> immunized{0, 5, 9};
  const auto out = sir_simulate(g, cfg, immunized);
  const double max_ever = static_cast<double>(60 - immunized.size()) / 60.0;
  for (const auto& rep : out.replicates) {
    REQUIRE(rep.peak_fraction <= rep.ever_fraction + 1e-12);
    REQUIRE(rep.total_suffering <= rep.ever_fraction + 1e-12);
    REQUIRE(rep.ever_fraction <= max_ever + 1e-12); // immunized stay uninfected
    REQUIRE(rep.ever_fraction >= 0.0);
  }
}

TEST_CASE("sir is deterministic and worker-count independent") {
  SirConfig cfg;
  cfg.replicates = 30;
  cfg.rng_seed = 31;
  const auto g = testsupport::star(40);
  const auto a = sir_simulate(g, cfg, {}, 1);
  const auto b = sir_simulate(g, cfg, {}, 4);
  for (std::size_t i = 0; i < cfg.replicates; ++i) {
    REQUIRE(a.replicates[i].ever_fraction == b.replicates[i].ever_fraction);
    REQUIRE(a.replicates[i].duration == b.replicates[i].duration);
  }
}

TEST_CASE("all-immunized simulation degenerates to zeros") {
  SirConfig cfg;
  cfg.replicates = 3;
  const auto g = testsupport::path(4);
  const auto out = sir_simulate(g, cfg, std::vector<NodeId>{0, 1, 2, 3});
  REQUIRE(out.degenerate);
  for (const auto& rep : out.replicates) {
    REQUIRE(rep.ever_fraction == 0.0);
    REQUIRE(rep.duration == 0);
    REQUIRE(rep.total_suffering == 0.0);
  }
}

TEST_CASE("immunizing a zero fraction reproduces the intact threshold") {
  const auto g = testsupport::four_node_example();
  const double intact = epidemic_threshold(g);
  const auto curve = immunization_curve(
      g, {Strategy::random, Strategy::local, Strategy::global}, {0.0}, 5, 17);
  for (const auto& pt : curve.points) {
    REQUIRE(pt.taus.size() == 5);
    for (double tau : pt.taus) REQUIRE_THAT(tau, WithinAbs(intact, 1e-12));
  }
}

TEST_CASE("hub removal separates neighbor seeding from random on a star") {
  const auto g = testsupport::star(101);
  const auto curve =
      immunization_curve(g, {Strategy::local, Strategy::random}, {0.01}, 40, 4242);
  const auto& local_pt = curve.points[0];
  const auto& random_pt = curve.points[1];

  auto count_protected = [](const ThresholdPoint& pt) {
    std::size_t c = 0;
    for (double tau : pt.taus) c += tau >= 1.0;
    return c;
  };
  const std::size_t local_hits = count_protected(local_pt);
  const std::size_t random_hits = count_protected(random_pt);
  // a local round almost surely nominates the hub; random at 1% almost never
  REQUIRE(local_hits >= 36);
  REQUIRE(random_hits <= 8);
  REQUIRE(local_pt.mean_tau >= 1.0);
}

TEST_CASE("with no immunization every strategy has the same outcome law") {
  SirConfig cfg;
  cfg.beta = 0.2;
  cfg.delta = 0.3;
  cfg.initial_infected_fraction = 0.05;
  cfg.rng_seed = 11;
  std::mt19937 rng(8);
  const auto g = testsupport::random_graph(rng, 50, 0.1);
  const auto comparison = compare_strategies(
      g, cfg, 0.0, {Strategy::random, Strategy::local, Strategy::global}, 400, 11);
  for (std::size_t i = 1; i < comparison.size(); ++i) {
    const auto& a = comparison[0].outcome.ever_fraction;
    const auto& b = comparison[i].outcome.ever_fraction;
    const double se = std::sqrt(a.sd * a.sd / 400.0 + b.sd * b.sd / 400.0);
    REQUIRE(std::abs(a.mean - b.mean) <= 4.0 * se + 1e-12);
  }
}

TEST_CASE("histograms partition the replicates") {
  SirConfig cfg;
  cfg.rng_seed = 5;
  const auto g = testsupport::star(30);
  const auto comparison =
      compare_strategies(g, cfg, 0.1, {Strategy::random}, 64, 5, 0.5, 16);
  const auto& h = comparison[0].peak_hist;
  REQUIRE(h.bin_count == 16);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  REQUIRE(total == 64);
}
