#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fpseed/io.hpp"
#include "support/fixtures.hpp"

using namespace fpseed;

TEST_CASE("edge list parsing skips comments and blank lines") {
  std::istringstream in(
      "# produced by hand\n"
      "\n"
      "a b\n"
      "  \n"
      "b\tc\n"
      "# trailing comment\n"
      "c d\n");
  const auto edges = read_edge_list(in);
  REQUIRE(edges.size() == 3);
  REQUIRE(edges[1] == std::pair<std::string, std::string>{"b", "c"});
}

TEST_CASE("edge list rejects malformed rows") {
  std::istringstream one_token("a\n");
  REQUIRE_THROWS_AS(read_edge_list(one_token), std::invalid_argument);
  std::istringstream three_tokens("a b c\n");
  REQUIRE_THROWS_AS(read_edge_list(three_tokens), std::invalid_argument);
}

TEST_CASE("edge list round trip preserves labels and structure") {
  const auto g = testsupport::four_node_example();
  std::ostringstream out;
  write_edge_list(out, g, {"sample graph"});
  std::istringstream in(out.str());
  auto [h, report] = build_graph(read_edge_list(in));
  REQUIRE(h.node_count() == g.node_count());
  REQUIRE(h.undirected_edges() == g.undirected_edges());
  REQUIRE(h.label(2) == "c");
  REQUIRE(report.edges_kept == 4);
}

TEST_CASE("2k csv round trip") {
  const auto d = extract_2k(testsupport::four_node_example());
  std::ostringstream out;
  write_2k_csv(out, d);
  std::istringstream in(out.str());
  const auto back = read_2k_csv(in);
  REQUIRE(back.entries.size() == d.entries.size());
  REQUIRE_THAT(inversity_from_2k(back),
               Catch::Matchers::WithinAbs(inversity_from_2k(d), 1e-15));

  std::istringstream bad_header("a,b,c\n1,2,3\n");
  REQUIRE_THROWS_AS(read_2k_csv(bad_header), std::invalid_argument);
  std::istringstream bad_row("origin_degree,destination_degree,multiplicity\n1;2;3\n");
  REQUIRE_THROWS_AS(read_2k_csv(bad_row), std::invalid_argument);
}

TEST_CASE("means report serializes the nine documented fields") {
  const auto j = to_json(means_report(testsupport::four_node_example()));
  const std::vector<std::string> keys = {"mu_D",          "mu_L",
                                         "mu_G",          "inversity",
                                         "psi",           "assortativity",
                                         "leverage_local", "leverage_global",
                                         "fp_fraction"};
  REQUIRE(j.size() == keys.size());
  for (const auto& k : keys) REQUIRE(j.contains(k));
  REQUIRE(j["mu_D"].get<double>() == 2.0);
}

TEST_CASE("generator spec json round trip") {
  GenSpec spec;
  spec.family = Family::small_world;
  spec.n = 64;
  spec.k_neighbors = 6;
  spec.p_rewire = 0.25;
  spec.rng_seed = 99;
  const auto j = to_json(spec);
  const auto back = gen_spec_from_json(j);
  REQUIRE(back.family == spec.family);
  REQUIRE(back.n == spec.n);
  REQUIRE(back.k_neighbors == spec.k_neighbors);
  REQUIRE(back.p_rewire == spec.p_rewire);
  REQUIRE(back.rng_seed == spec.rng_seed);
  REQUIRE_FALSE(j.contains("p_edge")); // only family-relevant parameters serialize
}

TEST_CASE("seed set json carries labels") {
  const auto g = testsupport::four_node_example();
  StrategyConfig cfg;
  cfg.strategy = Strategy::local;
  cfg.k = 2;
  cfg.rng_seed = 6;
  const auto seeds = select_seeds(g, cfg);
  const auto j = to_json(g, seeds, cfg);
  REQUIRE(j["strategy"] == "local");
  REQUIRE(j["k"] == 2);
  REQUIRE(j["seeds"].size() == 2);
  for (const auto& s : j["seeds"]) {
    const std::string label = s.get<std::string>();
    REQUIRE((label == "a" || label == "b" || label == "c" || label == "d"));
  }
}

TEST_CASE("format_double emits shortest round-trip forms") {
  REQUIRE(format_double(0.05) == "0.05");
  REQUIRE(format_double(2.25) == "2.25");
  REQUIRE(format_double(std::numeric_limits<double>::infinity()) == "inf");
  REQUIRE(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}
