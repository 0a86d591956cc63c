#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fpseed/epidemic.hpp"
#include "fpseed/generators.hpp"
#include "fpseed/graph.hpp"
#include "fpseed/metrics.hpp"
#include "fpseed/seeding.hpp"

namespace fpseed {

using Json = nlohmann::ordered_json;

// Shortest round-trip decimal form; "inf"/"nan" for non-finite values.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// --- edge lists -----------------------------------------------------------
// One edge per line, two whitespace-separated tokens; '#' lines and blank
// lines are ignored.

inline std::vector<std::pair<std::string, std::string>> read_edge_list(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;      // blank
    if (a[0] == '#') continue;     // comment
    if (!(ls >> b) || (ls >> extra))
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected exactly two tokens");
    edges.emplace_back(std::move(a), std::move(b));
  }
  return edges;
}

inline std::vector<std::pair<std::string, std::string>> read_edge_list_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  return read_edge_list(in);
}

inline std::pair<Graph, EdgeListReport> load_graph(const std::string& path) {
  return build_graph(read_edge_list_file(path));
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<std::string>& comment_lines = {}) {
  for (const auto& c : comment_lines) out << "# " << c << '\n';
  for (auto [i, j] : g.undirected_edges()) out << g.label(i) << ' ' << g.label(j) << '\n';
}

// --- 2k distribution CSV ---------------------------------------------------

inline void write_2k_csv(std::ostream& out, const TwoKDistribution& d) {
  out << "origin_degree,destination_degree,multiplicity\n";
  for (const auto& e : d.entries)
    out << e.origin_degree << ',' << e.destination_degree << ',' << e.multiplicity << '\n';
}

inline TwoKDistribution read_2k_csv(std::istream& in) {
  TwoKDistribution d;
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("2k csv: empty input");
  if (line != "origin_degree,destination_degree,multiplicity" &&
      line != "origin_degree,destination_degree,multiplicity\r")
    throw std::invalid_argument("2k csv: unexpected header");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    TwoKEntry e;
    char comma1 = 0, comma2 = 0;
    std::istringstream ls(line);
    if (!(ls >> e.origin_degree >> comma1 >> e.destination_degree >> comma2 >> e.multiplicity) ||
        comma1 != ',' || comma2 != ',')
      throw std::invalid_argument("2k csv line " + std::to_string(line_no) + ": malformed row");
    d.entries.push_back(e);
  }
  return d;
}

// --- JSON ------------------------------------------------------------------

inline Json to_json(const MeansReport& r) {
  Json j;
  j["mu_D"] = r.mu_D;
  j["mu_L"] = r.mu_L;
  j["mu_G"] = r.mu_G;
  j["inversity"] = r.inversity;
  j["psi"] = r.psi;
  j["assortativity"] = r.assortativity;
  j["leverage_local"] = r.leverage_local;
  j["leverage_global"] = r.leverage_global;
  j["fp_fraction"] = r.fp_fraction;
  return j;
}

inline Json to_json(const GenSpec& s) {
  Json j;
  j["family"] = family_name(s.family);
  j["n"] = s.n;
  switch (s.family) {
    case Family::erdos_renyi:
      j["p_edge"] = s.p_edge;
      break;
    case Family::scale_free:
      j["gamma"] = s.gamma;
      j["m_edges"] = s.m_edges;
      break;
    case Family::small_world:
      j["k_neighbors"] = s.k_neighbors;
      j["p_rewire"] = s.p_rewire;
      break;
    case Family::star:
      break;
  }
  j["rng_seed"] = s.rng_seed;
  return j;
}

inline GenSpec gen_spec_from_json(const Json& j) {
  GenSpec s;
  s.family = family_from_name(j.at("family").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  if (j.contains("p_edge")) s.p_edge = j["p_edge"].get<double>();
  if (j.contains("gamma")) s.gamma = j["gamma"].get<double>();
  if (j.contains("m_edges")) s.m_edges = j["m_edges"].get<std::size_t>();
  if (j.contains("k_neighbors")) s.k_neighbors = j["k_neighbors"].get<std::size_t>();
  if (j.contains("p_rewire")) s.p_rewire = j["p_rewire"].get<double>();
  if (j.contains("rng_seed")) s.rng_seed = j["rng_seed"].get<std::uint64_t>();
  s.validate();
  return s;
}

inline Json to_json(const Graph& g, const SeedSet& seeds, const StrategyConfig& cfg) {
  Json j;
  j["strategy"] = strategy_name(cfg.strategy);
  j["k"] = cfg.k;
  j["p"] = cfg.p;
  j["rng_seed"] = cfg.rng_seed;
  Json labels = Json::array();
  for (NodeId v : seeds.seeds) labels.push_back(g.label(v));
  j["seeds"] = labels;
  j["rounds_used"] = seeds.rounds_used;
  j["initial_draws"] = seeds.initial_draws;
  return j;
}

inline Json to_json(const Summary& s) {
  return Json{{"mean", s.mean}, {"sd", s.sd}};
}

inline Json to_json(const SirOutcome& o) {
  Json j;
  j["peak_fraction"] = to_json(o.peak_fraction);
  j["ever_fraction"] = to_json(o.ever_fraction);
  j["total_suffering"] = to_json(o.total_suffering);
  j["mean_duration"] = o.mean_duration;
  j["replicates"] = o.replicates.size();
  j["degenerate"] = o.degenerate;
  return j;
}

inline Json to_json(const Histogram& h) {
  Json j;
  j["bin_count"] = h.bin_count;
  j["counts"] = h.counts;
  return j;
}

} // namespace fpseed
