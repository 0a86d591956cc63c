#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpseed/fpseed.hpp"

namespace {

using fpseed::Json;

struct CommonOpts {
  std::string input;
  std::string output;
  std::string format = "json";
  std::uint64_t rng_seed = 0;
  std::size_t workers = 0; // 0 = FPSEED_WORKERS env or hardware
};

std::size_t resolve_workers(std::size_t flag_value) {
  return flag_value == 0 ? fpseed::default_workers() : flag_value;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

Json provenance(const std::string& command, std::uint64_t rng_seed, const Json& spec_echo) {
  Json p;
  p["tool"] = fpseed::kToolName;
  p["version"] = fpseed::kVersion;
  p["command"] = command;
  p["rng"] = fpseed::kRngName;
  p["rng_seed"] = rng_seed;
  p["spec"] = spec_echo;
  return p;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty grid: " + csv);
  return out;
}

std::vector<fpseed::Strategy> parse_strategies(const std::string& csv) {
  std::vector<fpseed::Strategy> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(fpseed::strategy_from_name(item));
  if (out.empty()) throw std::invalid_argument("no strategies given");
  return out;
}

// Generator flags shared by the commands that accept either an edge-list
// file or an in-process generated graph.
struct GenOpts {
  std::string family;
  std::size_t n = 200;
  double p_edge = 0.05;
  double gamma = 2.0;
  std::size_t m_edges = 0; // 0 = 2n
  std::size_t k_neighbors = 4;
  double p_rewire = 0.1;

  fpseed::GenSpec to_spec(std::uint64_t rng_seed) const {
    fpseed::GenSpec spec;
    spec.family = fpseed::family_from_name(family);
    spec.n = n;
    spec.p_edge = p_edge;
    spec.gamma = gamma;
    spec.m_edges = m_edges == 0 ? 2 * n : m_edges;
    spec.k_neighbors = k_neighbors;
    spec.p_rewire = p_rewire;
    spec.rng_seed = rng_seed;
    return spec;
  }
};

void add_gen_flags(CLI::App* cmd, GenOpts& gen) {
  cmd->add_option("--family", gen.family,
                  "graph family (erdos_renyi|scale_free|small_world|star)");
  cmd->add_option("--n", gen.n, "node count");
  cmd->add_option("--p-edge", gen.p_edge, "edge probability (erdos_renyi)");
  cmd->add_option("--gamma", gen.gamma, "weight exponent > 1 (scale_free)");
  cmd->add_option("--m-edges", gen.m_edges, "edge budget, 0 = 2n (scale_free)");
  cmd->add_option("--k-neighbors", gen.k_neighbors, "even ring degree (small_world)");
  cmd->add_option("--p-rewire", gen.p_rewire, "rewiring probability (small_world)");
}

// Resolves the experiment subject: a user-supplied edge list or a GenSpec.
fpseed::Graph obtain_graph(const CommonOpts& common, const GenOpts& gen, Json& spec_echo) {
  if (!common.input.empty() && !gen.family.empty())
    throw CLI::ValidationError("graph source", "give either --input or --family, not both");
  if (!common.input.empty()) {
    auto [g, report] = fpseed::load_graph(common.input);
    spec_echo["input"] = common.input;
    spec_echo["edges_kept"] = report.edges_kept;
    spec_echo["self_loops_dropped"] = report.self_loops_dropped;
    spec_echo["duplicates_merged"] = report.duplicates_merged;
    return std::move(g);
  }
  if (gen.family.empty())
    throw CLI::ValidationError("graph source", "one of --input or --family is required");
  const auto spec = gen.to_spec(common.rng_seed);
  auto generated = fpseed::generate(spec);
  spec_echo["gen_spec"] = fpseed::to_json(spec);
  spec_echo["isolated_pruned"] = generated.isolated_pruned;
  return std::move(generated.graph);
}

int run_gen(const CommonOpts& common, const GenOpts& gen) {
  const auto spec = gen.to_spec(common.rng_seed);
  const auto generated = fpseed::generate(spec);
  Json prov = provenance("gen", common.rng_seed, fpseed::to_json(spec));
  prov["isolated_pruned"] = generated.isolated_pruned;

  std::ostringstream body;
  fpseed::write_edge_list(body, generated.graph, {"provenance: " + prov.dump()});
  write_output(common.output, body.str());
  return 0;
}

int run_stats(const CommonOpts& common, const GenOpts& gen, const std::string& two_k_out) {
  Json spec_echo;
  const fpseed::Graph g = obtain_graph(common, gen, spec_echo);
  const fpseed::MeansReport report = fpseed::means_report(g);
  const auto moments = fpseed::degree_moments(g);

  if (!two_k_out.empty()) {
    std::ofstream out(two_k_out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + two_k_out);
    fpseed::write_2k_csv(out, fpseed::extract_2k(g));
  }

  Json doc = fpseed::to_json(report);
  Json prov = provenance("stats", common.rng_seed, spec_echo);
  prov["node_count"] = g.node_count();
  prov["edge_count"] = g.edge_count();
  // both computation routes for the local mean, for cross-checking
  prov["mu_L_direct"] = report.mu_L;
  prov["mu_L_moment_route"] = report.mu_G + report.inversity * fpseed::psi(moments);
  doc["provenance"] = prov;

  if (common.format == "csv") {
    std::ostringstream body;
    body << "# provenance: " << prov.dump() << "\n";
    body << "mu_D,mu_L,mu_G,inversity,psi,assortativity,leverage_local,leverage_global,"
            "fp_fraction\n";
    body << fpseed::format_double(report.mu_D) << ',' << fpseed::format_double(report.mu_L)
         << ',' << fpseed::format_double(report.mu_G) << ','
         << fpseed::format_double(report.inversity) << ',' << fpseed::format_double(report.psi)
         << ',' << fpseed::format_double(report.assortativity) << ','
         << fpseed::format_double(report.leverage_local) << ','
         << fpseed::format_double(report.leverage_global) << ','
         << fpseed::format_double(report.fp_fraction) << "\n";
    write_output(common.output, body.str());
  } else {
    write_output(common.output, doc.dump(2) + "\n");
  }
  return 0;
}

int run_seed(const CommonOpts& common, const GenOpts& gen, const std::string& strategy,
             std::size_t k, double p, std::size_t max_rounds) {
  Json spec_echo;
  const fpseed::Graph g = obtain_graph(common, gen, spec_echo);

  fpseed::StrategyConfig cfg;
  cfg.strategy = fpseed::strategy_from_name(strategy);
  cfg.k = k;
  cfg.p = p;
  cfg.rng_seed = common.rng_seed;
  cfg.max_rounds = max_rounds;
  const fpseed::SeedSet seeds = fpseed::select_seeds(g, cfg);

  Json doc = fpseed::to_json(g, seeds, cfg);
  spec_echo["strategy"] = strategy;
  spec_echo["k"] = k;
  spec_echo["p"] = p;
  doc["provenance"] = provenance("seed", common.rng_seed, spec_echo);
  write_output(common.output, doc.dump(2) + "\n");
  return 0;
}

int run_threshold_curve(const CommonOpts& common, const GenOpts& gen,
                        const std::string& strategies_csv, const std::string& fractions_csv,
                        std::size_t replicates, double p) {
  Json spec_echo;
  const fpseed::Graph g = obtain_graph(common, gen, spec_echo);
  const auto strategies = parse_strategies(strategies_csv);
  const auto fractions = parse_grid(fractions_csv);

  const auto curve = fpseed::immunization_curve(g, strategies, fractions, replicates,
                                                common.rng_seed, p, resolve_workers(common.workers));

  spec_echo["strategies"] = strategies_csv;
  spec_echo["fractions"] = fractions_csv;
  spec_echo["replicates"] = replicates;
  spec_echo["p"] = p;
  const Json prov = provenance("threshold-curve", common.rng_seed, spec_echo);

  if (common.format == "csv") {
    std::ostringstream body;
    body << "# provenance: " << prov.dump() << "\n";
    body << "strategy,fraction,replicate,metric,value\n";
    for (const auto& pt : curve.points)
      for (std::size_t r = 0; r < pt.taus.size(); ++r)
        body << fpseed::strategy_name(pt.strategy) << ',' << fpseed::format_double(pt.fraction)
             << ',' << r << ",tau," << fpseed::format_double(pt.taus[r]) << "\n";
    write_output(common.output, body.str());
  } else {
    Json doc;
    Json points = Json::array();
    for (const auto& pt : curve.points) {
      Json jp;
      jp["strategy"] = fpseed::strategy_name(pt.strategy);
      jp["fraction"] = pt.fraction;
      jp["mean_tau"] = pt.mean_tau;
      jp["ci_lo"] = pt.ci_lo;
      jp["ci_hi"] = pt.ci_hi;
      jp["replicates"] = pt.taus.size();
      points.push_back(jp);
    }
    doc["points"] = points;
    doc["provenance"] = prov;
    write_output(common.output, doc.dump(2) + "\n");
  }
  return 0;
}

int run_epidemic(const CommonOpts& common, const GenOpts& gen, const std::string& strategies_csv,
                 double immunize_fraction, double beta, double delta, double initial_fraction,
                 std::size_t replicates, std::size_t t_max, double p, std::size_t bins) {
  Json spec_echo;
  const fpseed::Graph g = obtain_graph(common, gen, spec_echo);
  const auto strategies = parse_strategies(strategies_csv);

  fpseed::SirConfig cfg;
  cfg.beta = beta;
  cfg.delta = delta;
  cfg.initial_infected_fraction = initial_fraction;
  cfg.replicates = replicates;
  cfg.t_max = t_max;
  cfg.rng_seed = common.rng_seed;

  const auto comparison =
      fpseed::compare_strategies(g, cfg, immunize_fraction, strategies, replicates,
                                 common.rng_seed, p, bins, resolve_workers(common.workers));

  spec_echo["strategies"] = strategies_csv;
  spec_echo["immunize_fraction"] = immunize_fraction;
  spec_echo["beta"] = beta;
  spec_echo["delta"] = delta;
  spec_echo["initial_infected_fraction"] = initial_fraction;
  spec_echo["replicates"] = replicates;
  spec_echo["t_max"] = t_max;
  spec_echo["p"] = p;
  const Json prov = provenance("epidemic", common.rng_seed, spec_echo);

  if (common.format == "csv") {
    std::ostringstream body;
    body << "# provenance: " << prov.dump() << "\n";
    body << "strategy,fraction,replicate,metric,value\n";
    for (const auto& sc : comparison) {
      const char* name = fpseed::strategy_name(sc.strategy);
      for (std::size_t r = 0; r < sc.outcome.replicates.size(); ++r) {
        const auto& rep = sc.outcome.replicates[r];
        body << name << ',' << fpseed::format_double(immunize_fraction) << ',' << r
             << ",peak_fraction," << fpseed::format_double(rep.peak_fraction) << "\n";
        body << name << ',' << fpseed::format_double(immunize_fraction) << ',' << r
             << ",ever_fraction," << fpseed::format_double(rep.ever_fraction) << "\n";
        body << name << ',' << fpseed::format_double(immunize_fraction) << ',' << r
             << ",total_suffering," << fpseed::format_double(rep.total_suffering) << "\n";
        body << name << ',' << fpseed::format_double(immunize_fraction) << ',' << r
             << ",duration," << rep.duration << "\n";
      }
    }
    write_output(common.output, body.str());
  } else {
    Json doc;
    Json per_strategy = Json::array();
    const double z95 = 1.959963984540054;
    for (const auto& sc : comparison) {
      Json js;
      js["strategy"] = fpseed::strategy_name(sc.strategy);
      js["outcome"] = fpseed::to_json(sc.outcome);
      const auto rn = static_cast<double>(sc.outcome.replicates.size());
      auto ci = [&](const fpseed::Summary& s) {
        const double half = rn > 1 ? z95 * s.sd / std::sqrt(rn) : 0.0;
        return Json{{"lo", s.mean - half}, {"hi", s.mean + half}};
      };
      js["ci95"] = Json{{"peak_fraction", ci(sc.outcome.peak_fraction)},
                        {"ever_fraction", ci(sc.outcome.ever_fraction)},
                        {"total_suffering", ci(sc.outcome.total_suffering)}};
      js["histograms"] = Json{{"peak_fraction", fpseed::to_json(sc.peak_hist)},
                              {"ever_fraction", fpseed::to_json(sc.ever_hist)},
                              {"total_suffering", fpseed::to_json(sc.suffering_hist)}};
      per_strategy.push_back(js);
    }
    doc["strategies"] = per_strategy;
    doc["provenance"] = prov;
    write_output(common.output, doc.dump(2) + "\n");
  }
  return 0;
}

int run_sweep(const CommonOpts& common, const GenOpts& gen, const std::string& grid_csv,
              std::size_t replicates) {
  if (gen.family.empty())
    throw CLI::ValidationError("sweep", "--family is required");
  const fpseed::Family family = fpseed::family_from_name(gen.family);
  const auto grid = parse_grid(grid_csv);

  Json spec_echo;
  spec_echo["family"] = gen.family;
  spec_echo["n"] = gen.n;
  spec_echo["grid"] = grid_csv;
  spec_echo["replicates"] = replicates;
  if (family == fpseed::Family::scale_free)
    spec_echo["m_edges"] = gen.m_edges == 0 ? 2 * gen.n : gen.m_edges;
  if (family == fpseed::Family::small_world) spec_echo["k_neighbors"] = gen.k_neighbors;
  const Json prov = provenance("sweep", common.rng_seed, spec_echo);

  struct Row {
    std::string params;
    std::size_t replicate;
    double mu_D, mu_L, mu_G, inversity, lev_l, lev_g;
  };
  const std::size_t tasks = grid.size() * replicates;
  std::vector<Row> rows(tasks);
  fpseed::parallel_for_index(tasks, resolve_workers(common.workers), [&](std::size_t task) {
    const std::size_t gi = task / replicates;
    const std::size_t rep = task % replicates;
    fpseed::GenSpec spec = gen.to_spec(fpseed::Rng::stream(common.rng_seed, task).next_u64());
    std::string param_name;
    switch (family) {
      case fpseed::Family::erdos_renyi:
        spec.p_edge = grid[gi];
        param_name = "p_edge";
        break;
      case fpseed::Family::scale_free:
        spec.gamma = grid[gi];
        param_name = "gamma";
        break;
      case fpseed::Family::small_world:
        spec.p_rewire = grid[gi];
        param_name = "p_rewire";
        break;
      case fpseed::Family::star:
        param_name = "none";
        break;
    }
    Row row;
    row.params = "n=" + std::to_string(spec.n) + ";" + param_name + "=" +
                 fpseed::format_double(grid[gi]);
    row.replicate = rep;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.mu_D = row.mu_L = row.mu_G = row.inversity = row.lev_l = row.lev_g = nan;
    try {
      const auto generated = fpseed::generate(spec);
      const auto& g = generated.graph;
      row.mu_D = fpseed::mean_degree(g);
      row.mu_L = fpseed::local_mean(g);
      row.mu_G = fpseed::global_mean(g);
      row.lev_l = row.mu_L / row.mu_D;
      row.lev_g = row.mu_G / row.mu_D;
      row.inversity = fpseed::inversity(g); // nan stays for regular graphs
    } catch (const std::invalid_argument&) {
      // row keeps nan for whatever could not be computed
    }
    rows[task] = row;
  });

  std::ostringstream body;
  body << "# provenance: " << prov.dump() << "\n";
  body << "family,params,replicate,mu_D,mu_L,mu_G,inversity,leverage_local,leverage_global\n";
  for (const auto& row : rows)
    body << gen.family << ',' << row.params << ',' << row.replicate << ','
         << fpseed::format_double(row.mu_D) << ',' << fpseed::format_double(row.mu_L) << ','
         << fpseed::format_double(row.mu_G) << ',' << fpseed::format_double(row.inversity) << ','
         << fpseed::format_double(row.lev_l) << ',' << fpseed::format_double(row.lev_g) << "\n";
  write_output(common.output, body.str());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"friendship-paradox seeding and epidemic toolkit"};
  app.require_subcommand(1);

  CommonOpts common;
  GenOpts gen;

  auto add_common = [&](CLI::App* cmd, bool with_input = true) {
    if (with_input) cmd->add_option("--input", common.input, "edge-list file");
    cmd->add_option("--output", common.output, "output file (default stdout)");
    cmd->add_option("--format", common.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--rng-seed", common.rng_seed, "master RNG seed");
    cmd->add_option("--workers", common.workers,
                    "worker threads (0 = FPSEED_WORKERS env or hardware)");
  };

  auto* cmd_gen = app.add_subcommand("gen", "generate a graph, emit an edge list");
  add_common(cmd_gen, false);
  add_gen_flags(cmd_gen, gen);

  std::string two_k_out;
  auto* cmd_stats = app.add_subcommand("stats", "degree/mean/inversity report");
  add_common(cmd_stats);
  add_gen_flags(cmd_stats, gen);
  cmd_stats->add_option("--two-k-out", two_k_out,
                        "also write the degree-pair distribution as CSV");

  std::string strategy = "random";
  std::size_t k = 1;
  double p = 0.5;
  std::size_t max_rounds = 0;
  auto* cmd_seed = app.add_subcommand("seed", "select seed nodes");
  add_common(cmd_seed);
  add_gen_flags(cmd_seed, gen);
  cmd_seed->add_option("--strategy", strategy, "random|local|global");
  cmd_seed->add_option("--k", k, "seed count");
  cmd_seed->add_option("--p", p, "global admission probability");
  cmd_seed->add_option("--max-rounds", max_rounds, "round budget (0 = 1000k)");

  std::string strategies_csv = "random,local,global";
  std::string fractions_csv = "0.01,0.05,0.1,0.25,0.5,0.75";
  std::size_t replicates = 20;
  auto* cmd_curve = app.add_subcommand("threshold-curve", "epidemic threshold vs immunization");
  add_common(cmd_curve);
  add_gen_flags(cmd_curve, gen);
  cmd_curve->add_option("--strategies", strategies_csv, "comma list");
  cmd_curve->add_option("--fractions", fractions_csv, "comma list in [0,0.99]");
  cmd_curve->add_option("--replicates", replicates, "replicates per point");
  cmd_curve->add_option("--p", p, "global admission probability");

  double immunize_fraction = 0.2;
  double beta = 0.20, delta = 0.15, initial_fraction = 0.01;
  std::size_t sir_replicates = 100, t_max = 10000, bins = 20;
  auto* cmd_epi = app.add_subcommand("epidemic", "SIR outcomes per immunization strategy");
  add_common(cmd_epi);
  add_gen_flags(cmd_epi, gen);
  cmd_epi->add_option("--strategies", strategies_csv, "comma list");
  cmd_epi->add_option("--immunize-fraction", immunize_fraction, "fraction in [0,0.99]");
  cmd_epi->add_option("--beta", beta, "per-neighbor transmit probability");
  cmd_epi->add_option("--delta", delta, "per-period cure probability");
  cmd_epi->add_option("--initial-fraction", initial_fraction, "initially infected fraction");
  cmd_epi->add_option("--replicates", sir_replicates, "ensemble size");
  cmd_epi->add_option("--t-max", t_max, "period cap");
  cmd_epi->add_option("--p", p, "global admission probability");
  cmd_epi->add_option("--bins", bins, "histogram bins");

  std::string grid_csv = "0.005,0.01,0.05,0.1,0.5,0.95";
  std::size_t sweep_replicates = 100;
  auto* cmd_sweep = app.add_subcommand("sweep", "metric sweep over a generator grid");
  add_common(cmd_sweep, false);
  add_gen_flags(cmd_sweep, gen);
  cmd_sweep->add_option("--grid", grid_csv, "family parameter grid (comma list)");
  cmd_sweep->add_option("--replicates", sweep_replicates, "graphs per grid point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_gen)) return run_gen(common, gen);
    if (app.got_subcommand(cmd_stats)) return run_stats(common, gen, two_k_out);
    if (app.got_subcommand(cmd_seed))
      return run_seed(common, gen, strategy, k, p, max_rounds);
    if (app.got_subcommand(cmd_curve))
      return run_threshold_curve(common, gen, strategies_csv, fractions_csv, replicates, p);
    if (app.got_subcommand(cmd_epi))
      return run_epidemic(common, gen, strategies_csv, immunize_fraction, beta, delta,
                          initial_fraction, sir_replicates, t_max, p, bins);
    if (app.got_subcommand(cmd_sweep))
      return run_sweep(common, gen, grid_csv, sweep_replicates);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
