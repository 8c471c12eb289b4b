// Command-line front end: generate instances, dump per-edge tables, bracket
// the near-minimal-tree cost curve, run the small-instance oracle battery,
// sample window percolation, and drive full experiment configs.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mstlab/excess.hpp"
#include "mstlab/experiments.hpp"
#include "mstlab/format.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/near_mst.hpp"
#include "mstlab/network.hpp"
#include "mstlab/oracle.hpp"
#include "mstlab/percolation.hpp"
#include "mstlab/report_io.hpp"
#include "mstlab/rng.hpp"

namespace {

using namespace mstlab;

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty value list: " + csv);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

Network load_or_throw(const std::string& path) {
  Network net = load_network(path);
  validate_network(net);
  return net;
}

int cmd_gen(const std::string& model, int d, std::int64_t m, std::int64_t n,
            const std::string& dist, std::uint64_t seed,
            const std::string& cutoff, const std::string& out) {
  Network net;
  if (model == "lattice") {
    if (m < 2) throw std::invalid_argument("lattice model needs --m >= 2");
    LatticeSpec spec;
    spec.d = d;
    spec.m = m;
    spec.dist = dist;
    spec.seed = seed;
    net = gen_lattice(spec);
  } else if (model == "euclidean") {
    if (n < 2) throw std::invalid_argument("euclidean model needs --n >= 2");
    EuclideanSpec spec;
    spec.d = d;
    spec.n = n;
    spec.seed = seed;
    spec.cutoff = (cutoff == "auto") ? 0.0 : std::stod(cutoff);
    net = gen_euclidean(spec);
  } else {
    throw std::invalid_argument("unknown model: " + model);
  }
  save_network(net, out);
  std::cout << model << " network: " << net.n_vertices << " vertices, "
            << net.n_edges() << " edges -> " << out << "\n";
  return 0;
}

int cmd_excess(const std::string& in, const std::string& out) {
  Network net = load_or_throw(in);
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  std::ofstream f = open_out(out);
  f << "edge_id,u,v,len,perc,exc,in_mst\n";
  for (EdgeId e = 0; e < net.n_edges(); ++e) {
    const ExcessRow& r = tbl.rows[e];
    f << e << ',' << net.edges[e].u << ',' << net.edges[e].v << ','
      << format_double(r.len) << ',' << format_double(r.perc) << ','
      << format_double(r.exc) << ',' << (r.in_mst ? 1 : 0) << '\n';
  }
  std::cout << "excess table for " << net.n_edges() << " edges -> " << out
            << "\n";
  return 0;
}

int cmd_mu(const std::string& in, const std::string& xgrid,
           const std::string& out) {
  Network net = load_or_throw(in);
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  MuEstimate est = empirical_mu(tbl, parse_grid(xgrid));
  std::ofstream f = open_out(out);
  f << "x,mu_hat,density_hat,trusted\n";
  for (std::size_t i = 0; i < est.x_grid.size(); ++i) {
    f << format_double(est.x_grid[i]) << ',' << format_double(est.mu_hat[i])
      << ',' << format_double(est.density_hat[i]) << ','
      << (est.trusted[i] ? 1 : 0) << '\n';
  }
  std::cout << "mu estimate on " << est.x_grid.size() << " grid points -> "
            << out << "\n";
  return 0;
}

int cmd_curve(const std::string& in, const std::string& deltas_csv,
              const std::string& out) {
  Network net = load_or_throw(in);
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  std::vector<double> deltas = parse_grid(deltas_csv);
  std::sort(deltas.begin(), deltas.end());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  EpsilonCurve curve = epsilon_curve(net, mst, tbl, deltas);
  std::ofstream f = open_out(out);
  f << "k,delta,lb,ub,exact,ub_strategy\n";
  for (const EpsilonRow& r : curve.rows) {
    f << r.k << ',' << format_double(r.delta) << ',' << format_double(r.lb)
      << ',' << format_double(r.ub) << ',';
    if (r.exact) f << format_double(*r.exact);
    f << ',' << r.strategy << '\n';
  }
  std::cout << "epsilon curve with " << curve.rows.size() << " rows -> " << out
            << "\n";
  return 0;
}

int cmd_oracle(std::int64_t instances, std::uint64_t seed) {
  std::int64_t failed = 0;
  for (std::int64_t i = 0; i < instances; ++i) {
    Network net = random_oracle_instance(seed + static_cast<std::uint64_t>(i));
    SandwichOutcome outcome = sandwich_check(net);
    std::cout << "instance " << i << " (" << net.n_vertices << " vertices, "
              << net.n_edges() << " edges): ";
    if (outcome.pass) {
      std::cout << "pass\n";
    } else {
      std::cout << "FAIL: " << outcome.detail << "\n";
      ++failed;
    }
  }
  std::cout << (instances - failed) << "/" << instances << " instances pass\n";
  return failed == 0 ? 0 : 1;
}

int cmd_percolation(int d, double window, std::int64_t replicas,
                    std::uint64_t seed, const std::string& xgrid,
                    const std::string& out) {
  std::vector<double> grid = parse_grid(xgrid);
  std::filesystem::create_directories(out);
  std::vector<PercMarks> all;
  all.reserve(replicas);
  for (std::int64_t r = 0; r < replicas; ++r) {
    RootedSample s = sample_rooted(d, window, derive_seed(seed, "percolation", r));
    PercMarks marks = perc_marks_auto(s);
    std::string path = out + "/marks_" + std::to_string(r) + ".csv";
    std::ofstream f = open_out(path);
    f << (d == 2 ? "px,py" : "px,py,pz") << ",len,perc,exc,interior\n";
    for (std::size_t i = 0; i < marks.marks.size(); ++i) {
      const double* p = s.coords.data() + (i + 1) * d;
      for (int k = 0; k < d; ++k) f << format_double(p[k]) << ',';
      const Mark& mk = marks.marks[i];
      f << format_double(mk.len) << ',' << format_double(mk.perc) << ','
        << format_double(mk.exc) << ',' << (mk.interior ? 1 : 0) << '\n';
    }
    all.push_back(std::move(marks));
  }
  MuEstimate est = mu_density_estimate(all, grid);
  std::ofstream f = open_out(out + "/mu.csv");
  f << "x,mu_hat,density_hat,trusted\n";
  for (std::size_t i = 0; i < est.x_grid.size(); ++i) {
    f << format_double(est.x_grid[i]) << ',' << format_double(est.mu_hat[i])
      << ',' << format_double(est.density_hat[i]) << ','
      << (est.trusted[i] ? 1 : 0) << '\n';
  }
  std::cout << replicas << " window replicas -> " << out << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_path, int workers,
                   const std::string& out) {
  std::ifstream f(config_path);
  if (!f) throw std::runtime_error("cannot open config: " + config_path);
  std::stringstream buf;
  buf << f.rdbuf();
  ExperimentConfig cfg = config_from_json(buf.str());
  RunReport report = run_scaling_experiment(cfg, workers);
  write_report_files(report, out);
  std::cout << "experiment with " << report.sizes.size() << " sizes -> " << out
            << "/report.json\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-network MST laboratory"};
  app.require_subcommand(1);

  // gen
  std::string g_model = "lattice", g_dist = "uniform01", g_cutoff = "auto";
  std::string g_out;
  int g_d = 2;
  std::int64_t g_m = 0, g_n = 0;
  std::uint64_t g_seed = 1;
  CLI::App* gen = app.add_subcommand("gen", "generate a model instance");
  gen->add_option("--model", g_model, "lattice|euclidean")
      ->check(CLI::IsMember({"lattice", "euclidean"}));
  gen->add_option("--d", g_d, "dimension");
  gen->add_option("--m", g_m, "lattice side length");
  gen->add_option("--n", g_n, "euclidean point count");
  gen->add_option("--dist", g_dist, "uniform01|exp1")
      ->check(CLI::IsMember({"uniform01", "exp1"}));
  gen->add_option("--seed", g_seed, "base seed");
  gen->add_option("--cutoff", g_cutoff, "auto or a radius");
  gen->add_option("--out", g_out, "output path")->required();

  // excess
  std::string e_in, e_out;
  CLI::App* excess = app.add_subcommand("excess", "per-edge excess table");
  excess->add_option("--in", e_in, "network path")->required();
  excess->add_option("--out", e_out, "output CSV")->required();

  // mu
  std::string u_in, u_out, u_grid = "0.02,0.05,0.1,0.2";
  CLI::App* mu = app.add_subcommand("mu", "empirical excess measure");
  mu->add_option("--in", u_in, "network path")->required();
  mu->add_option("--xgrid", u_grid, "comma-separated thresholds");
  mu->add_option("--out", u_out, "output CSV")->required();

  // curve
  std::string c_in, c_out, c_deltas = "0.00625,0.0125,0.025,0.05,0.1";
  CLI::App* curve = app.add_subcommand("curve", "epsilon bracket curve");
  curve->add_option("--in", c_in, "network path")->required();
  curve->add_option("--deltas", c_deltas, "comma-separated swap fractions");
  curve->add_option("--out", c_out, "output CSV")->required();

  // oracle
  std::int64_t o_instances = 200;
  std::uint64_t o_seed = 1;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force bracket checks on small instances");
  oracle->add_option("--instances", o_instances, "instance count");
  oracle->add_option("--seed", o_seed, "base seed");

  // percolation
  int p_d = 2;
  double p_window = 50.0;
  std::int64_t p_replicas = 20;
  std::uint64_t p_seed = 1;
  std::string p_grid = "0.02,0.05,0.1,0.2", p_out;
  CLI::App* perc = app.add_subcommand("percolation", "window-rooted samples");
  perc->add_option("--d", p_d, "dimension");
  perc->add_option("--window", p_window, "half side W");
  perc->add_option("--replicas", p_replicas, "replica count");
  perc->add_option("--seed", p_seed, "base seed");
  perc->add_option("--xgrid", p_grid, "comma-separated thresholds");
  perc->add_option("--out", p_out, "output directory")->required();

  // experiment
  std::string x_config, x_out = ".";
  int x_workers = 1;
  CLI::App* experiment =
      app.add_subcommand("experiment", "run a full experiment config");
  experiment->add_option("--config", x_config, "JSON config path")->required();
  experiment->add_option("--workers", x_workers, "parallel workers");
  experiment->add_option("--out", x_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_gen(g_model, g_d, g_m, g_n, g_dist, g_seed, g_cutoff, g_out);
    if (excess->parsed()) return cmd_excess(e_in, e_out);
    if (mu->parsed()) return cmd_mu(u_in, u_grid, u_out);
    if (curve->parsed()) return cmd_curve(c_in, c_deltas, c_out);
    if (oracle->parsed()) return cmd_oracle(o_instances, o_seed);
    if (perc->parsed())
      return cmd_percolation(p_d, p_window, p_replicas, p_seed, p_grid, p_out);
    if (experiment->parsed())
      return cmd_experiment(x_config, x_workers, x_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
