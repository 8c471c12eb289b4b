#include "mstlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "mstlab/excess.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/near_mst.hpp"
#include "mstlab/percolation.hpp"
#include "mstlab/quadrature.hpp"
#include "mstlab/rng.hpp"

namespace mstlab {

namespace {

using ordered_json = nlohmann::ordered_json;

const std::set<std::string> kAnalyses{"curve", "mu", "configs", "percolation"};

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.model != "lattice" && cfg.model != "euclidean")
    throw std::invalid_argument("unknown model");
  dist_density_bound(cfg.dist);  // rejects unknown distributions
  if (cfg.sizes.empty()) throw std::invalid_argument("sizes is empty");
  if (cfg.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    if (cfg.deltas[i] <= 0.0 || cfg.deltas[i] >= 1.0)
      throw std::invalid_argument("deltas must lie in (0, 1)");
    if (i > 0 && cfg.deltas[i] <= cfg.deltas[i - 1])
      throw std::invalid_argument("deltas must be strictly increasing");
  }
  if (cfg.analyses.empty()) throw std::invalid_argument("analyses is empty");
  for (const std::string& a : cfg.analyses)
    if (!kAnalyses.count(a)) throw std::invalid_argument("unknown analysis: " + a);
  if (!cfg.replica_seeds.empty() &&
      cfg.replica_seeds.size() != static_cast<std::size_t>(cfg.replicas))
    throw std::invalid_argument("replica_seeds length must match replicas");
  bool want_curve = std::count(cfg.analyses.begin(), cfg.analyses.end(), "curve");
  if (want_curve && cfg.deltas.empty())
    throw std::invalid_argument("curve analysis needs deltas");
  bool want_perc =
      std::count(cfg.analyses.begin(), cfg.analyses.end(), "percolation");
  if (want_perc) {
    if (!cfg.percolation)
      throw std::invalid_argument("percolation analysis needs a percolation block");
    const PercolationBlock& p = *cfg.percolation;
    if (p.window <= 0.0) throw std::invalid_argument("window must be positive");
    if (p.replicas < 1) throw std::invalid_argument("replicas must be >= 1");
    if (!p.replica_seeds.empty() &&
        p.replica_seeds.size() != static_cast<std::size_t>(p.replicas))
      throw std::invalid_argument("replica_seeds length must match replicas");
  }
}

template <typename T>
std::vector<T> get_vec(const ordered_json& j, const char* key) {
  std::vector<T> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<T>());
  return out;
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stderr_of(const std::vector<double>& xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const auto n = static_cast<double>(xs.size());
  return std::sqrt(ss / (n - 1.0) / n);
}

SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  SlopeFit fit;
  if (xs.size() < 2) return fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0.0 || ys[i] <= 0.0) continue;
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  const auto n = static_cast<double>(lx.size());
  if (lx.size() < 2) return fit;
  double mx = mean_of(lx), my = mean_of(ly);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.n_points = static_cast<int>(lx.size());
  if (lx.size() > 2) {
    double ss = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      double r = ly[i] - fit.intercept - fit.slope * lx[i];
      ss += r * r;
    }
    fit.stderr_slope = std::sqrt(ss / (n - 2.0) / sxx);
  }
  return fit;
}

std::int64_t k_of(double delta, double n) {
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(delta * n - 1e-9)));
}

// ---------------------------------------------------------------------------
// config census

ConfigCount count_lattice_blocks(const Network& net, double delta) {
  const ModelMeta& meta = *net.meta;
  const std::int64_t m = meta.m;
  const std::int64_t n = net.n_vertices;

  // Rebuild edge ids in generator order: per vertex (axis-0 fastest in the
  // id), the rightward edge then the upward edge, whichever exist.
  std::vector<std::array<std::int32_t, 2>> eid(
      static_cast<std::size_t>(n), std::array<std::int32_t, 2>{-1, -1});
  std::int32_t next = 0;
  for (std::int64_t v = 0; v < n; ++v) {
    if (v % m + 1 < m) eid[static_cast<std::size_t>(v)][0] = next++;
    if (v / m + 1 < m) eid[static_cast<std::size_t>(v)][1] = next++;
  }
  if (next != net.n_edges())
    throw std::logic_error("lattice edge indexing out of sync");
  auto len = [&](std::int64_t i, std::int64_t j, int axis) {
    return net
        .edges[static_cast<std::size_t>(eid[static_cast<std::size_t>(i + j * m)]
                                           [static_cast<std::size_t>(axis)])]
        .len;
  };

  ConfigCount out;
  for (std::int64_t bj = 0; 3 * bj + 3 <= m - 1; ++bj)
    for (std::int64_t bi = 0; 3 * bi + 3 <= m - 1; ++bi) {
      ++out.usable_blocks;
      const std::int64_t i = 3 * bi, j = 3 * bj;
      // Central 4-cycle: a left, b top, c right, d bottom.
      double a = len(i + 1, j + 1, 1);
      double b = len(i + 1, j + 2, 0);
      double c = len(i + 2, j + 1, 1);
      double d = len(i + 1, j + 1, 0);
      if (!(b > a && b < a + delta && c < a && d < a)) continue;
      const double hi = a + delta;
      const double stubs[8] = {
          len(i + 1, j, 1),      // below P00
          len(i, j + 1, 0),      // left of P00
          len(i + 2, j, 1),      // below P10
          len(i + 2, j + 1, 0),  // right of P10
          len(i + 2, j + 2, 0),  // right of P11
          len(i + 2, j + 2, 1),  // above P11
          len(i + 1, j + 2, 1),  // above P01
          len(i, j + 2, 0),      // left of P01
      };
      bool ok = true;
      for (double s : stubs)
        if (s <= hi) ok = false;
      if (!ok) continue;
      ++out.matches;
      out.cost_sum += b - a;
    }
  return out;
}

ConfigCount count_euclidean_blocks(const Network& net, double delta) {
  const ModelMeta& meta = *net.meta;
  const std::vector<double>& pts = meta.coords;
  const std::int64_t n = net.n_vertices;
  const double side = std::pow(static_cast<double>(n), 0.5);
  const auto nb = static_cast<std::int64_t>(side / 3.0);

  ConfigCount out;
  out.usable_blocks = nb * nb;
  if (nb == 0) return out;

  std::vector<std::vector<std::int32_t>> blocks(
      static_cast<std::size_t>(nb * nb));
  for (std::int64_t p = 0; p < n; ++p) {
    auto cx = static_cast<std::int64_t>(pts[static_cast<std::size_t>(2 * p)] / 3.0);
    auto cy =
        static_cast<std::int64_t>(pts[static_cast<std::size_t>(2 * p + 1)] / 3.0);
    if (cx >= nb || cy >= nb) continue;
    blocks[static_cast<std::size_t>(cx + cy * nb)].push_back(
        static_cast<std::int32_t>(p));
  }

  for (std::int64_t blk = 0; blk < nb * nb; ++blk) {
    const auto& ps = blocks[static_cast<std::size_t>(blk)];
    if (ps.size() != 3) continue;
    const double x0 = static_cast<double>(blk % nb) * 3.0 + 1.0;
    const double y0 = static_cast<double>(blk / nb) * 3.0 + 1.0;
    bool centered = true;
    for (std::int32_t p : ps) {
      double px = pts[static_cast<std::size_t>(2 * p)];
      double py = pts[static_cast<std::size_t>(2 * p + 1)];
      if (px < x0 || px >= x0 + 1.0 || py < y0 || py >= y0 + 1.0) centered = false;
    }
    if (!centered) continue;
    std::array<double, 3> d2{};
    int idx = 0;
    for (int u = 0; u < 3; ++u)
      for (int v = u + 1; v < 3; ++v) {
        double dx = pts[static_cast<std::size_t>(2 * ps[u])] -
                    pts[static_cast<std::size_t>(2 * ps[v])];
        double dy = pts[static_cast<std::size_t>(2 * ps[u] + 1)] -
                    pts[static_cast<std::size_t>(2 * ps[v] + 1)];
        d2[idx++] = std::sqrt(dx * dx + dy * dy);
      }
    std::sort(d2.begin(), d2.end());
    const double second = d2[1], longest = d2[2];
    if (longest > second && longest < second + delta && second + delta < 1.0) {
      ++out.matches;
      out.cost_sum += longest - second;
    }
  }
  return out;
}

}  // namespace

ConfigCount config_count(const Network& net, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (!net.meta || net.meta->d != 2) throw std::invalid_argument("non-lattice input");
  if (net.meta->model == "lattice") return count_lattice_blocks(net, delta);
  if (net.meta->model == "euclidean" && !net.meta->coords.empty())
    return count_euclidean_blocks(net, delta);
  throw std::invalid_argument("non-lattice input");
}

// ---------------------------------------------------------------------------
// config serialization

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  ExperimentConfig cfg;
  cfg.model = j.value("model", cfg.model);
  cfg.d = j.value("d", cfg.d);
  cfg.dist = j.value("dist", cfg.dist);
  cfg.sizes = get_vec<std::int64_t>(j, "sizes");
  cfg.cutoff = j.value("cutoff", cfg.cutoff);
  if (j.contains("deltas")) cfg.deltas = get_vec<double>(j, "deltas");
  cfg.replicas = j.value("replicas", cfg.replicas);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("analyses")) cfg.analyses = get_vec<std::string>(j, "analyses");
  if (j.contains("mu_x_grid")) cfg.mu_x_grid = get_vec<double>(j, "mu_x_grid");
  cfg.config_delta = j.value("config_delta", cfg.config_delta);
  if (j.contains("replica_seeds"))
    cfg.replica_seeds = get_vec<std::uint64_t>(j, "replica_seeds");
  if (j.contains("percolation")) {
    const ordered_json& p = j.at("percolation");
    PercolationBlock blk;
    blk.window = p.value("window", blk.window);
    blk.replicas = p.value("replicas", blk.replicas);
    if (p.contains("x_grid")) blk.x_grid = get_vec<double>(p, "x_grid");
    if (p.contains("replica_seeds"))
      blk.replica_seeds = get_vec<std::uint64_t>(p, "replica_seeds");
    cfg.percolation = blk;
  }
  validate_config(cfg);
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  ordered_json j;
  j["model"] = cfg.model;
  j["d"] = cfg.d;
  j["dist"] = cfg.dist;
  j["sizes"] = cfg.sizes;
  j["cutoff"] = cfg.cutoff;
  j["deltas"] = cfg.deltas;
  j["replicas"] = cfg.replicas;
  j["seed"] = cfg.seed;
  j["analyses"] = cfg.analyses;
  j["mu_x_grid"] = cfg.mu_x_grid;
  j["config_delta"] = cfg.config_delta;
  if (!cfg.replica_seeds.empty()) j["replica_seeds"] = cfg.replica_seeds;
  if (cfg.percolation) {
    ordered_json p;
    p["window"] = cfg.percolation->window;
    p["replicas"] = cfg.percolation->replicas;
    p["x_grid"] = cfg.percolation->x_grid;
    if (!cfg.percolation->replica_seeds.empty())
      p["replica_seeds"] = cfg.percolation->replica_seeds;
    j["percolation"] = p;
  }
  return j.dump(2) + "\n";
}

std::uint64_t replica_seed(const ExperimentConfig& cfg, std::size_t size_index,
                           int replica) {
  if (!cfg.replica_seeds.empty())
    return derive_seed(cfg.replica_seeds[static_cast<std::size_t>(replica)], "size",
                       size_index);
  return derive_seed(derive_seed(cfg.seed, "size", size_index), "replica",
                     static_cast<std::uint64_t>(replica));
}

// ---------------------------------------------------------------------------
// sweep runner

namespace {

struct ReplicaOut {
  bool ok = false;
  std::string error;
  std::int64_t n_vertices = 0;
  std::vector<double> lb, ub;  // per delta
  std::vector<char> trusted;
  std::vector<double> mu_hat, density;
  std::vector<char> mu_trusted;
  std::int64_t cfg_usable = 0, cfg_matches = 0;
  double cfg_cost = 0.0;
};

struct PercOut {
  bool ok = false;
  std::string error;
  PercMarks marks;
  std::int64_t interior_bad = 0, boundary_bad = 0;
};

ReplicaOut run_replica(const ExperimentConfig& cfg, std::size_t si, int r,
                       bool want_curve, bool want_mu, bool want_cfg) {
  ReplicaOut out;
  const std::uint64_t seed = replica_seed(cfg, si, r);
  Network net;
  if (cfg.model == "lattice") {
    net = gen_lattice(LatticeSpec{cfg.d, cfg.sizes[si], cfg.dist, seed});
  } else {
    net = gen_euclidean(EuclideanSpec{cfg.d, cfg.sizes[si], seed, cfg.cutoff});
  }
  out.n_vertices = net.n_vertices;

  if (want_curve || want_mu) {
    MstResult mst = kruskal_mst(net);
    ExcessTable tbl = excess_table(net, mst);
    if (want_curve) {
      EpsilonCurve curve = epsilon_curve(net, mst, tbl, cfg.deltas);
      for (const EpsilonRow& row : curve.rows) {
        out.lb.push_back(row.lb);
        out.ub.push_back(row.ub);
        out.trusted.push_back(row.lb_trusted ? 1 : 0);
      }
    }
    if (want_mu) {
      MuEstimate est = empirical_mu(tbl, cfg.mu_x_grid);
      out.mu_hat = est.mu_hat;
      out.density = est.density_hat;
      for (bool t : est.trusted) out.mu_trusted.push_back(t ? 1 : 0);
    }
  }
  if (want_cfg) {
    ConfigCount cc = config_count(net, cfg.config_delta);
    out.cfg_usable = cc.usable_blocks;
    out.cfg_matches = cc.matches;
    out.cfg_cost = cc.cost_sum;
  }
  out.ok = true;
  return out;
}

PercOut run_perc_replica(const ExperimentConfig& cfg, int r) {
  PercOut out;
  const PercolationBlock& blk = *cfg.percolation;
  const std::uint64_t seed =
      blk.replica_seeds.empty()
          ? derive_seed(cfg.seed, "percolation", static_cast<std::uint64_t>(r))
          : blk.replica_seeds[static_cast<std::size_t>(r)];
  RootedSample s = sample_rooted(cfg.d, blk.window, seed);
  out.marks = perc_marks_auto(s);
  MsfReport msf = msf_window_diagnostic(s, out.marks.cutoff);
  out.interior_bad = static_cast<std::int64_t>(msf.interior_mst_only.size() +
                                               msf.interior_criterion_only.size());
  out.boundary_bad = msf.boundary_mst_only + msf.boundary_criterion_only;
  out.ok = true;
  return out;
}

}  // namespace

RunReport run_scaling_experiment(const ExperimentConfig& cfg, int workers) {
  validate_config(cfg);
  if (workers < 1) workers = 1;
  const bool want_curve =
      std::count(cfg.analyses.begin(), cfg.analyses.end(), "curve") > 0;
  const bool want_mu =
      std::count(cfg.analyses.begin(), cfg.analyses.end(), "mu") > 0;
  const bool want_cfg =
      std::count(cfg.analyses.begin(), cfg.analyses.end(), "configs") > 0;
  const bool want_perc =
      std::count(cfg.analyses.begin(), cfg.analyses.end(), "percolation") > 0;

  RunReport rep;
  rep.config = cfg;

  const std::size_t S = cfg.sizes.size();
  const auto R = static_cast<std::size_t>(cfg.replicas);
  std::vector<ReplicaOut> slots;
  if (want_curve || want_mu || want_cfg) {
    slots.resize(S * R);
    const auto total = static_cast<std::int64_t>(S * R);
#pragma omp parallel for num_threads(workers) schedule(dynamic)
    for (std::int64_t t = 0; t < total; ++t) {
      const auto si = static_cast<std::size_t>(t) / R;
      const int r = static_cast<int>(static_cast<std::size_t>(t) % R);
      try {
        slots[static_cast<std::size_t>(t)] =
            run_replica(cfg, si, r, want_curve, want_mu, want_cfg);
      } catch (const std::exception& e) {
        slots[static_cast<std::size_t>(t)].error = e.what();
      }
    }
  }

  std::vector<PercOut> perc_slots;
  if (want_perc) {
    perc_slots.resize(static_cast<std::size_t>(cfg.percolation->replicas));
    const auto total = static_cast<std::int64_t>(perc_slots.size());
#pragma omp parallel for num_threads(workers) schedule(dynamic)
    for (std::int64_t t = 0; t < total; ++t) {
      try {
        perc_slots[static_cast<std::size_t>(t)] =
            run_perc_replica(cfg, static_cast<int>(t));
      } catch (const std::exception& e) {
        perc_slots[static_cast<std::size_t>(t)].error = e.what();
      }
    }
  }

  // Failure policy: record everything, abort only past 10%.
  std::int64_t n_tasks = 0, n_failed = 0;
  for (std::size_t t = 0; t < slots.size(); ++t) {
    ++n_tasks;
    if (slots[t].ok) continue;
    ++n_failed;
    std::ostringstream msg;
    msg << "size=" << cfg.sizes[t / R] << " replica=" << t % R << ": "
        << slots[t].error;
    rep.replica_failures.push_back(msg.str());
  }
  for (std::size_t t = 0; t < perc_slots.size(); ++t) {
    ++n_tasks;
    if (perc_slots[t].ok) continue;
    ++n_failed;
    rep.replica_failures.push_back("percolation replica=" + std::to_string(t) +
                                   ": " + perc_slots[t].error);
  }
  if (n_failed * 10 > n_tasks) {
    std::ostringstream msg;
    msg << "too many replica failures (" << n_failed << "/" << n_tasks << ")";
    for (const std::string& f : rep.replica_failures) msg << "\n  " << f;
    throw std::runtime_error(msg.str());
  }

  // Per-size aggregation, serial and in fixed order.
  for (std::size_t si = 0; si < S; ++si) {
    SizeReport sz;
    sz.size = cfg.sizes[si];
    std::vector<const ReplicaOut*> good;
    for (std::size_t r = 0; r < R && !slots.empty(); ++r)
      if (slots[si * R + r].ok) good.push_back(&slots[si * R + r]);
    if (!slots.empty() && good.empty())
      throw std::runtime_error("all replicas failed for size " +
                               std::to_string(sz.size));
    if (!good.empty()) sz.n_vertices = good.front()->n_vertices;

    if (want_mu && !good.empty()) {
      for (std::size_t xi = 0; xi < cfg.mu_x_grid.size(); ++xi) {
        std::vector<double> mus, dens;
        bool trusted = true;
        for (const ReplicaOut* g : good) {
          mus.push_back(g->mu_hat[xi]);
          dens.push_back(g->density[xi]);
          trusted = trusted && g->mu_trusted[xi];
        }
        MuCell cell;
        cell.x = cfg.mu_x_grid[xi];
        cell.mu_mean = mean_of(mus);
        cell.density_mean = mean_of(dens);
        cell.stderr_mu = stderr_of(mus, cell.mu_mean);
        cell.trusted = trusted;
        sz.mu.push_back(cell);
      }
      sz.f_mu_hat = sz.mu.front().density_mean;
    }

    if (want_curve && !good.empty()) {
      for (std::size_t di = 0; di < cfg.deltas.size(); ++di) {
        std::vector<double> lbs, ubs;
        bool trusted = true;
        for (const ReplicaOut* g : good) {
          lbs.push_back(g->lb[di]);
          ubs.push_back(g->ub[di]);
          trusted = trusted && g->trusted[di];
        }
        CurveCell cell;
        cell.size = sz.size;
        cell.n_vertices = sz.n_vertices;
        cell.delta = cfg.deltas[di];
        cell.k = k_of(cell.delta, static_cast<double>(sz.n_vertices));
        cell.lb_mean = mean_of(lbs);
        cell.lb_stderr = stderr_of(lbs, cell.lb_mean);
        cell.ub_mean = mean_of(ubs);
        cell.ub_stderr = stderr_of(ubs, cell.ub_mean);
        cell.ratio = cell.lb_mean > 0.0 ? cell.ub_mean / cell.lb_mean : 0.0;
        cell.trusted = trusted;
        cell.in_fit = cell.k >= 20 && trusted;
        if (sz.f_mu_hat > 0.0)
          cell.predicted = cell.delta * cell.delta / (2.0 * sz.f_mu_hat);
        sz.cells.push_back(cell);
      }
      std::vector<double> fit_x, fit_lb, fit_ub;
      for (const CurveCell& cell : sz.cells) {
        if (!cell.in_fit) continue;
        fit_x.push_back(cell.delta);
        fit_lb.push_back(cell.lb_mean);
        fit_ub.push_back(cell.ub_mean);
      }
      sz.alpha_lb = fit_loglog(fit_x, fit_lb);
      sz.alpha_ub = fit_loglog(fit_x, fit_ub);
    }

    if (want_cfg && !good.empty()) {
      ConfigLawCell cell;
      cell.size = sz.size;
      cell.n_vertices = sz.n_vertices;
      cell.usable_blocks = good.front()->cfg_usable;
      std::vector<double> freqs, costs;
      for (const ReplicaOut* g : good) {
        const auto blocks = static_cast<double>(g->cfg_usable);
        freqs.push_back(static_cast<double>(g->cfg_matches) / blocks);
        costs.push_back(g->cfg_cost / blocks);
      }
      cell.freq_mean = mean_of(freqs);
      cell.freq_stderr = stderr_of(freqs, cell.freq_mean);
      cell.cost_mean = mean_of(costs);
      cell.cost_stderr = stderr_of(costs, cell.cost_mean);
      if (cfg.model == "lattice") {
        ConfigRate rate = config_rate_quadrature(cfg.dist, cfg.config_delta);
        cell.q_pred = rate.q;
        cell.r_pred = rate.r;
        cell.c_slope = rate.c;
        cell.has_prediction = true;
      }
      sz.configs = cell;
    }

    rep.sizes.push_back(std::move(sz));
  }

  if (want_perc) {
    PercolationReport pr;
    pr.window = cfg.percolation->window;
    std::vector<PercMarks> marks;
    for (const PercOut& p : perc_slots) {
      if (!p.ok) continue;
      marks.push_back(p.marks);
      pr.interior_symdiff += p.interior_bad;
      pr.boundary_symdiff += p.boundary_bad;
      pr.cutoff_max = std::max(pr.cutoff_max, p.marks.cutoff);
    }
    if (marks.empty()) throw std::runtime_error("all percolation replicas failed");
    pr.replicas = static_cast<int>(marks.size());
    MuEstimate est = mu_density_estimate(marks, cfg.percolation->x_grid);
    for (std::size_t xi = 0; xi < est.x_grid.size(); ++xi) {
      MuCell cell;
      cell.x = est.x_grid[xi];
      cell.mu_mean = est.mu_hat[xi];
      cell.density_mean = est.density_hat[xi];
      cell.stderr_mu = est.stderr_mu[xi];
      cell.trusted = est.trusted[xi];
      pr.mu.push_back(cell);
    }
    rep.percolation = pr;
  }

  return rep;
}

LbCheckResult model1_lb_check(const RunReport& report) {
  if (report.config.model != "lattice" || report.config.d != 2)
    throw std::invalid_argument("model1_lb_check needs a d=2 lattice report");
  const double fbar = dist_density_bound(report.config.dist);
  LbCheckResult res;
  for (const SizeReport& sz : report.sizes)
    for (const CurveCell& cell : sz.cells) {
      const auto n = static_cast<double>(cell.n_vertices);
      const double cn = 2.0 * (n - std::sqrt(n));
      const double bound = (cn / n) * cell.delta * cell.delta / (8.0 * fbar);
      const double margin = cell.ub_mean - bound;
      res.min_margin = std::min(res.min_margin, margin);
      if (margin < 0.0) res.pass = false;
    }
  return res;
}

}  // namespace mstlab
