#include "mstlab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "mstlab/dsu.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/rng.hpp"

namespace mstlab {

RootedSample sample_rooted(int d, double window, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  if (window <= 0.0) throw std::invalid_argument("window must be positive");
  Rng rng(derive_seed(seed, "rooted-sample"));

  // Poisson(volume) by counting unit-exponential arrivals.
  const double volume = std::pow(2.0 * window, d);
  std::int64_t count = 0;
  double clock = rng.next_exp1();
  while (clock <= volume) {
    ++count;
    clock += rng.next_exp1();
  }

  RootedSample s;
  s.d = d;
  s.window = window;
  s.seed = seed;
  s.coords.assign(static_cast<std::size_t>(d), 0.0);  // the origin O
  s.coords.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(count + 1));
  for (std::int64_t i = 0; i < count; ++i)
    for (int k = 0; k < d; ++k)
      s.coords.push_back((2.0 * rng.next_u01() - 1.0) * window);
  return s;
}

RootedSample restrict_sample(const RootedSample& s, double window) {
  if (window <= 0.0 || window > s.window)
    throw std::invalid_argument("restriction window out of range");
  RootedSample out;
  out.d = s.d;
  out.window = window;
  out.seed = s.seed;
  for (std::int64_t p = 0; p < s.n_points(); ++p) {
    bool inside = true;
    for (int k = 0; k < s.d; ++k)
      if (std::abs(s.coords[static_cast<std::size_t>(p * s.d + k)]) > window)
        inside = false;
    if (!inside) continue;
    for (int k = 0; k < s.d; ++k)
      out.coords.push_back(s.coords[static_cast<std::size_t>(p * s.d + k)]);
  }
  return out;
}

namespace {

bool point_interior(const RootedSample& s, std::int64_t p, double margin) {
  for (int k = 0; k < s.d; ++k)
    if (s.window - std::abs(s.coords[static_cast<std::size_t>(p * s.d + k)]) <= margin)
      return false;
  return true;
}

double origin_dist(const RootedSample& s, std::int64_t p) {
  double d2 = 0.0;
  for (int k = 0; k < s.d; ++k) {
    double c = s.coords[static_cast<std::size_t>(p * s.d + k)];
    d2 += c * c;
  }
  return std::sqrt(d2);
}

}  // namespace

PercMarks perc_marks(const RootedSample& s, double cutoff) {
  if (cutoff <= 0.0) throw std::invalid_argument("cutoff must be positive");
  const std::int64_t n = s.n_points();
  Network net = euclidean_network_from_points(s.coords, s.d, cutoff);

  std::vector<EdgeId> order(static_cast<std::size_t>(net.n_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    return net.edges[static_cast<std::size_t>(a)].len <
           net.edges[static_cast<std::size_t>(b)].len;
  });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (net.edges[static_cast<std::size_t>(order[i - 1])].len ==
        net.edges[static_cast<std::size_t>(order[i])].len)
      throw std::runtime_error("tied lengths");

  PercMarks out;
  out.cutoff = cutoff;
  out.margin = 2.0 * cutoff;
  out.marks.resize(static_cast<std::size_t>(n > 0 ? n - 1 : 0));

  // Merge-time sweep. Components away from O carry their member lists and are
  // merged small-to-large; absorbing a component into O's assigns the merge
  // time as the perc mark of everything inside it, after which its list dies.
  DisjointSet dsu(static_cast<std::int32_t>(n));
  std::vector<std::vector<std::int32_t>> members(static_cast<std::size_t>(n));
  for (std::int64_t p = 1; p < n; ++p)
    members[static_cast<std::size_t>(p)].push_back(static_cast<std::int32_t>(p));
  std::int64_t marked = 0;
  for (EdgeId e : order) {
    const Edge& ed = net.edges[static_cast<std::size_t>(e)];
    VertexId ra = dsu.find(ed.u);
    VertexId rb = dsu.find(ed.v);
    if (ra == rb) continue;
    VertexId ro = dsu.find(0);
    dsu.unite(ed.u, ed.v, e, ed.len);
    VertexId rn = dsu.find(ed.u);
    if (ra == ro || rb == ro) {
      VertexId other = (ra == ro) ? rb : ra;
      for (std::int32_t p : members[static_cast<std::size_t>(other)]) {
        out.marks[static_cast<std::size_t>(p - 1)].perc = ed.len;
        ++marked;
      }
      members[static_cast<std::size_t>(other)].clear();
      members[static_cast<std::size_t>(rn)].clear();
    } else {
      auto& ma = members[static_cast<std::size_t>(ra)];
      auto& mb = members[static_cast<std::size_t>(rb)];
      if (ma.size() < mb.size()) std::swap(ma, mb);
      ma.insert(ma.end(), mb.begin(), mb.end());
      mb.clear();
      if (rn != ra) std::swap(members[static_cast<std::size_t>(rn)], ma);
    }
  }
  if (marked != n - 1) throw std::runtime_error("cutoff too small");

  for (std::int64_t p = 1; p < n; ++p) {
    Mark& mk = out.marks[static_cast<std::size_t>(p - 1)];
    mk.len = origin_dist(s, p);
    mk.exc = mk.len - mk.perc;
    mk.interior =
        point_interior(s, 0, out.margin) && point_interior(s, p, out.margin);
  }
  return out;
}

PercMarks perc_marks_auto(const RootedSample& s) {
  const double n = static_cast<double>(std::max<std::int64_t>(s.n_points(), 2));
  double cutoff = 2.0 * std::pow(std::log(n), 1.0 / s.d);
  for (;;) {
    try {
      return perc_marks(s, cutoff);
    } catch (const std::runtime_error& err) {
      if (std::string(err.what()) != "cutoff too small") throw;
      cutoff *= 2.0;
    }
  }
}

MuEstimate mu_density_estimate(const std::vector<PercMarks>& replicas,
                               const std::vector<double>& x_grid) {
  if (replicas.empty()) throw std::invalid_argument("no replicas");
  if (x_grid.empty()) throw std::invalid_argument("x_grid is empty");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (x_grid[i] <= 0.0) throw std::invalid_argument("x_grid must be positive");
    if (i > 0 && x_grid[i] <= x_grid[i - 1])
      throw std::invalid_argument("x_grid must be strictly increasing");
  }

  double min_cutoff = replicas.front().cutoff;
  for (const PercMarks& r : replicas) min_cutoff = std::min(min_cutoff, r.cutoff);

  MuEstimate est;
  est.x_grid = x_grid;
  est.n = static_cast<std::int64_t>(replicas.size());
  const auto R = static_cast<double>(replicas.size());
  for (double x : x_grid) {
    std::vector<double> counts;
    counts.reserve(replicas.size());
    for (const PercMarks& r : replicas) {
      double c = 0.0;
      for (const Mark& mk : r.marks)
        if (mk.interior && mk.exc > 0.0 && mk.exc < x) c += 1.0;
      counts.push_back(c);
    }
    double mean = std::accumulate(counts.begin(), counts.end(), 0.0) / R;
    double var = 0.0;
    for (double c : counts) var += (c - mean) * (c - mean);
    double se = replicas.size() > 1 ? std::sqrt(var / (R - 1.0) / R) : 0.0;
    est.mu_hat.push_back(mean);
    est.density_hat.push_back(mean / x);
    est.stderr_mu.push_back(se);
    est.trusted.push_back(x <= min_cutoff / 2.0);
  }
  return est;
}

MsfReport msf_window_diagnostic(const RootedSample& s, double cutoff) {
  Network net = euclidean_network_from_points(s.coords, s.d, cutoff);
  if (!is_connected(net)) throw std::runtime_error("cutoff too small");
  MstResult mst = kruskal_mst(net);
  PercIndex merge(net);

  const double margin = 2.0 * cutoff;
  MsfReport rep;
  rep.n_candidates = net.n_edges();
  for (EdgeId e = 0; e < net.n_edges(); ++e) {
    const Edge& ed = net.edges[static_cast<std::size_t>(e)];
    // Exact comparison is intended: a tree edge's merge time is its own
    // length, bit for bit, while any other edge merges strictly earlier.
    bool crit = net.edges[static_cast<std::size_t>(e)].len == merge.perc(ed.u, ed.v);
    bool tree = mst.in_tree(e);
    if (crit == tree) continue;
    bool interior = point_interior(s, ed.u, margin) && point_interior(s, ed.v, margin);
    if (tree) {
      if (interior)
        rep.interior_mst_only.push_back(e);
      else
        ++rep.boundary_mst_only;
    } else {
      if (interior)
        rep.interior_criterion_only.push_back(e);
      else
        ++rep.boundary_criterion_only;
    }
  }
  return rep;
}

}  // namespace mstlab
