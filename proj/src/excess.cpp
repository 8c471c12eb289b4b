#include "mstlab/excess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "mstlab/dsu.hpp"

namespace mstlab {

namespace {

ExcessRow row_for(const Network& net, const MstResult& mst, EdgeId e) {
  const Edge& ed = net.edges[static_cast<std::size_t>(e)];
  ExcessRow row;
  row.len = ed.len;
  if (mst.in_tree(e)) {
    row.perc = ed.len;
    row.exc = 0.0;
    row.in_mst = true;
    row.cycle_max_edge = e;
  } else {
    PathMaxResult pm = mst.path_max(ed.u, ed.v);
    row.perc = pm.len;
    row.exc = ed.len - pm.len;
    row.in_mst = false;
    row.cycle_max_edge = pm.edge;
  }
  return row;
}

void finish_table(const Network& net, const MstResult& mst, ExcessTable& tbl) {
  tbl.n_vertices = net.n_vertices;
  tbl.sorted_positive.clear();
  for (EdgeId e = 0; e < net.n_edges(); ++e)
    if (!tbl.rows[static_cast<std::size_t>(e)].in_mst) tbl.sorted_positive.push_back(e);
  std::sort(tbl.sorted_positive.begin(), tbl.sorted_positive.end(),
            [&](EdgeId a, EdgeId b) {
              const ExcessRow& ra = tbl.rows[static_cast<std::size_t>(a)];
              const ExcessRow& rb = tbl.rows[static_cast<std::size_t>(b)];
              return ra.exc < rb.exc || (ra.exc == rb.exc && a < b);
            });

  // A pruned Euclidean candidate set omits edges longer than the cutoff; any
  // such edge has exc >= cutoff - (longest tree edge), so smaller excesses are
  // exhaustive. The certified generator guarantees this is at least cutoff/2.
  if (net.meta && net.meta->model == "euclidean" && net.meta->cutoff > 0.0) {
    double longest = 0.0;
    for (EdgeId e : mst.tree_edges())
      longest = std::max(longest, net.edges[static_cast<std::size_t>(e)].len);
    tbl.trusted_exc_max =
        std::max(0.0, std::min(net.meta->cutoff / 2.0, net.meta->cutoff - longest));
  }
}

}  // namespace

ExcessTable excess_table(const Network& net, const MstResult& mst) {
  ExcessTable tbl;
  tbl.rows.resize(static_cast<std::size_t>(net.n_edges()));
  const std::int64_t m = net.n_edges();
#pragma omp parallel for schedule(static)
  for (std::int64_t e = 0; e < m; ++e)
    tbl.rows[static_cast<std::size_t>(e)] = row_for(net, mst, static_cast<EdgeId>(e));
  finish_table(net, mst, tbl);
  return tbl;
}

ExcessTable excess_table_serial(const Network& net, const MstResult& mst) {
  ExcessTable tbl;
  tbl.rows.resize(static_cast<std::size_t>(net.n_edges()));
  for (EdgeId e = 0; e < net.n_edges(); ++e)
    tbl.rows[static_cast<std::size_t>(e)] = row_for(net, mst, e);
  finish_table(net, mst, tbl);
  return tbl;
}

double excluded_perc(const Network& net, const MstResult& mst, EdgeId e) {
  if (e < 0 || e >= net.n_edges()) throw std::invalid_argument("edge id out of range");
  const Edge& ed = net.edges[static_cast<std::size_t>(e)];
  if (!mst.in_tree(e)) return mst.path_max(ed.u, ed.v).len;

  // Deleting a tree edge splits the tree in two; flood one side without
  // crossing e, then scan for the cheapest reconnecting edge.
  const std::int32_t n = net.n_vertices;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(
      static_cast<std::size_t>(n));
  for (EdgeId t : mst.tree_edges()) {
    const Edge& te = net.edges[static_cast<std::size_t>(t)];
    adj[static_cast<std::size_t>(te.u)].emplace_back(te.v, t);
    adj[static_cast<std::size_t>(te.v)].emplace_back(te.u, t);
  }
  std::vector<char> side(static_cast<std::size_t>(n), 0);
  std::queue<VertexId> bfs;
  bfs.push(ed.u);
  side[static_cast<std::size_t>(ed.u)] = 1;
  while (!bfs.empty()) {
    VertexId v = bfs.front();
    bfs.pop();
    for (auto [w, t] : adj[static_cast<std::size_t>(v)]) {
      if (t == e || side[static_cast<std::size_t>(w)]) continue;
      side[static_cast<std::size_t>(w)] = 1;
      bfs.push(w);
    }
  }

  double best = std::numeric_limits<double>::infinity();
  for (EdgeId c = 0; c < net.n_edges(); ++c) {
    if (c == e) continue;
    const Edge& ce = net.edges[static_cast<std::size_t>(c)];
    if (side[static_cast<std::size_t>(ce.u)] != side[static_cast<std::size_t>(ce.v)])
      best = std::min(best, ce.len);
  }
  if (!std::isfinite(best)) throw std::runtime_error("bridge edge");
  return best;
}

PercIndex::PercIndex(const Network& net) {
  n_leaves_ = net.n_vertices;
  const std::int32_t n_nodes = 2 * n_leaves_ - 1;
  value_.assign(static_cast<std::size_t>(n_nodes), 0.0);
  std::vector<std::int32_t> parent(static_cast<std::size_t>(n_nodes), -1);

  std::vector<EdgeId> order(static_cast<std::size_t>(net.n_edges()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    double la = net.edges[static_cast<std::size_t>(a)].len;
    double lb = net.edges[static_cast<std::size_t>(b)].len;
    return la < lb || (la == lb && a < b);
  });

  DisjointSet dsu(n_leaves_);
  std::vector<std::int32_t> node_of(static_cast<std::size_t>(n_leaves_));
  std::iota(node_of.begin(), node_of.end(), 0);
  std::int32_t next = n_leaves_;
  for (EdgeId e : order) {
    const Edge& ed = net.edges[static_cast<std::size_t>(e)];
    VertexId ra = dsu.find(ed.u);
    VertexId rb = dsu.find(ed.v);
    if (ra == rb) continue;
    std::int32_t na = node_of[static_cast<std::size_t>(ra)];
    std::int32_t nb = node_of[static_cast<std::size_t>(rb)];
    dsu.unite(ed.u, ed.v, e, ed.len);
    parent[static_cast<std::size_t>(na)] = next;
    parent[static_cast<std::size_t>(nb)] = next;
    value_[static_cast<std::size_t>(next)] = ed.len;
    node_of[static_cast<std::size_t>(dsu.find(ed.u))] = next;
    ++next;
  }
  if (next != n_nodes) throw std::runtime_error("not connected");

  depth_.assign(static_cast<std::size_t>(n_nodes), 0);
  // Internal nodes were created children-before-parents, so a single reverse
  // sweep fills depths top-down.
  for (std::int32_t v = n_nodes - 2; v >= 0; --v) {
    std::int32_t p = parent[static_cast<std::size_t>(v)];
    depth_[static_cast<std::size_t>(v)] = depth_[static_cast<std::size_t>(p)] + 1;
  }
  std::int32_t levels = 1;
  while ((1 << levels) < n_nodes) ++levels;
  up_.assign(static_cast<std::size_t>(levels),
             std::vector<std::int32_t>(static_cast<std::size_t>(n_nodes), -1));
  up_[0] = std::move(parent);
  for (std::int32_t l = 1; l < levels; ++l)
    for (std::int32_t v = 0; v < n_nodes; ++v) {
      std::int32_t mid = up_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(v)];
      up_[static_cast<std::size_t>(l)][static_cast<std::size_t>(v)] =
          mid < 0 ? -1 : up_[static_cast<std::size_t>(l - 1)][static_cast<std::size_t>(mid)];
    }
}

double PercIndex::perc(VertexId u, VertexId v) const {
  if (u == v) throw std::invalid_argument("degenerate query");
  if (u < 0 || u >= n_leaves_ || v < 0 || v >= n_leaves_)
    throw std::invalid_argument("vertex id out of range");
  std::int32_t a = u;
  std::int32_t b = v;
  if (depth_[static_cast<std::size_t>(a)] < depth_[static_cast<std::size_t>(b)])
    std::swap(a, b);
  std::int32_t diff =
      depth_[static_cast<std::size_t>(a)] - depth_[static_cast<std::size_t>(b)];
  for (std::size_t l = 0; l < up_.size(); ++l)
    if (diff & (1 << l)) a = up_[l][static_cast<std::size_t>(a)];
  if (a == b) return value_[static_cast<std::size_t>(a)];
  for (std::size_t l = up_.size(); l-- > 0;) {
    std::int32_t pa = up_[l][static_cast<std::size_t>(a)];
    std::int32_t pb = up_[l][static_cast<std::size_t>(b)];
    if (pa != pb) {
      a = pa;
      b = pb;
    }
  }
  return value_[static_cast<std::size_t>(up_[0][static_cast<std::size_t>(a)])];
}

MuEstimate empirical_mu(const ExcessTable& tbl, const std::vector<double>& x_grid) {
  if (x_grid.empty()) throw std::invalid_argument("x_grid is empty");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (x_grid[i] <= 0.0) throw std::invalid_argument("x_grid must be positive");
    if (i > 0 && x_grid[i] <= x_grid[i - 1])
      throw std::invalid_argument("x_grid must be strictly increasing");
  }
  MuEstimate est;
  est.x_grid = x_grid;
  est.n = tbl.n_vertices;
  for (double x : x_grid) {
    auto it = std::partition_point(
        tbl.sorted_positive.begin(), tbl.sorted_positive.end(),
        [&](EdgeId e) { return tbl.rows[static_cast<std::size_t>(e)].exc < x; });
    double count = static_cast<double>(it - tbl.sorted_positive.begin());
    est.mu_hat.push_back(count / static_cast<double>(est.n));
    est.density_hat.push_back(est.mu_hat.back() / x);
    est.trusted.push_back(x <= tbl.trusted_exc_max);
  }
  return est;
}

}  // namespace mstlab
