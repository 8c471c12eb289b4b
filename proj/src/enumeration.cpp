#include "mstlab/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mstlab/dsu.hpp"
#include "mstlab/mst.hpp"

namespace mstlab {

namespace {

struct Enumerator {
  const Network& net;
  const std::function<void(const std::vector<EdgeId>&)>& cb;
  std::vector<EdgeId> chosen;
  std::int64_t count = 0;

  void rec(EdgeId i) {
    const std::int32_t n = net.n_vertices;
    if (static_cast<std::int32_t>(chosen.size()) == n - 1) {
      ++count;
      if (cb) cb(chosen);
      return;
    }
    if (i == net.n_edges()) return;

    // Abandon the branch unless the chosen edges plus everything still on the
    // table can connect the graph; any surviving branch yields >= 1 tree.
    DisjointSet partial(n);
    for (EdgeId e : chosen)
      partial.unite(net.edges[static_cast<std::size_t>(e)].u,
                    net.edges[static_cast<std::size_t>(e)].v, e, 0.0);
    DisjointSet full = partial;
    for (EdgeId e = i; e < net.n_edges(); ++e)
      full.unite(net.edges[static_cast<std::size_t>(e)].u,
                 net.edges[static_cast<std::size_t>(e)].v, e, 0.0);
    if (full.component_count() > 1) return;

    const Edge& ed = net.edges[static_cast<std::size_t>(i)];
    if (partial.find(ed.u) != partial.find(ed.v)) {
      chosen.push_back(i);
      rec(i + 1);
      chosen.pop_back();
    }
    rec(i + 1);
  }
};

void check_oracle_size(const Network& net) {
  if (net.n_vertices > 12 && net.n_edges() > 20)
    throw std::runtime_error("instance too large");
}

}  // namespace

std::int64_t enumerate_spanning_trees(
    const Network& net, const std::function<void(const std::vector<EdgeId>&)>& cb) {
  check_oracle_size(net);
  if (net.n_vertices == 1) {
    if (cb) cb({});
    return 1;
  }
  Enumerator en{net, cb, {}, 0};
  en.chosen.reserve(static_cast<std::size_t>(net.n_vertices - 1));
  en.rec(0);
  return en.count;
}

TreeScan scan_spanning_trees(const Network& net) {
  check_oracle_size(net);
  MstResult mst = kruskal_mst(net);
  TreeScan scan;
  scan.mst_len = mst.total_len();
  scan.min_extra_by_diff.assign(static_cast<std::size_t>(net.n_vertices),
                                std::numeric_limits<double>::infinity());
  scan.n_trees = enumerate_spanning_trees(net, [&](const std::vector<EdgeId>& tree) {
    double len = 0.0;
    std::size_t diff = 0;
    for (EdgeId e : tree) {
      len += net.edges[static_cast<std::size_t>(e)].len;
      if (!mst.in_tree(e)) ++diff;
    }
    double extra = len - scan.mst_len;
    scan.min_extra_by_diff[diff] = std::min(scan.min_extra_by_diff[diff], extra);
  });
  return scan;
}

double exact_epsilon(const Network& net, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("k infeasible");
  TreeScan scan = scan_spanning_trees(net);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t d = scan.min_extra_by_diff.size(); d-- > 0;) {
    if (static_cast<std::int64_t>(d) < k) break;
    best = std::min(best, scan.min_extra_by_diff[d]);
  }
  if (!std::isfinite(best)) throw std::runtime_error("k infeasible");
  return best / static_cast<double>(net.n_vertices);
}

double matrix_tree_count(const Network& net) {
  const std::int32_t n = net.n_vertices;
  if (n == 1) return 1.0;
  // Laplacian with the last row/column struck out; LU with partial pivoting
  // in long double is exact to well past the enumeration guard's tree counts.
  const std::size_t dim = static_cast<std::size_t>(n - 1);
  std::vector<long double> a(dim * dim, 0.0L);
  auto at = [&](std::size_t r, std::size_t c) -> long double& {
    return a[r * dim + c];
  };
  for (const Edge& e : net.edges) {
    auto u = static_cast<std::size_t>(e.u);
    auto v = static_cast<std::size_t>(e.v);
    if (u < dim) at(u, u) += 1.0L;
    if (v < dim) at(v, v) += 1.0L;
    if (u < dim && v < dim) {
      at(u, v) -= 1.0L;
      at(v, u) -= 1.0L;
    }
  }
  long double det = 1.0L;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim; ++r)
      if (std::fabs(static_cast<double>(at(r, col))) >
          std::fabs(static_cast<double>(at(pivot, col))))
        pivot = r;
    if (at(pivot, col) == 0.0L) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < dim; ++c) std::swap(at(pivot, c), at(col, c));
      det = -det;
    }
    det *= at(col, col);
    for (std::size_t r = col + 1; r < dim; ++r) {
      long double f = at(r, col) / at(col, col);
      for (std::size_t c = col; c < dim; ++c) at(r, c) -= f * at(col, c);
    }
  }
  return static_cast<double>(std::llround(static_cast<double>(det)));
}

}  // namespace mstlab
