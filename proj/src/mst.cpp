#include "mstlab/mst.hpp"

#include <algorithm>
#include <stdexcept>

#include "mstlab/dsu.hpp"

namespace mstlab {

MstResult::MstResult(const Network& net, std::vector<EdgeId> tree_edges)
    : tree_edges_(std::move(tree_edges)),
      in_tree_(net.edges.size(), 0),
      parent_(net.n_vertices, -1),
      parent_edge_(net.n_vertices, -1),
      parent_len_(net.n_vertices, 0.0),
      depth_(net.n_vertices, 0) {
  const VertexId n = net.n_vertices;
  for (EdgeId e : tree_edges_) {
    in_tree_[e] = 1;
    total_len_ += net.edges[e].len;
  }

  // CSR adjacency over tree edges only.
  std::vector<std::int32_t> head(n + 1, 0);
  for (EdgeId e : tree_edges_) {
    ++head[net.edges[e].u + 1];
    ++head[net.edges[e].v + 1];
  }
  for (VertexId v = 0; v < n; ++v) head[v + 1] += head[v];
  std::vector<std::pair<VertexId, EdgeId>> adj(2 * tree_edges_.size());
  {
    std::vector<std::int32_t> pos(head.begin(), head.end() - 1);
    for (EdgeId e : tree_edges_) {
      const Edge& ed = net.edges[e];
      adj[pos[ed.u]++] = {ed.v, e};
      adj[pos[ed.v]++] = {ed.u, e};
    }
  }

  // BFS from vertex 0; order doubles as a topological order for the jump
  // tables (parents precede children).
  std::vector<VertexId> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    VertexId v = order[i];
    for (std::int32_t a = head[v]; a < head[v + 1]; ++a) {
      auto [w, e] = adj[a];
      if (seen[w]) continue;
      seen[w] = 1;
      parent_[w] = v;
      parent_edge_[w] = e;
      parent_len_[w] = net.edges[e].len;
      depth_[w] = depth_[v] + 1;
      order.push_back(w);
    }
  }
  if (static_cast<VertexId>(order.size()) != n)
    throw std::runtime_error("tree edges do not span");

  levels_ = 1;
  while ((1 << levels_) < n) ++levels_;
  up_.assign(levels_, std::vector<VertexId>(n, -1));
  max_len_.assign(levels_, std::vector<double>(n, 0.0));
  max_edge_.assign(levels_, std::vector<EdgeId>(n, -1));
  for (VertexId v = 0; v < n; ++v) {
    up_[0][v] = parent_[v];
    max_len_[0][v] = parent_len_[v];
    max_edge_[0][v] = parent_edge_[v];
  }
  for (int k = 1; k < levels_; ++k) {
    for (VertexId v : order) {
      VertexId mid = up_[k - 1][v];
      if (mid < 0) continue;
      up_[k][v] = up_[k - 1][mid];
      if (up_[k][v] < 0) continue;
      if (max_len_[k - 1][v] >= max_len_[k - 1][mid]) {
        max_len_[k][v] = max_len_[k - 1][v];
        max_edge_[k][v] = max_edge_[k - 1][v];
      } else {
        max_len_[k][v] = max_len_[k - 1][mid];
        max_edge_[k][v] = max_edge_[k - 1][mid];
      }
    }
  }
}

PathMaxResult MstResult::path_max(VertexId u, VertexId v) const {
  if (u == v) throw std::invalid_argument("degenerate query");
  PathMaxResult best{-1, 0.0};
  auto consider = [&](int k, VertexId x) {
    if (best.edge < 0 || max_len_[k][x] > best.len) {
      best.len = max_len_[k][x];
      best.edge = max_edge_[k][x];
    }
  };
  if (depth_[u] < depth_[v]) std::swap(u, v);
  std::int32_t diff = depth_[u] - depth_[v];
  for (int k = 0; k < levels_; ++k)
    if (diff & (1 << k)) {
      consider(k, u);
      u = up_[k][u];
    }
  if (u == v) return best;
  for (int k = levels_ - 1; k >= 0; --k)
    if (up_[k][u] != up_[k][v]) {
      consider(k, u);
      consider(k, v);
      u = up_[k][u];
      v = up_[k][v];
    }
  consider(0, u);
  consider(0, v);
  return best;
}

MstResult kruskal_mst(const Network& net) {
  std::vector<EdgeId> by_len(net.edges.size());
  for (EdgeId i = 0; i < net.n_edges(); ++i) by_len[i] = i;
  std::sort(by_len.begin(), by_len.end(), [&](EdgeId a, EdgeId b) {
    return net.edges[a].len < net.edges[b].len;
  });
  for (std::size_t i = 1; i < by_len.size(); ++i)
    if (net.edges[by_len[i - 1]].len == net.edges[by_len[i]].len)
      throw std::runtime_error("tied lengths");

  DisjointSet dsu(net.n_vertices);
  std::vector<EdgeId> tree;
  tree.reserve(net.n_vertices - 1);
  for (EdgeId e : by_len) {
    if (dsu.unite(net.edges[e].u, net.edges[e].v, e, net.edges[e].len)) {
      tree.push_back(e);
      if (static_cast<VertexId>(tree.size()) == net.n_vertices - 1) break;
    }
  }
  if (static_cast<VertexId>(tree.size()) != net.n_vertices - 1)
    throw std::runtime_error("not connected");
  return MstResult(net, std::move(tree));
}

}  // namespace mstlab
