#pragma once

#include <utility>
#include <vector>

#include "mstlab/network.hpp"

namespace mstlab {

struct PathMaxResult {
  EdgeId edge;
  double len;
};

// The unique MST of a network with distinct lengths, rooted at vertex 0 with
// ancestor-jump tables carrying the maximum edge (id and length) along each
// jump. Immutable and safe to share read-only across threads.
class MstResult {
 public:
  MstResult(const Network& net, std::vector<EdgeId> tree_edges);

  const std::vector<EdgeId>& tree_edges() const { return tree_edges_; }
  bool in_tree(EdgeId e) const { return in_tree_[e]; }
  double total_len() const { return total_len_; }
  VertexId n_vertices() const { return static_cast<VertexId>(parent_.size()); }

  // Maximum-length edge on the unique tree path u..v. O(log n).
  // Throws std::invalid_argument on u == v.
  PathMaxResult path_max(VertexId u, VertexId v) const;

  VertexId parent(VertexId v) const { return parent_[v]; }
  EdgeId parent_edge(VertexId v) const { return parent_edge_[v]; }
  std::int32_t depth(VertexId v) const { return depth_[v]; }

 private:
  std::vector<EdgeId> tree_edges_;
  std::vector<char> in_tree_;
  double total_len_ = 0.0;

  std::vector<VertexId> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<double> parent_len_;
  std::vector<std::int32_t> depth_;
  int levels_ = 0;
  // up_[k][v]: 2^k-th ancestor of v; max_len_/max_edge_ carry the heaviest
  // edge on that jump.
  std::vector<std::vector<VertexId>> up_;
  std::vector<std::vector<double>> max_len_;
  std::vector<std::vector<EdgeId>> max_edge_;
};

// Kruskal's algorithm. Throws std::runtime_error("not connected") or
// std::runtime_error("tied lengths"). Deterministic for a given net.
MstResult kruskal_mst(const Network& net);

}  // namespace mstlab
