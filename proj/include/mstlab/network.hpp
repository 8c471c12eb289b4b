#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mstlab {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;

struct Edge {
  VertexId u;
  VertexId v;
  double len;
};

// Provenance of a generated instance. Absent for hand-built networks.
struct ModelMeta {
  std::string model;  // "lattice" | "euclidean"
  int d = 0;
  std::int64_t m = 0;  // lattice side, 0 otherwise
  std::int64_t n = 0;  // vertex count
  std::uint64_t seed = 0;
  std::string dist;           // lattice edge-length distribution tag
  double cutoff = 0.0;        // euclidean candidate radius, 0 otherwise
  bool cutoff_validated = false;
  std::vector<double> coords;  // flat d*n array, euclidean only
};

// Edge-list network with distinct positive edge lengths. Edge ids are dense
// and equal to the index into edges; every downstream table is an array
// indexed by edge id. Immutable once built.
struct Network {
  VertexId n_vertices = 0;
  std::vector<Edge> edges;
  std::optional<ModelMeta> meta;

  EdgeId n_edges() const { return static_cast<EdgeId>(edges.size()); }
};

// Throws std::invalid_argument on self loops, duplicate pairs, non-positive
// or tied lengths, or out-of-range vertex ids.
void validate_network(const Network& net);

bool is_connected(const Network& net);

// Connected components of the subgraph keeping edges with len strictly below
// t. Labels are normalized by first appearance in vertex order, so equal
// partitions always get equal label vectors.
std::vector<std::int32_t> components_at(const Network& net, double t);

// True iff edge_ids has n-1 members forming an acyclic spanning edge set.
bool is_spanning_tree(const Network& net, const std::vector<EdgeId>& edge_ids);

// CSV with header "u,v,len", one edge per row, ids 0-based. Model metadata
// travels in a JSON sidecar at path + ".meta.json".
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

}  // namespace mstlab
