#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mstlab/mst.hpp"
#include "mstlab/network.hpp"

namespace mstlab {

// Per-edge percolation bookkeeping: perc, exc = len - perc, and the identity
// of the bottleneck tree edge realizing perc (the edge itself for tree edges).
struct ExcessRow {
  double len = 0.0;
  double perc = 0.0;
  double exc = 0.0;
  bool in_mst = false;
  EdgeId cycle_max_edge = -1;
};

struct ExcessTable {
  std::int32_t n_vertices = 0;
  std::vector<ExcessRow> rows;          // indexed by edge id
  std::vector<EdgeId> sorted_positive;  // non-tree edge ids by increasing exc
  // Excesses below this value are exhaustive even when the candidate graph is
  // a pruned Euclidean one; infinite when every model edge is present.
  double trusted_exc_max = std::numeric_limits<double>::infinity();
};

// Parallel kernel plus the serial reference it is checked against.
ExcessTable excess_table(const Network& net, const MstResult& mst);
ExcessTable excess_table_serial(const Network& net, const MstResult& mst);

// Replacement value W(e): for a tree edge, the cheapest non-tree edge across
// the cut left by deleting it; for a non-tree edge, plain perc(e).
double excluded_perc(const Network& net, const MstResult& mst, EdgeId e);

// Merge-time route to perc(u,v): a Kruskal reconstruction tree built from the
// union-find merge log, queried through lowest common ancestors. Entirely
// independent of MstResult::path_max, which is the point.
class PercIndex {
 public:
  explicit PercIndex(const Network& net);
  double perc(VertexId u, VertexId v) const;

 private:
  std::int32_t n_leaves_ = 0;
  std::vector<double> value_;                  // merge time per node (0 at leaves)
  std::vector<std::int32_t> depth_;
  std::vector<std::vector<std::int32_t>> up_;  // ancestor jump tables
};

struct MuEstimate {
  std::vector<double> x_grid;
  std::vector<double> mu_hat;       // #{edges: 0 < exc < x} / n
  std::vector<double> density_hat;  // mu_hat / x
  std::vector<double> stderr_mu;    // replica standard errors; empty for
                                    // single-network estimates
  std::vector<bool> trusted;        // x within the table's trusted range
  std::int64_t n = 0;               // normalization count
};

MuEstimate empirical_mu(const ExcessTable& tbl, const std::vector<double>& x_grid);

}  // namespace mstlab
