#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "mstlab/network.hpp"

namespace mstlab {

// Exhaustive spanning-tree enumeration for oracle-sized instances only
// (guarded: more than 12 vertices AND more than 20 edges is refused).
// Returns the tree count; the callback, when given, sees each tree's edge ids
// in increasing order.
std::int64_t enumerate_spanning_trees(
    const Network& net,
    const std::function<void(const std::vector<EdgeId>&)>& cb = nullptr);

// One enumeration pass recording, for every Hamming distance to the MST,
// the cheapest spanning tree at that distance.
struct TreeScan {
  std::int64_t n_trees = 0;
  double mst_len = 0.0;
  std::vector<double> min_extra_by_diff;  // index |T' \ T|; +inf if unattained
};

TreeScan scan_spanning_trees(const Network& net);

// min (len(T') - len(T)) / n over spanning trees with |T' \ T| >= k.
double exact_epsilon(const Network& net, std::int64_t k);

// Kirchhoff determinant count, the independent cross-check for enumeration.
double matrix_tree_count(const Network& net);

}  // namespace mstlab
