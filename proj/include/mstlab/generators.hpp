#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mstlab/network.hpp"

namespace mstlab {

struct LatticeSpec {
  int d = 2;             // dimension, >= 2
  std::int64_t m = 2;    // side length, >= 2
  std::string dist = "uniform01";  // uniform01 | exp1
  std::uint64_t seed = 0;
};

struct EuclideanSpec {
  int d = 2;
  std::int64_t n = 2;    // point count
  std::uint64_t seed = 0;
  double cutoff = 0.0;   // candidate-edge radius; <= 0 means auto
};

// Discrete d-cube [0..m-1]^d with i.i.d. edge lengths from dist. Edge order:
// vertices in row-major order, axes in increasing order, lengths drawn in
// edge-id order. Identical spec gives a byte-identical Network.
Network gen_lattice(const LatticeSpec& spec);

// n uniform points in [0, n^{1/d}]^d, candidate edges = all pairs at distance
// <= cutoff found by grid bucketing. With auto cutoff, starts at
// 2 (log n)^{1/d} and doubles until the candidate graph is connected and the
// longest MST edge is <= cutoff/2, which certifies that the candidate MST
// equals the complete-graph MST. Point coordinates land in meta->coords.
Network gen_euclidean(const EuclideanSpec& spec);

// Candidate network over explicitly given points (flat coords, d per point).
// Used by gen_euclidean and by the window-percolation sampler.
Network euclidean_network_from_points(const std::vector<double>& coords, int d,
                                      double cutoff);

// sup of the density of the named edge-length distribution (f-bar).
double dist_density_bound(const std::string& dist);

}  // namespace mstlab
