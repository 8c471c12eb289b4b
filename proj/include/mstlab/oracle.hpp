#pragma once

#include <cstdint>
#include <string>

#include "mstlab/network.hpp"

namespace mstlab {

// Small instances for brute-force cross-checks: a rotation of 2x2 lattices,
// 3x3 lattices, and random connected graphs on at most 9 vertices.
Network random_oracle_instance(std::uint64_t seed);

struct SandwichOutcome {
  bool pass = true;
  std::string detail;  // first violation, empty when pass
};

// Full bracket battery on one instance: for every feasible k,
// lower bound <= exact <= greedy upper bound; the exchange inequality holds
// for every enumerated spanning tree; every greedy plan prefix spans.
SandwichOutcome sandwich_check(const Network& net);

}  // namespace mstlab
