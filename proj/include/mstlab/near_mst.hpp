#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mstlab/excess.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/network.hpp"

namespace mstlab {

struct SwapStep {
  EdgeId added = -1;
  EdgeId removed = -1;
  double cost = 0.0;
};

// Exchange sequence against the original MST; every prefix of the sequence
// is itself a spanning tree differing from the MST in exactly that many edges.
struct SwapPlan {
  std::vector<SwapStep> steps;
  double total_cost = 0.0;
};

enum class SwapStrategy { disjoint, sequential };

std::string strategy_name(SwapStrategy s);

// Sum of the k smallest positive excesses over n_vertices. `trusted`, when
// supplied, reports whether all summed excesses fall in the trusted range.
double epsilon_lower_bound(const ExcessTable& tbl, std::int64_t k,
                           bool* trusted = nullptr);

// Longest achievable swap sequence with at most k_max accepted swaps; stops
// early (without error) when candidates run out.
SwapPlan greedy_exchange_plan(const Network& net, const MstResult& mst,
                              const ExcessTable& tbl, std::int64_t k_max,
                              SwapStrategy strategy);

struct GreedyResult {
  SwapPlan plan;
  double ub = 0.0;  // total_cost / n_vertices
};

// Errors with "exhausted candidates before k swaps" when the strategy cannot
// reach k accepted swaps.
GreedyResult greedy_exchange(const Network& net, const MstResult& mst,
                             const ExcessTable& tbl, std::int64_t k,
                             SwapStrategy strategy);

// Edge set after applying the first n_steps swaps to the MST, sorted by id.
std::vector<EdgeId> apply_plan(const MstResult& mst, const SwapPlan& plan,
                               std::size_t n_steps);

struct EpsilonRow {
  std::int64_t k = 0;
  double delta = 0.0;
  double lb = 0.0;
  bool lb_trusted = true;
  double ub = 0.0;
  std::optional<double> exact;
  std::int64_t ub_tree_diff = 0;
  std::string strategy;  // strategy realizing ub
};

struct EpsilonCurve {
  std::vector<EpsilonRow> rows;
};

// k = ceil(delta * n) per row; ub is the pointwise min over both strategies;
// exact filled by exhaustive enumeration when the instance is small enough.
EpsilonCurve epsilon_curve(const Network& net, const MstResult& mst,
                           const ExcessTable& tbl,
                           const std::vector<double>& deltas);

}  // namespace mstlab
