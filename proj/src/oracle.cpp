#include "mstlab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "mstlab/enumeration.hpp"
#include "mstlab/excess.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/near_mst.hpp"
#include "mstlab/rng.hpp"

namespace mstlab {

namespace {

Network random_connected_graph(Rng& rng) {
  const auto n = static_cast<std::int32_t>(4 + rng.next_u64() % 6);  // 4..9
  Network net;
  net.n_vertices = n;
  std::set<double> used;
  auto fresh_len = [&] {
    for (;;) {
      double len = rng.next_u01();
      if (len > 0.0 && used.insert(len).second) return len;
    }
  };
  std::set<std::pair<VertexId, VertexId>> pairs;
  // random spanning tree first, so connectivity holds by construction
  for (VertexId v = 1; v < n; ++v) {
    auto p = static_cast<VertexId>(rng.next_u64() % static_cast<std::uint64_t>(v));
    pairs.insert({p, v});
    net.edges.push_back(Edge{p, v, fresh_len()});
  }
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      if (net.n_edges() >= 14) break;
      if (pairs.count({u, v})) continue;
      if (rng.next_u01() < 0.35) {
        pairs.insert({u, v});
        net.edges.push_back(Edge{u, v, fresh_len()});
      }
    }
  validate_network(net);
  return net;
}

}  // namespace

Network random_oracle_instance(std::uint64_t seed) {
  Rng rng(derive_seed(seed, "oracle-instance"));
  const std::uint64_t kind = rng.next_u64() % 3;
  const std::uint64_t sub = rng.next_u64();
  if (kind == 0)
    return gen_lattice(LatticeSpec{2, 2, sub % 2 ? "uniform01" : "exp1", sub});
  if (kind == 1)
    return gen_lattice(LatticeSpec{2, 3, sub % 2 ? "uniform01" : "exp1", sub});
  return random_connected_graph(rng);
}

SandwichOutcome sandwich_check(const Network& net) {
  constexpr double kTol = 1e-9;
  SandwichOutcome out;
  auto fail = [&](const std::string& what) {
    if (out.pass) {
      out.pass = false;
      out.detail = what;
    }
  };

  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table_serial(net, mst);
  const auto n = static_cast<double>(net.n_vertices);

  // Exchange inequality pointwise over every spanning tree.
  TreeScan scan;
  scan.mst_len = mst.total_len();
  scan.min_extra_by_diff.assign(static_cast<std::size_t>(net.n_vertices),
                                std::numeric_limits<double>::infinity());
  enumerate_spanning_trees(net, [&](const std::vector<EdgeId>& tree) {
    double len = 0.0, exc_sum = 0.0;
    std::size_t diff = 0;
    for (EdgeId e : tree) {
      len += net.edges[static_cast<std::size_t>(e)].len;
      if (!mst.in_tree(e)) {
        ++diff;
        exc_sum += tbl.rows[static_cast<std::size_t>(e)].exc;
      }
    }
    const double extra = len - scan.mst_len;
    if (extra + kTol < exc_sum) fail("exchange inequality violated");
    scan.min_extra_by_diff[diff] = std::min(scan.min_extra_by_diff[diff], extra);
  });
  if (!out.pass) return out;

  std::size_t max_diff = 0;
  for (std::size_t d = 0; d < scan.min_extra_by_diff.size(); ++d)
    if (std::isfinite(scan.min_extra_by_diff[d])) max_diff = d;
  std::vector<double> suffix = scan.min_extra_by_diff;
  for (std::size_t d = suffix.size() - 1; d-- > 0;)
    suffix[d] = std::min(suffix[d], suffix[d + 1]);

  SwapPlan disj = greedy_exchange_plan(net, mst, tbl,
                                       static_cast<std::int64_t>(max_diff),
                                       SwapStrategy::disjoint);
  SwapPlan seq = greedy_exchange_plan(net, mst, tbl,
                                      static_cast<std::int64_t>(max_diff),
                                      SwapStrategy::sequential);
  for (const SwapPlan* plan : {&disj, &seq})
    for (std::size_t j = 1; j <= plan->steps.size(); ++j)
      if (!is_spanning_tree(net, apply_plan(mst, *plan, j)))
        fail("greedy prefix is not a spanning tree");
  if (!out.pass) return out;
  if (seq.steps.size() < max_diff) fail("sequential strategy fell short");

  auto prefix_cost = [](const SwapPlan& p, std::size_t k) {
    double c = 0.0;
    for (std::size_t i = 0; i < k; ++i) c += p.steps[i].cost;
    return c;
  };
  for (std::size_t k = 1; k <= max_diff && out.pass; ++k) {
    const double lb = epsilon_lower_bound(tbl, static_cast<std::int64_t>(k));
    const double exact = suffix[k] / n;
    double ub = std::numeric_limits<double>::infinity();
    if (disj.steps.size() >= k) ub = std::min(ub, prefix_cost(disj, k) / n);
    if (seq.steps.size() >= k) ub = std::min(ub, prefix_cost(seq, k) / n);
    std::ostringstream at;
    at << " at k=" << k;
    if (!std::isfinite(ub)) {
      fail("no greedy upper bound" + at.str());
    } else if (lb > exact + kTol) {
      fail("lower bound exceeds exact" + at.str());
    } else if (exact > ub + kTol) {
      fail("exact exceeds greedy upper bound" + at.str());
    }
  }
  return out;
}

}  // namespace mstlab
