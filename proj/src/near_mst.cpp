#include "mstlab/near_mst.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mstlab/enumeration.hpp"

namespace mstlab {

std::string strategy_name(SwapStrategy s) {
  return s == SwapStrategy::disjoint ? "disjoint" : "sequential";
}

double epsilon_lower_bound(const ExcessTable& tbl, std::int64_t k, bool* trusted) {
  if (k < 0) throw std::invalid_argument("negative swap count");
  if (k > static_cast<std::int64_t>(tbl.sorted_positive.size()))
    throw std::runtime_error("insufficient candidates");
  double sum = 0.0;
  bool in_range = true;
  for (std::int64_t i = 0; i < k; ++i) {
    const ExcessRow& row =
        tbl.rows[static_cast<std::size_t>(tbl.sorted_positive[static_cast<std::size_t>(i)])];
    sum += row.exc;
    if (row.exc > tbl.trusted_exc_max) in_range = false;
  }
  if (trusted) *trusted = in_range;
  return sum / static_cast<double>(tbl.n_vertices);
}

namespace {

SwapPlan plan_disjoint(const Network& net, const ExcessTable& tbl, std::int64_t k_max) {
  SwapPlan plan;
  std::vector<char> removed(static_cast<std::size_t>(net.n_edges()), 0);
  for (EdgeId cand : tbl.sorted_positive) {
    if (static_cast<std::int64_t>(plan.steps.size()) >= k_max) break;
    const ExcessRow& row = tbl.rows[static_cast<std::size_t>(cand)];
    EdgeId cyc = row.cycle_max_edge;
    if (removed[static_cast<std::size_t>(cyc)]) continue;
    removed[static_cast<std::size_t>(cyc)] = 1;
    plan.steps.push_back(SwapStep{cand, cyc, row.exc});
    plan.total_cost += row.exc;
  }
  return plan;
}

SwapPlan plan_sequential(const Network& net, const MstResult& mst,
                         const ExcessTable& tbl, std::int64_t k_max) {
  SwapPlan plan;
  const std::int32_t n = net.n_vertices;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(
      static_cast<std::size_t>(n));
  for (EdgeId t : mst.tree_edges()) {
    const Edge& te = net.edges[static_cast<std::size_t>(t)];
    adj[static_cast<std::size_t>(te.u)].emplace_back(te.v, t);
    adj[static_cast<std::size_t>(te.v)].emplace_back(te.u, t);
  }
  auto drop = [&](VertexId a, EdgeId t) {
    auto& list = adj[static_cast<std::size_t>(a)];
    list.erase(std::find_if(list.begin(), list.end(),
                            [&](const auto& p) { return p.second == t; }));
  };

  std::vector<std::int32_t> seen(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> from(static_cast<std::size_t>(n), -1);
  std::vector<EdgeId> via(static_cast<std::size_t>(n), -1);
  std::vector<VertexId> queue(static_cast<std::size_t>(n));
  std::int32_t epoch = 0;

  for (EdgeId cand : tbl.sorted_positive) {
    if (static_cast<std::int64_t>(plan.steps.size()) >= k_max) break;
    const Edge& ce = net.edges[static_cast<std::size_t>(cand)];

    // Path between the candidate's endpoints in the *current* tree.
    ++epoch;
    std::size_t head = 0, tail = 0;
    queue[tail++] = ce.u;
    seen[static_cast<std::size_t>(ce.u)] = epoch;
    while (head < tail && seen[static_cast<std::size_t>(ce.v)] != epoch) {
      VertexId v = queue[head++];
      for (auto [w, t] : adj[static_cast<std::size_t>(v)]) {
        if (seen[static_cast<std::size_t>(w)] == epoch) continue;
        seen[static_cast<std::size_t>(w)] = epoch;
        from[static_cast<std::size_t>(w)] = v;
        via[static_cast<std::size_t>(w)] = t;
        queue[tail++] = w;
      }
    }

    // Longest still-present original-MST edge on that path; skip the
    // candidate if the path has been rebuilt entirely from added edges.
    EdgeId worst = -1;
    double worst_len = -1.0;
    for (VertexId v = ce.v; v != ce.u; v = from[static_cast<std::size_t>(v)]) {
      EdgeId t = via[static_cast<std::size_t>(v)];
      if (!mst.in_tree(t)) continue;
      double tl = net.edges[static_cast<std::size_t>(t)].len;
      if (tl > worst_len) {
        worst_len = tl;
        worst = t;
      }
    }
    if (worst < 0) continue;

    const Edge& we = net.edges[static_cast<std::size_t>(worst)];
    drop(we.u, worst);
    drop(we.v, worst);
    adj[static_cast<std::size_t>(ce.u)].emplace_back(ce.v, cand);
    adj[static_cast<std::size_t>(ce.v)].emplace_back(ce.u, cand);
    double cost = ce.len - worst_len;
    plan.steps.push_back(SwapStep{cand, worst, cost});
    plan.total_cost += cost;
  }
  return plan;
}

}  // namespace

SwapPlan greedy_exchange_plan(const Network& net, const MstResult& mst,
                              const ExcessTable& tbl, std::int64_t k_max,
                              SwapStrategy strategy) {
  if (k_max < 0) throw std::invalid_argument("negative swap count");
  return strategy == SwapStrategy::disjoint ? plan_disjoint(net, tbl, k_max)
                                            : plan_sequential(net, mst, tbl, k_max);
}

GreedyResult greedy_exchange(const Network& net, const MstResult& mst,
                             const ExcessTable& tbl, std::int64_t k,
                             SwapStrategy strategy) {
  if (k < 1) throw std::invalid_argument("swap count must be positive");
  SwapPlan plan = greedy_exchange_plan(net, mst, tbl, k, strategy);
  if (static_cast<std::int64_t>(plan.steps.size()) < k)
    throw std::runtime_error("exhausted candidates before k swaps");
  double ub = plan.total_cost / static_cast<double>(net.n_vertices);
  return GreedyResult{std::move(plan), ub};
}

std::vector<EdgeId> apply_plan(const MstResult& mst, const SwapPlan& plan,
                               std::size_t n_steps) {
  if (n_steps > plan.steps.size()) throw std::invalid_argument("prefix too long");
  std::vector<EdgeId> edges = mst.tree_edges();
  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 0; i < n_steps; ++i) {
    const SwapStep& s = plan.steps[i];
    auto it = std::lower_bound(edges.begin(), edges.end(), s.removed);
    if (it == edges.end() || *it != s.removed)
      throw std::logic_error("swap removes an absent edge");
    edges.erase(it);
    edges.insert(std::lower_bound(edges.begin(), edges.end(), s.added), s.added);
  }
  return edges;
}

EpsilonCurve epsilon_curve(const Network& net, const MstResult& mst,
                           const ExcessTable& tbl,
                           const std::vector<double>& deltas) {
  if (deltas.empty()) throw std::invalid_argument("deltas is empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] <= 0.0 || deltas[i] >= 1.0)
      throw std::invalid_argument("deltas must lie in (0, 1)");
    if (i > 0 && deltas[i] <= deltas[i - 1])
      throw std::invalid_argument("deltas must be strictly increasing");
  }

  const auto n = static_cast<double>(net.n_vertices);
  std::vector<std::int64_t> ks;
  for (double d : deltas)
    ks.push_back(std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(d * n - 1e-9))));
  const std::int64_t k_max = ks.back();

  SwapPlan disj = greedy_exchange_plan(net, mst, tbl, k_max, SwapStrategy::disjoint);
  SwapPlan seq = greedy_exchange_plan(net, mst, tbl, k_max, SwapStrategy::sequential);
  auto prefix = [](const SwapPlan& p) {
    std::vector<double> ps{0.0};
    for (const SwapStep& s : p.steps) ps.push_back(ps.back() + s.cost);
    return ps;
  };
  std::vector<double> ps_d = prefix(disj);
  std::vector<double> ps_s = prefix(seq);

  const bool small = net.n_vertices <= 12 || net.n_edges() <= 20;
  std::vector<double> exact_suffix;
  if (small) {
    TreeScan scan = scan_spanning_trees(net);
    exact_suffix = scan.min_extra_by_diff;
    for (std::size_t d = exact_suffix.size() - 1; d-- > 0;)
      exact_suffix[d] = std::min(exact_suffix[d], exact_suffix[d + 1]);
  }

  EpsilonCurve curve;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    EpsilonRow row;
    row.k = ks[i];
    row.delta = deltas[i];
    row.lb = epsilon_lower_bound(tbl, row.k, &row.lb_trusted);
    const double inf = std::numeric_limits<double>::infinity();
    double cost_d = row.k < static_cast<std::int64_t>(ps_d.size())
                        ? ps_d[static_cast<std::size_t>(row.k)]
                        : inf;
    double cost_s = row.k < static_cast<std::int64_t>(ps_s.size())
                        ? ps_s[static_cast<std::size_t>(row.k)]
                        : inf;
    if (!std::isfinite(cost_d) && !std::isfinite(cost_s))
      throw std::runtime_error("exhausted candidates before k swaps");
    row.ub = std::min(cost_d, cost_s) / n;
    row.strategy = strategy_name(cost_d <= cost_s ? SwapStrategy::disjoint
                                                  : SwapStrategy::sequential);
    row.ub_tree_diff = row.k;
    if (small && row.k < static_cast<std::int64_t>(exact_suffix.size()))
      row.exact = exact_suffix[static_cast<std::size_t>(row.k)] / n;
    curve.rows.push_back(std::move(row));
  }
  return curve;
}

}  // namespace mstlab
