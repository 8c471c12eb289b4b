// Bracketing the near-minimal-tree cost curve: lower bound, the two greedy
// exchange strategies, exhaustive enumeration, and their mutual consistency.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "mstlab/enumeration.hpp"
#include "mstlab/excess.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/near_mst.hpp"
#include "mstlab/network.hpp"
#include "mstlab/oracle.hpp"

using namespace mstlab;

namespace {

Network make_net(VertexId n, std::vector<Edge> edges) {
  Network net;
  net.n_vertices = n;
  net.edges = std::move(edges);
  return net;
}

Network four_cycle() {
  return make_net(4, {{0, 1, 0.9}, {1, 2, 0.95}, {2, 3, 0.3}, {0, 3, 0.5}});
}

// Star-ish instance whose two cheap candidates share edge 0 as their cycle
// maximum: the disjoint strategy can accept only one of them, the sequential
// strategy reroutes and accepts both.
Network shared_cycle_max() {
  return make_net(4, {{0, 1, 1.0},
                      {1, 2, 0.2},
                      {0, 2, 1.05},
                      {1, 3, 0.3},
                      {0, 3, 1.08}});
}

EdgeId find_edge(const Network& net, VertexId a, VertexId b) {
  for (EdgeId e = 0; e < net.n_edges(); ++e)
    if ((net.edges[e].u == a && net.edges[e].v == b) ||
        (net.edges[e].u == b && net.edges[e].v == a))
      return e;
  return -1;
}

// 7x7 lattice with one planted cheap-exchange block: central cycle a=0.5 (left),
// b=0.52 (top), c=0.3 (right), d=0.4 (bottom), ring stubs 1.50..1.57, and every
// other length >= 5 with unit spacing so no second cheap exchange exists.
Network planted_lattice() {
  Network net = gen_lattice({2, 7, "uniform01", 1});
  for (EdgeId e = 0; e < net.n_edges(); ++e)
    net.edges[e].len = 5.0 + static_cast<double>(e);
  auto vid = [](int i, int j) { return static_cast<VertexId>(i + 7 * j); };
  auto set_len = [&](int i1, int j1, int i2, int j2, double len) {
    net.edges[find_edge(net, vid(i1, j1), vid(i2, j2))].len = len;
  };
  set_len(1, 1, 1, 2, 0.5);   // a
  set_len(1, 2, 2, 2, 0.52);  // b
  set_len(2, 1, 2, 2, 0.3);   // c
  set_len(1, 1, 2, 1, 0.4);   // d
  set_len(1, 0, 1, 1, 1.50);
  set_len(0, 1, 1, 1, 1.51);
  set_len(2, 0, 2, 1, 1.52);
  set_len(2, 1, 3, 1, 1.53);
  set_len(2, 2, 3, 2, 1.54);
  set_len(2, 2, 2, 3, 1.55);
  set_len(1, 2, 1, 3, 1.56);
  set_len(0, 2, 1, 2, 1.57);
  validate_network(net);
  return net;
}

}  // namespace

TEST_CASE("spanning tree enumeration on small graphs") {
  CHECK(enumerate_spanning_trees(make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}})) == 3);
  CHECK(enumerate_spanning_trees(four_cycle()) == 4);
  CHECK(enumerate_spanning_trees(make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}})) == 1);
  CHECK(enumerate_spanning_trees(make_net(1, {})) == 1);

  // every emitted edge set is a distinct spanning tree
  Network net = shared_cycle_max();
  std::set<std::vector<EdgeId>> seen;
  std::int64_t count = enumerate_spanning_trees(net, [&](const std::vector<EdgeId>& t) {
    CHECK(is_spanning_tree(net, t));
    CHECK(seen.insert(t).second);
  });
  CHECK(count == 8);
  CHECK(static_cast<std::int64_t>(seen.size()) == count);
}

TEST_CASE("enumeration count matches the determinant") {
  Network grid = gen_lattice({2, 3, "uniform01", 6});
  std::int64_t count = enumerate_spanning_trees(grid);
  CHECK(count == 192);  // classical 3x3 grid-graph tree count
  CHECK(matrix_tree_count(grid) == 192.0);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Network inst = random_oracle_instance(seed);
    CHECK(matrix_tree_count(inst) ==
          static_cast<double>(enumerate_spanning_trees(inst)));
  }
  CHECK(matrix_tree_count(make_net(3, {{0, 1, 1.0}})) == 0.0);
}

TEST_CASE("enumeration refuses oversized instances") {
  Network big = gen_lattice({2, 5, "uniform01", 2});  // 25 vertices, 40 edges
  CHECK_THROWS_WITH_AS(enumerate_spanning_trees(big), "instance too large",
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(exact_epsilon(big, 1), "instance too large",
                       std::runtime_error);
}

TEST_CASE("exact epsilon on a triangle") {
  Network tri = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  CHECK(exact_epsilon(tri, 0) == 0.0);
  CHECK(exact_epsilon(tri, 1) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_WITH_AS(exact_epsilon(tri, 2), "k infeasible", std::runtime_error);
  CHECK_THROWS_AS(exact_epsilon(tri, -1), std::invalid_argument);
}

TEST_CASE("lower bound basics") {
  Network net = four_cycle();
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  CHECK(epsilon_lower_bound(tbl, 0) == 0.0);
  CHECK(epsilon_lower_bound(tbl, 1) == (0.95 - 0.9) / 4.0);
  bool trusted = false;
  epsilon_lower_bound(tbl, 1, &trusted);
  CHECK(trusted);
  CHECK_THROWS_WITH_AS(epsilon_lower_bound(tbl, 2), "insufficient candidates",
                       std::runtime_error);
  CHECK_THROWS_AS(epsilon_lower_bound(tbl, -1), std::invalid_argument);
}

TEST_CASE("four cycle: single swap is tight") {
  Network net = four_cycle();
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  EpsilonCurve curve = epsilon_curve(net, mst, tbl, {0.25});
  REQUIRE(curve.rows.size() == 1);
  const EpsilonRow& row = curve.rows[0];
  CHECK(row.k == 1);
  CHECK(row.lb == (0.95 - 0.9) / 4.0);
  CHECK(row.ub == row.lb);  // the greedy swap realizes the excess exactly
  REQUIRE(row.exact.has_value());
  CHECK(*row.exact == doctest::Approx(row.lb).epsilon(1e-12));

  GreedyResult g = greedy_exchange(net, mst, tbl, 1, SwapStrategy::disjoint);
  REQUIRE(g.plan.steps.size() == 1);
  CHECK(g.plan.steps[0].added == 1);
  CHECK(g.plan.steps[0].removed == 0);
  CHECK(is_spanning_tree(net, apply_plan(mst, g.plan, 1)));
}

TEST_CASE("shared cycle maximum separates the two strategies") {
  Network net = shared_cycle_max();
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  REQUIRE(tbl.sorted_positive == std::vector<EdgeId>{2, 4});
  CHECK(tbl.rows[2].cycle_max_edge == 0);
  CHECK(tbl.rows[4].cycle_max_edge == 0);

  SwapPlan disj = greedy_exchange_plan(net, mst, tbl, 2, SwapStrategy::disjoint);
  CHECK(disj.steps.size() == 1);  // second candidate's cycle max already gone
  SwapPlan seq = greedy_exchange_plan(net, mst, tbl, 2, SwapStrategy::sequential);
  REQUIRE(seq.steps.size() == 2);
  CHECK(seq.steps[0].added == 2);
  CHECK(seq.steps[0].removed == 0);
  CHECK(seq.steps[0].cost == doctest::Approx(0.05).epsilon(1e-12));
  // the rerouted second swap removes tree edge 3 and pays more than its excess
  CHECK(seq.steps[1].added == 4);
  CHECK(seq.steps[1].removed == 3);
  CHECK(seq.steps[1].cost == doctest::Approx(1.08 - 0.3).epsilon(1e-12));
  CHECK(seq.steps[1].cost > tbl.rows[4].exc);

  CHECK_THROWS_WITH_AS(greedy_exchange(net, mst, tbl, 2, SwapStrategy::disjoint),
                       "exhausted candidates before k swaps", std::runtime_error);
  GreedyResult g = greedy_exchange(net, mst, tbl, 2, SwapStrategy::sequential);
  CHECK(g.ub == doctest::Approx((0.05 + 0.78) / 4.0).epsilon(1e-12));
  CHECK(apply_plan(mst, g.plan, 2) == std::vector<EdgeId>{1, 2, 4});
  CHECK(is_spanning_tree(net, apply_plan(mst, g.plan, 1)));
  CHECK(is_spanning_tree(net, apply_plan(mst, g.plan, 2)));

  // the curve picks the cheaper strategy per row and hits the exact optimum
  EpsilonCurve curve = epsilon_curve(net, mst, tbl, {0.2, 0.45});
  REQUIRE(curve.rows.size() == 2);
  CHECK(curve.rows[0].k == 1);
  CHECK(curve.rows[0].strategy == "disjoint");  // tie broken toward disjoint
  CHECK(curve.rows[1].k == 2);
  CHECK(curve.rows[1].strategy == "sequential");
  REQUIRE(curve.rows[1].exact.has_value());
  CHECK(curve.rows[1].ub == doctest::Approx(*curve.rows[1].exact).epsilon(1e-12));
  CHECK(curve.rows[0].lb <= curve.rows[0].ub);
  CHECK(curve.rows[1].lb <= curve.rows[1].ub);
}

TEST_CASE("greedy argument validation") {
  Network net = four_cycle();
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  CHECK_THROWS_AS(greedy_exchange(net, mst, tbl, 0, SwapStrategy::disjoint),
                  std::invalid_argument);
  CHECK_THROWS_AS(greedy_exchange_plan(net, mst, tbl, -1, SwapStrategy::disjoint),
                  std::invalid_argument);

  SwapPlan plan = greedy_exchange_plan(net, mst, tbl, 1, SwapStrategy::disjoint);
  CHECK_THROWS_AS(apply_plan(mst, plan, 2), std::invalid_argument);

  Network path = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  MstResult pmst = kruskal_mst(path);
  ExcessTable ptbl = excess_table(path, pmst);
  CHECK_THROWS_WITH_AS(greedy_exchange(path, pmst, ptbl, 1, SwapStrategy::sequential),
                       "exhausted candidates before k swaps", std::runtime_error);

  CHECK_THROWS_AS(epsilon_curve(net, mst, tbl, {}), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_curve(net, mst, tbl, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_curve(net, mst, tbl, {0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_curve(net, mst, tbl, {1.0}), std::invalid_argument);
}

TEST_CASE("curve rows are coherent on a mid-size lattice") {
  Network net = gen_lattice({2, 6, "uniform01", 12});
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  EpsilonCurve curve = epsilon_curve(net, mst, tbl, {0.05, 0.1, 0.2, 0.4});
  REQUIRE(curve.rows.size() == 4);
  double prev_lb = 0.0;
  std::int64_t prev_k = 0;
  for (const EpsilonRow& row : curve.rows) {
    CHECK(row.k >= prev_k);
    CHECK(row.lb >= prev_lb);  // sums of sorted positive excesses grow with k
    CHECK(row.lb <= row.ub + 1e-12);
    CHECK(row.lb_trusted);  // a lattice instance has no pruning horizon
    CHECK(row.ub_tree_diff == row.k);
    prev_lb = row.lb;
    prev_k = row.k;
  }

  // each greedy prefix stays a spanning tree with the advertised difference
  for (SwapStrategy st : {SwapStrategy::disjoint, SwapStrategy::sequential}) {
    SwapPlan plan = greedy_exchange_plan(net, mst, tbl, 12, st);
    for (std::size_t j = 1; j <= plan.steps.size(); ++j) {
      std::vector<EdgeId> tree = apply_plan(mst, plan, j);
      CHECK(is_spanning_tree(net, tree));
      std::size_t diff = 0;
      for (EdgeId e : tree)
        if (!mst.in_tree(e)) ++diff;
      CHECK(diff == j);
    }
  }
}

TEST_CASE("planted block: the greedy finds the cheap exchange") {
  Network net = planted_lattice();
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);

  EdgeId a = find_edge(net, 8, 15);    // (1,1)-(1,2)
  EdgeId b = find_edge(net, 15, 16);   // (1,2)-(2,2)
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  CHECK(mst.in_tree(a));
  CHECK_FALSE(mst.in_tree(b));
  CHECK(tbl.rows[b].exc == 0.52 - 0.5);
  CHECK(tbl.rows[b].cycle_max_edge == a);
  REQUIRE_FALSE(tbl.sorted_positive.empty());
  CHECK(tbl.sorted_positive.front() == b);
  CHECK(tbl.rows[tbl.sorted_positive[1]].exc >= 1.0);  // nothing else is cheap

  for (SwapStrategy st : {SwapStrategy::disjoint, SwapStrategy::sequential}) {
    GreedyResult g = greedy_exchange(net, mst, tbl, 1, st);
    REQUIRE(g.plan.steps.size() == 1);
    CHECK(g.plan.steps[0].added == b);
    CHECK(g.plan.steps[0].removed == a);
    CHECK(g.ub == (0.52 - 0.5) / 49.0);
  }
  CHECK(epsilon_lower_bound(tbl, 1) == (0.52 - 0.5) / 49.0);
}

TEST_CASE("oracle battery passes on a quick sample") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Network net = random_oracle_instance(seed);
    CHECK(net.n_vertices <= 9);
    SandwichOutcome outcome = sandwich_check(net);
    CAPTURE(seed);
    CAPTURE(outcome.detail);
    CHECK(outcome.pass);
  }
}
