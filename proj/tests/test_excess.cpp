// Per-edge excess tables, the two independent perc routes, replacement
// values, and the empirical excess measure.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mstlab/excess.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"
#include "mstlab/network.hpp"

using namespace mstlab;

namespace {

Network make_net(VertexId n, std::vector<Edge> edges) {
  Network net;
  net.n_vertices = n;
  net.edges = std::move(edges);
  return net;
}

// 4-cycle 0-1-2-3-0; edge 1 is the expensive one the MST leaves out.
Network four_cycle() {
  return make_net(4, {{0, 1, 0.9}, {1, 2, 0.95}, {2, 3, 0.3}, {0, 3, 0.5}});
}

}  // namespace

TEST_CASE("excess rows on a triangle") {
  Network net = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  REQUIRE(tbl.rows.size() == 3);
  CHECK(tbl.n_vertices == 3);

  CHECK(tbl.rows[0].in_mst);
  CHECK(tbl.rows[0].perc == 1.0);
  CHECK(tbl.rows[0].exc == 0.0);
  CHECK(tbl.rows[0].cycle_max_edge == 0);  // tree edges point at themselves

  CHECK_FALSE(tbl.rows[2].in_mst);
  CHECK(tbl.rows[2].perc == 2.0);
  CHECK(tbl.rows[2].exc == 1.0);
  CHECK(tbl.rows[2].cycle_max_edge == 1);

  CHECK(tbl.sorted_positive == std::vector<EdgeId>{2});
  CHECK(std::isinf(tbl.trusted_exc_max));
}

TEST_CASE("excess rows on the four cycle") {
  Network net = four_cycle();
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  CHECK(mst.in_tree(0));
  CHECK_FALSE(mst.in_tree(1));
  CHECK(tbl.rows[1].perc == 0.9);
  CHECK(tbl.rows[1].exc == 0.95 - 0.9);
  CHECK(tbl.rows[1].cycle_max_edge == 0);
}

TEST_CASE("replacement values") {
  Network net = four_cycle();
  MstResult mst = kruskal_mst(net);
  // deleting tree edge 0 leaves the cut {1} vs {0,2,3}; edge 1 reconnects
  CHECK(excluded_perc(net, mst, 0) == 0.95);
  // a non-tree edge keeps its plain perc
  CHECK(excluded_perc(net, mst, 1) == 0.9);
  // deleting tree edge 3 splits {0,1} vs {2,3}; only edge 1 crosses
  CHECK(excluded_perc(net, mst, 3) == 0.95);
  CHECK_THROWS_AS(excluded_perc(net, mst, 9), std::invalid_argument);

  Network path = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  MstResult pmst = kruskal_mst(path);
  CHECK_THROWS_WITH_AS(excluded_perc(path, pmst, 1), "bridge edge",
                       std::runtime_error);
}

TEST_CASE("merge-time index on a collinear instance") {
  // points 0, 1, 3 on a line, as a hand-built network
  Network net = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  PercIndex idx(net);
  CHECK(idx.perc(0, 1) == 1.0);
  CHECK(idx.perc(1, 2) == 2.0);
  CHECK(idx.perc(0, 2) == 2.0);  // both joined once 1-2 arrives
  CHECK(idx.perc(2, 0) == 2.0);
  CHECK_THROWS_WITH_AS(idx.perc(1, 1), "degenerate query", std::invalid_argument);
  CHECK_THROWS_AS(idx.perc(0, 5), std::invalid_argument);
  CHECK_THROWS_WITH_AS(PercIndex(make_net(3, {{0, 1, 1.0}})), "not connected",
                       std::runtime_error);
}

TEST_CASE("merge-time perc equals path-max perc on every edge") {
  Network net = gen_lattice({2, 7, "uniform01", 31});
  MstResult mst = kruskal_mst(net);
  PercIndex idx(net);
  for (EdgeId e = 0; e < net.n_edges(); ++e) {
    const Edge& ed = net.edges[e];
    double via_tree = mst.in_tree(e) ? ed.len : mst.path_max(ed.u, ed.v).len;
    CHECK(idx.perc(ed.u, ed.v) == via_tree);
  }
}

TEST_CASE("merge-time perc equals path-max perc on all pairs") {
  Network net = gen_lattice({2, 9, "exp1", 17});  // 81 vertices
  MstResult mst = kruskal_mst(net);
  PercIndex idx(net);
  for (VertexId u = 0; u < net.n_vertices; ++u)
    for (VertexId v = u + 1; v < net.n_vertices; ++v)
      CHECK(idx.perc(u, v) == mst.path_max(u, v).len);
}

TEST_CASE("parallel kernel matches the serial reference") {
  Network net = gen_lattice({2, 9, "uniform01", 77});
  MstResult mst = kruskal_mst(net);
  ExcessTable par = excess_table(net, mst);
  ExcessTable ser = excess_table_serial(net, mst);
  REQUIRE(par.rows.size() == ser.rows.size());
  for (std::size_t e = 0; e < par.rows.size(); ++e) {
    CHECK(par.rows[e].len == ser.rows[e].len);
    CHECK(par.rows[e].perc == ser.rows[e].perc);
    CHECK(par.rows[e].exc == ser.rows[e].exc);
    CHECK(par.rows[e].in_mst == ser.rows[e].in_mst);
    CHECK(par.rows[e].cycle_max_edge == ser.rows[e].cycle_max_edge);
  }
  CHECK(par.sorted_positive == ser.sorted_positive);
  CHECK(par.trusted_exc_max == ser.trusted_exc_max);
}

TEST_CASE("sorted candidates are ordered by excess") {
  Network net = gen_lattice({2, 9, "uniform01", 4});
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);
  CHECK(tbl.sorted_positive.size() ==
        static_cast<std::size_t>(net.n_edges() - (net.n_vertices - 1)));
  for (std::size_t i = 1; i < tbl.sorted_positive.size(); ++i) {
    const ExcessRow& a = tbl.rows[tbl.sorted_positive[i - 1]];
    const ExcessRow& b = tbl.rows[tbl.sorted_positive[i]];
    CHECK(a.exc <= b.exc);
  }
  for (EdgeId e : tbl.sorted_positive) CHECK(tbl.rows[e].exc > 0.0);
}

TEST_CASE("empirical mu on hand instances") {
  Network tri = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  MstResult mst = kruskal_mst(tri);
  ExcessTable tbl = excess_table(tri, mst);
  MuEstimate est = empirical_mu(tbl, {0.5, 1.5});
  CHECK(est.n == 3);
  CHECK(est.mu_hat == std::vector<double>{0.0, 1.0 / 3.0});
  CHECK(est.density_hat[0] == 0.0);
  CHECK(est.density_hat[1] == (1.0 / 3.0) / 1.5);
  CHECK(est.trusted == std::vector<bool>{true, true});
  CHECK(est.stderr_mu.empty());  // single-network estimate

  // a tree has no positive excesses at all
  Network path = make_net(3, {{0, 1, 1.0}, {1, 2, 2.0}});
  MstResult pmst = kruskal_mst(path);
  MuEstimate none = empirical_mu(excess_table(path, pmst), {1.0});
  CHECK(none.mu_hat == std::vector<double>{0.0});

  CHECK_THROWS_WITH_AS(empirical_mu(tbl, {}), "x_grid is empty",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(empirical_mu(tbl, {0.0, 1.0}), "x_grid must be positive",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(empirical_mu(tbl, {1.0, 1.0}),
                       "x_grid must be strictly increasing", std::invalid_argument);
}

TEST_CASE("pruned euclidean tables carry a trusted excess range") {
  EuclideanSpec spec;
  spec.d = 2;
  spec.n = 120;
  spec.seed = 21;
  Network net = gen_euclidean(spec);
  MstResult mst = kruskal_mst(net);
  ExcessTable tbl = excess_table(net, mst);

  double longest = 0.0;
  for (EdgeId e : mst.tree_edges()) longest = std::max(longest, net.edges[e].len);
  double want = std::max(
      0.0, std::min(net.meta->cutoff / 2.0, net.meta->cutoff - longest));
  CHECK(tbl.trusted_exc_max == want);
  CHECK(tbl.trusted_exc_max > 0.0);  // certified cutoff keeps a usable range

  MuEstimate est = empirical_mu(tbl, {want / 2.0, want * 2.0});
  CHECK(est.trusted == std::vector<bool>{true, false});
}
