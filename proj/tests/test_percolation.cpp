// Window percolation: rooted Poisson samples, merge-time marks, the Palm-style
// density estimate, and the in-window minimal-forest criterion.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mstlab/percolation.hpp"

using namespace mstlab;

namespace {

RootedSample manual_sample(int d, double window, std::vector<double> coords) {
  RootedSample s;
  s.d = d;
  s.window = window;
  s.seed = 0;
  s.coords = std::move(coords);
  return s;
}

PercMarks manual_marks(double cutoff, std::vector<Mark> marks) {
  PercMarks pm;
  pm.cutoff = cutoff;
  pm.margin = 2.0 * cutoff;
  pm.marks = std::move(marks);
  return pm;
}

Mark mark(double exc, bool interior) {
  Mark m;
  m.len = 1.0 + exc;
  m.perc = 1.0;
  m.exc = exc;
  m.interior = interior;
  return m;
}

}  // namespace

TEST_CASE("rooted samples are deterministic and stay in the window") {
  RootedSample a = sample_rooted(2, 8.0, 41);
  RootedSample b = sample_rooted(2, 8.0, 41);
  CHECK(a.coords == b.coords);
  CHECK(a.n_points() >= 1);
  REQUIRE(a.coords.size() >= 2);
  CHECK(a.coords[0] == 0.0);  // the origin O sits at index 0
  CHECK(a.coords[1] == 0.0);
  for (double c : a.coords) CHECK(std::abs(c) <= 8.0);

  RootedSample c = sample_rooted(2, 8.0, 42);
  CHECK(a.coords != c.coords);

  RootedSample d3 = sample_rooted(3, 3.0, 7);
  CHECK(d3.coords.size() % 3 == 0);
  CHECK(d3.n_points() * 3 == static_cast<std::int64_t>(d3.coords.size()));

  CHECK_THROWS_AS(sample_rooted(0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_rooted(2, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_rooted(2, -2.0, 1), std::invalid_argument);
}

TEST_CASE("restrict_sample keeps exactly the inside points, in order") {
  RootedSample s = manual_sample(
      2, 5.0, {0.0, 0.0, 1.0, 1.0, 4.5, 0.0, -2.0, 4.9, 3.0, -3.0});
  RootedSample r = restrict_sample(s, 3.0);
  CHECK(r.window == 3.0);
  CHECK(r.d == 2);
  // (4.5, 0) and (-2, 4.9) fall outside; (3, -3) sits on the closed boundary
  CHECK(r.coords == std::vector<double>{0.0, 0.0, 1.0, 1.0, 3.0, -3.0});

  CHECK_THROWS_AS(restrict_sample(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(restrict_sample(s, 5.5), std::invalid_argument);
}

TEST_CASE("merge-time marks on a collinear hand sample") {
  // O, (1,0), (3,0): the far point joins O's component via the middle one
  RootedSample s = manual_sample(2, 20.0, {0.0, 0.0, 1.0, 0.0, 3.0, 0.0});
  PercMarks pm = perc_marks(s, 5.0);
  CHECK(pm.cutoff == 5.0);
  CHECK(pm.margin == 10.0);
  REQUIRE(pm.marks.size() == 2);
  CHECK(pm.marks[0].len == 1.0);
  CHECK(pm.marks[0].perc == 1.0);
  CHECK(pm.marks[0].exc == 0.0);
  CHECK(pm.marks[1].len == 3.0);
  CHECK(pm.marks[1].perc == 2.0);  // bottleneck through (1,0)
  CHECK(pm.marks[1].exc == 1.0);
  CHECK(pm.marks[0].interior);
  CHECK(pm.marks[1].interior);

  CHECK_THROWS_AS(perc_marks(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(perc_marks(s, -1.0), std::invalid_argument);
}

TEST_CASE("degenerate and failing mark computations") {
  RootedSample lonely = manual_sample(2, 1.0, {0.0, 0.0});
  PercMarks pm = perc_marks(lonely, 1.0);
  CHECK(pm.marks.empty());

  RootedSample split = manual_sample(2, 5.0, {0.0, 0.0, 3.0, 0.0});
  CHECK_THROWS_WITH_AS(perc_marks(split, 1.0), "cutoff too small",
                       std::runtime_error);

  RootedSample mirror = manual_sample(2, 5.0, {0.0, 0.0, 1.0, 0.0, -1.0, 0.0});
  CHECK_THROWS_WITH_AS(perc_marks(mirror, 5.0), "tied lengths",
                       std::runtime_error);
}

TEST_CASE("automatic cutoff produces exact, well-formed marks") {
  RootedSample s = sample_rooted(2, 30.0, 77);
  PercMarks pm = perc_marks_auto(s);
  CHECK(pm.cutoff > 0.0);
  CHECK(pm.margin == 2.0 * pm.cutoff);
  REQUIRE(pm.marks.size() == static_cast<std::size_t>(s.n_points() - 1));

  std::size_t nearest = 0;
  std::size_t n_interior = 0;
  for (std::size_t i = 0; i < pm.marks.size(); ++i) {
    const Mark& mk = pm.marks[i];
    CHECK(mk.len > 0.0);
    CHECK(mk.perc > 0.0);
    CHECK(mk.perc <= pm.cutoff);  // merges only ever happen below the cutoff
    CHECK(mk.exc >= 0.0);         // a path can't beat the direct connection
    if (mk.len < pm.marks[nearest].len) nearest = i;

    // interior flag against a by-hand reading of the margin rule
    bool interior = true;
    for (int k = 0; k < s.d; ++k) {
      double c = s.coords[(i + 1) * static_cast<std::size_t>(s.d) +
                          static_cast<std::size_t>(k)];
      if (30.0 - std::abs(c) <= pm.margin) interior = false;
    }
    CHECK(mk.interior == interior);
    if (interior) ++n_interior;
  }
  CHECK(n_interior > 0);

  // O's nearest neighbour is the first arrival in O's component, so its merge
  // time is its own distance
  REQUIRE(pm.marks[nearest].len < pm.cutoff);
  CHECK(pm.marks[nearest].exc == 0.0);
}

TEST_CASE("marks are monotone under window growth") {
  RootedSample wide = sample_rooted(2, 16.0, 5);
  RootedSample narrow = restrict_sample(wide, 12.0);
  REQUIRE(narrow.n_points() >= 2);
  CHECK(narrow.n_points() < wide.n_points());

  const double cutoff = 6.0;
  PercMarks pm_wide = perc_marks(wide, cutoff);
  PercMarks pm_narrow = perc_marks(narrow, cutoff);

  // match the shared points: restriction preserves order, so scan in parallel
  std::size_t j = 0;  // index into narrow's non-origin points
  for (std::int64_t p = 1; p < wide.n_points(); ++p) {
    bool inside = std::abs(wide.coords[static_cast<std::size_t>(2 * p)]) <= 12.0 &&
                  std::abs(wide.coords[static_cast<std::size_t>(2 * p + 1)]) <= 12.0;
    if (!inside) continue;
    const Mark& mw = pm_wide.marks[static_cast<std::size_t>(p - 1)];
    const Mark& mn = pm_narrow.marks[j++];
    CHECK(mw.len == mn.len);
    // extra points outside the narrow window can only speed up merging
    CHECK(mw.perc <= mn.perc);
  }
  CHECK(j == static_cast<std::size_t>(narrow.n_points() - 1));
}

TEST_CASE("replica density estimate on hand-built marks") {
  std::vector<PercMarks> reps;
  reps.push_back(manual_marks(3.0, {mark(0.01, true), mark(0.5, true),
                                    mark(0.03, false), mark(0.0, true)}));
  reps.push_back(manual_marks(4.0, {mark(0.04, true)}));

  MuEstimate est = mu_density_estimate(reps, {0.05, 1.0, 2.0});
  CHECK(est.n == 2);
  REQUIRE(est.mu_hat.size() == 3);
  // x = 0.05: one qualifying mark in each replica (exc = 0 is excluded)
  CHECK(est.mu_hat[0] == 1.0);
  CHECK(est.stderr_mu[0] == 0.0);
  CHECK(est.density_hat[0] == 20.0);
  // x = 1.0: counts 2 and 1
  CHECK(est.mu_hat[1] == 1.5);
  CHECK(est.stderr_mu[1] == 0.5);
  CHECK(est.density_hat[1] == 1.5);
  // x = 2.0: same counts, but beyond the smallest cutoff's trusted half
  CHECK(est.mu_hat[2] == 1.5);
  CHECK(est.trusted == std::vector<bool>{true, true, false});

  CHECK_THROWS_AS(mu_density_estimate({}, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(mu_density_estimate(reps, {}), std::invalid_argument);
  CHECK_THROWS_AS(mu_density_estimate(reps, {0.0, 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(mu_density_estimate(reps, {0.2, 0.1}), std::invalid_argument);
}

TEST_CASE("minimal-forest criterion matches the window MST exactly") {
  RootedSample s = sample_rooted(2, 10.0, 21);
  MsfReport rep = msf_window_diagnostic(s, 4.0);
  CHECK(rep.n_candidates > 0);
  CHECK(rep.interior_mst_only.empty());
  CHECK(rep.interior_criterion_only.empty());
  // on a finite connected window the criterion is exact everywhere, boundary
  // included; the split is only reported for the infinite-volume reading
  CHECK(rep.boundary_mst_only == 0);
  CHECK(rep.boundary_criterion_only == 0);

  CHECK_THROWS_WITH_AS(msf_window_diagnostic(s, 0.05), "cutoff too small",
                       std::runtime_error);
}
