#pragma once

#include <cstdint>
#include <vector>

#include "mstlab/excess.hpp"
#include "mstlab/network.hpp"

namespace mstlab {

// Finite-window stand-in for the origin-rooted Poisson picture: a Poisson
// number of uniform points in [-W, W]^d with a distinguished origin point
// prepended at index 0.
struct RootedSample {
  int d = 2;
  double window = 0.0;  // half side W
  std::uint64_t seed = 0;
  std::vector<double> coords;  // row-major; point 0 is the origin O

  std::int64_t n_points() const {
    return static_cast<std::int64_t>(coords.size()) / d;
  }
};

RootedSample sample_rooted(int d, double window, std::uint64_t seed);

// Drop every non-origin point outside the smaller window; used by the
// window-stability diagnostics (coupled realizations share the point set).
RootedSample restrict_sample(const RootedSample& s, double window);

struct Mark {
  double len = 0.0;   // |O - point|
  double perc = 0.0;  // merge time joining the point's component to O's
  double exc = 0.0;
  bool interior = false;  // point and O both further than `margin` from the boundary
};

struct PercMarks {
  std::vector<Mark> marks;  // marks[i] belongs to sample point i + 1
  double cutoff = 0.0;
  double margin = 0.0;  // 2 * cutoff
};

// Requires the radius-cutoff candidate graph to connect O to every point
// (error "cutoff too small" otherwise); the connectivity certifies that the
// cutoff graph reproduces the complete-graph merge history below the cutoff,
// so the marks are exact, not approximations.
PercMarks perc_marks(const RootedSample& s, double cutoff);

// Doubles an initial data-driven cutoff guess until perc_marks accepts it.
PercMarks perc_marks_auto(const RootedSample& s);

// Palm-style estimate: mean over replicas of the interior mark count with
// 0 < exc < x (no per-vertex normalization), with replica standard errors.
MuEstimate mu_density_estimate(const std::vector<PercMarks>& replicas,
                               const std::vector<double>& x_grid);

// Minimal-forest criterion inside the window: candidate edges with
// len = perc versus the window MST. The interior part of the symmetric
// difference is the assertable half; boundary counts are reported only.
struct MsfReport {
  std::int64_t n_candidates = 0;
  std::vector<EdgeId> interior_mst_only;
  std::vector<EdgeId> interior_criterion_only;
  std::int64_t boundary_mst_only = 0;
  std::int64_t boundary_criterion_only = 0;
};

MsfReport msf_window_diagnostic(const RootedSample& s, double cutoff);

}  // namespace mstlab
