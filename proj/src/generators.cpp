#include "mstlab/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mstlab/mst.hpp"
#include "mstlab/rng.hpp"

namespace mstlab {

namespace {

// Redraws any length that collides with another at the representation level.
// Fires with probability ~0; kept so downstream distinctness invariants are
// unconditional.
void make_distinct(std::vector<double>& lens, Rng& rng,
                   const std::string& dist) {
  auto draw = [&]() {
    return dist == "exp1" ? rng.next_exp1() : rng.next_u01();
  };
  for (;;) {
    std::vector<std::pair<double, std::size_t>> sorted(lens.size());
    for (std::size_t i = 0; i < lens.size(); ++i) sorted[i] = {lens[i], i};
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> collide;
    for (std::size_t i = 1; i < sorted.size(); ++i)
      if (sorted[i].first == sorted[i - 1].first)
        collide.push_back(sorted[i].second);
    if (collide.empty()) return;
    std::sort(collide.begin(), collide.end());
    for (std::size_t idx : collide) lens[idx] = draw();
  }
}

}  // namespace

double dist_density_bound(const std::string& dist) {
  if (dist == "uniform01") return 1.0;
  if (dist == "exp1") return 1.0;  // e^{-x} peaks at 1
  throw std::invalid_argument("unknown distribution tag: " + dist);
}

Network gen_lattice(const LatticeSpec& spec) {
  if (spec.d < 2) throw std::invalid_argument("d must be >= 2");
  if (spec.m < 2) throw std::invalid_argument("m must be >= 2");
  dist_density_bound(spec.dist);  // validates the tag

  const std::int64_t limit = std::numeric_limits<EdgeId>::max();
  std::int64_t n = 1;
  for (int k = 0; k < spec.d; ++k) {
    if (n > limit / spec.m) throw std::invalid_argument("lattice too large");
    n *= spec.m;
  }
  // edge count d * m^{d-1} * (m-1)
  const std::int64_t n_edges = spec.d * (n / spec.m) * (spec.m - 1);
  if (n_edges > limit) throw std::invalid_argument("lattice too large");

  Network net;
  net.n_vertices = static_cast<VertexId>(n);
  net.edges.reserve(n_edges);

  std::vector<std::int64_t> stride(spec.d);
  stride[0] = 1;
  for (int k = 1; k < spec.d; ++k) stride[k] = stride[k - 1] * spec.m;

  std::vector<std::int64_t> coord(spec.d, 0);
  for (std::int64_t v = 0; v < n; ++v) {
    for (int axis = 0; axis < spec.d; ++axis) {
      if (coord[axis] + 1 < spec.m)
        net.edges.push_back({static_cast<VertexId>(v),
                             static_cast<VertexId>(v + stride[axis]), 0.0});
    }
    for (int axis = 0; axis < spec.d; ++axis) {
      if (++coord[axis] < spec.m) break;
      coord[axis] = 0;
    }
  }

  Rng rng(derive_seed(spec.seed, "lattice-lengths"));
  std::vector<double> lens(net.edges.size());
  if (spec.dist == "exp1")
    for (double& x : lens) x = rng.next_exp1();
  else
    for (double& x : lens) x = rng.next_u01();
  make_distinct(lens, rng, spec.dist);
  for (std::size_t i = 0; i < lens.size(); ++i) net.edges[i].len = lens[i];

  ModelMeta meta;
  meta.model = "lattice";
  meta.d = spec.d;
  meta.m = spec.m;
  meta.n = n;
  meta.seed = spec.seed;
  meta.dist = spec.dist;
  net.meta = std::move(meta);
  return net;
}

Network euclidean_network_from_points(const std::vector<double>& coords, int d,
                                      double cutoff) {
  if (d < 1 || coords.size() % d != 0)
    throw std::invalid_argument("bad coordinate array");
  const std::int64_t n = static_cast<std::int64_t>(coords.size()) / d;
  if (cutoff <= 0.0) throw std::invalid_argument("cutoff must be positive");

  double lo = 0.0, hi = 0.0;
  for (double c : coords) {
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  const double span = std::max(hi - lo, cutoff);

  // Cell side >= cutoff keeps the 3^d-neighborhood scan exhaustive; the cap
  // bounds the bucket array when cutoff is tiny relative to the span.
  std::int64_t cells_per_axis =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(span / cutoff));
  const std::int64_t cap_total = std::max<std::int64_t>(1024, 8 * n);
  while (cells_per_axis > 1) {
    std::int64_t total = 1;
    bool over = false;
    for (int k = 0; k < d; ++k) {
      if (total > cap_total / cells_per_axis) {
        over = true;
        break;
      }
      total *= cells_per_axis;
    }
    if (!over) break;
    cells_per_axis /= 2;
  }
  const double cell_side = span / static_cast<double>(cells_per_axis);

  std::int64_t n_cells = 1;
  for (int k = 0; k < d; ++k) n_cells *= cells_per_axis;

  auto axis_cell = [&](std::int64_t p, int k) {
    auto c = static_cast<std::int64_t>((coords[p * d + k] - lo) / cell_side);
    return std::clamp<std::int64_t>(c, 0, cells_per_axis - 1);
  };

  std::vector<std::vector<std::int32_t>> buckets(n_cells);
  for (std::int64_t p = 0; p < n; ++p) {
    std::int64_t idx = 0;
    for (int k = d - 1; k >= 0; --k) idx = idx * cells_per_axis + axis_cell(p, k);
    buckets[idx].push_back(static_cast<std::int32_t>(p));
  }

  const double cutoff2 = cutoff * cutoff;
  std::vector<Edge> edges;
  std::vector<std::int64_t> cc(d);
  for (std::int64_t p = 0; p < n; ++p) {
    for (int k = 0; k < d; ++k) cc[k] = axis_cell(p, k);
    // enumerate neighbor cells via an odometer over offsets in {-1,0,1}^d
    std::vector<int> off(d, -1);
    for (;;) {
      std::int64_t idx = 0;
      bool valid = true;
      for (int k = d - 1; k >= 0; --k) {
        std::int64_t c = cc[k] + off[k];
        if (c < 0 || c >= cells_per_axis) {
          valid = false;
          break;
        }
        idx = idx * cells_per_axis + c;
      }
      if (valid) {
        for (std::int32_t q : buckets[idx]) {
          if (q <= p) continue;
          double dist2 = 0.0;
          for (int k = 0; k < d; ++k) {
            double diff = coords[p * d + k] - coords[q * d + k];
            dist2 += diff * diff;
          }
          if (dist2 <= cutoff2)
            edges.push_back({static_cast<VertexId>(p), q, std::sqrt(dist2)});
        }
      }
      int axis = 0;
      while (axis < d && ++off[axis] > 1) off[axis++] = -1;
      if (axis == d) break;
    }
  }

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  Network net;
  net.n_vertices = static_cast<VertexId>(n);
  net.edges = std::move(edges);
  return net;
}

Network gen_euclidean(const EuclideanSpec& spec) {
  if (spec.d < 2) throw std::invalid_argument("d must be >= 2");
  if (spec.n < 2) throw std::invalid_argument("n must be >= 2");

  const double side = std::pow(static_cast<double>(spec.n), 1.0 / spec.d);
  Rng rng(derive_seed(spec.seed, "euclidean-points"));
  std::vector<double> coords(spec.n * spec.d);
  for (double& c : coords) c = rng.next_u01() * side;

  const bool auto_cutoff = spec.cutoff <= 0.0;
  double cutoff = auto_cutoff
                      ? 2.0 * std::pow(std::log(static_cast<double>(spec.n)),
                                       1.0 / spec.d)
                      : spec.cutoff;
  if (auto_cutoff && !(cutoff > 0.0)) cutoff = 1.0;

  bool validated = false;
  Network net;
  for (;;) {
    net = euclidean_network_from_points(coords, spec.d, cutoff);

    // Representation-level distance ties: redraw the later point and restart.
    {
      std::vector<double> lens(net.edges.size());
      for (std::size_t i = 0; i < lens.size(); ++i) lens[i] = net.edges[i].len;
      std::sort(lens.begin(), lens.end());
      auto tie = std::adjacent_find(lens.begin(), lens.end());
      if (tie != lens.end()) {
        double bad = *tie;
        for (const Edge& e : net.edges)
          if (e.len == bad) {
            for (int k = 0; k < spec.d; ++k)
              coords[e.v * spec.d + k] = rng.next_u01() * side;
            break;
          }
        continue;
      }
    }

    if (is_connected(net)) {
      MstResult mst = kruskal_mst(net);
      double longest = 0.0;
      for (EdgeId e : mst.tree_edges())
        longest = std::max(longest, net.edges[e].len);
      if (longest <= cutoff / 2.0) {
        validated = true;
        break;
      }
    }
    if (!auto_cutoff) {
      if (!is_connected(net))
        throw std::runtime_error("cutoff too small");
      break;  // fixed cutoff, connected but uncertified
    }
    cutoff *= 2.0;
  }

  ModelMeta meta;
  meta.model = "euclidean";
  meta.d = spec.d;
  meta.n = spec.n;
  meta.seed = spec.seed;
  meta.cutoff = cutoff;
  meta.cutoff_validated = validated;
  meta.coords = std::move(coords);
  net.meta = std::move(meta);
  return net;
}

}  // namespace mstlab
