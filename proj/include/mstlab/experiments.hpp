#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mstlab/network.hpp"

namespace mstlab {

struct PercolationBlock {
  double window = 50.0;
  int replicas = 20;
  std::vector<double> x_grid{0.02, 0.05, 0.1, 0.2};
  std::vector<std::uint64_t> replica_seeds;  // optional explicit seed list
};

// Declarative description of a sweep; serializes to/from JSON so a run is a
// pure function of the committed config file.
struct ExperimentConfig {
  std::string model = "lattice";  // lattice | euclidean
  int d = 2;
  std::string dist = "uniform01";  // lattice edge-length law
  std::vector<std::int64_t> sizes;  // lattice side m, or point count n
  double cutoff = 0.0;              // euclidean candidate radius; <= 0 = auto
  std::vector<double> deltas;
  int replicas = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> analyses{"curve"};  // curve|mu|configs|percolation
  std::vector<double> mu_x_grid{0.02, 0.05, 0.1, 0.2};
  double config_delta = 0.5;
  std::vector<std::uint64_t> replica_seeds;  // optional explicit seed list
  std::optional<PercolationBlock> percolation;
};

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

// Per-replica seed: the pre-registered list entry when one is committed,
// otherwise derived from the master seed.
std::uint64_t replica_seed(const ExperimentConfig& cfg, std::size_t size_index,
                           int replica);

struct CurveCell {
  std::int64_t size = 0;
  std::int64_t n_vertices = 0;
  double delta = 0.0;
  std::int64_t k = 0;
  double lb_mean = 0.0, lb_stderr = 0.0;
  double ub_mean = 0.0, ub_stderr = 0.0;
  double ratio = 0.0;      // ub_mean / lb_mean
  double predicted = 0.0;  // delta^2 / (2 f_mu_hat); 0 when mu not estimated
  bool trusted = true;     // lower bound inside the trusted excess range
  bool in_fit = false;     // row used for the slope regression
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int n_points = 0;
};

struct MuCell {
  double x = 0.0;
  double mu_mean = 0.0;
  double density_mean = 0.0;
  double stderr_mu = 0.0;
  bool trusted = true;
};

struct ConfigLawCell {
  std::int64_t size = 0;
  std::int64_t n_vertices = 0;
  std::int64_t usable_blocks = 0;
  double freq_mean = 0.0, freq_stderr = 0.0;  // matches per usable block
  double cost_mean = 0.0, cost_stderr = 0.0;  // swap cost per usable block
  double q_pred = 0.0, r_pred = 0.0, c_slope = 0.0;
  bool has_prediction = false;  // the euclidean variant has no closed rate
};

struct PercolationReport {
  double window = 0.0;
  int replicas = 0;
  std::vector<MuCell> mu;  // Palm-style: mu_mean is a count, not per vertex
  std::int64_t interior_symdiff = 0;  // forest-criterion mismatches (expect 0)
  std::int64_t boundary_symdiff = 0;  // reported, not asserted
  double cutoff_max = 0.0;
};

struct SizeReport {
  std::int64_t size = 0;
  std::int64_t n_vertices = 0;
  std::vector<CurveCell> cells;
  SlopeFit alpha_lb, alpha_ub;  // n_points == 0 means not fitted
  double f_mu_hat = 0.0;        // density at the smallest mu grid point
  std::vector<MuCell> mu;
  std::optional<ConfigLawCell> configs;
};

struct RunReport {
  ExperimentConfig config;
  std::vector<SizeReport> sizes;
  std::optional<PercolationReport> percolation;
  std::vector<std::string> replica_failures;
};

// Runs every configured analysis. The worker count changes scheduling only,
// never any emitted number; aborts when more than 10% of replicas fail.
RunReport run_scaling_experiment(const ExperimentConfig& cfg, int workers = 1);

// Disjoint 3x3 block census. Lattice networks get the exact twelve-length
// block pattern; euclidean networks get the three-points-in-a-unit-square
// variant. Anything else is refused ("non-lattice input").
struct ConfigCount {
  std::int64_t usable_blocks = 0;
  std::int64_t matches = 0;
  double cost_sum = 0.0;
};

ConfigCount config_count(const Network& net, double delta);

struct LbCheckResult {
  bool pass = true;
  double min_margin = std::numeric_limits<double>::infinity();
};

// Necessary consequence of the analytic bound: mean ub >= (c_n/n) delta^2 / 8
// for the d=2 lattice with density bound 1, c_n = 2(n - sqrt(n)).
LbCheckResult model1_lb_check(const RunReport& report);

}  // namespace mstlab
