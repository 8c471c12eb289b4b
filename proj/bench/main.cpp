// Timing harness for the excess-table kernel: OpenMP version against the
// serial reference, with an equality check so the speedup is of the same
// numbers. Usage: mstlab_bench [lattice-side] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mstlab/excess.hpp"
#include "mstlab/generators.hpp"
#include "mstlab/mst.hpp"

using namespace mstlab;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool tables_equal(const ExcessTable& a, const ExcessTable& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].len != b.rows[i].len || a.rows[i].perc != b.rows[i].perc ||
        a.rows[i].exc != b.rows[i].exc || a.rows[i].in_mst != b.rows[i].in_mst ||
        a.rows[i].cycle_max_edge != b.rows[i].cycle_max_edge)
      return false;
  }
  return a.sorted_positive == b.sorted_positive &&
         a.trusted_exc_max == b.trusted_exc_max;
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t m = argc > 1 ? std::atoll(argv[1]) : 300;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  if (m < 2 || repeats < 1) {
    std::fprintf(stderr, "usage: %s [lattice-side >= 2] [repeats >= 1]\n",
                 argv[0]);
    return 2;
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (OpenMP disabled)\n");
#endif

  Network net = gen_lattice({2, m, "uniform01", 7});
  MstResult mst = kruskal_mst(net);
  std::printf("lattice %lld x %lld: %d vertices, %d edges\n",
              static_cast<long long>(m), static_cast<long long>(m),
              net.n_vertices, net.n_edges());

  double best_par = 1e300, best_ser = 1e300;
  ExcessTable par, ser;
  for (int r = 0; r < repeats; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    par = excess_table(net, mst);
    best_par = std::min(best_par, seconds_since(t0));

    t0 = std::chrono::steady_clock::now();
    ser = excess_table_serial(net, mst);
    best_ser = std::min(best_ser, seconds_since(t0));
  }

  if (!tables_equal(par, ser)) {
    std::printf("MISMATCH: parallel and serial tables differ\n");
    return 1;
  }
  std::printf("parallel: %.3fs  serial: %.3fs  speedup: %.2fx  (tables equal)\n",
              best_par, best_ser, best_ser / best_par);
  return 0;
}
