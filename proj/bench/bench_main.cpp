// Serial vs OpenMP timing for the enumeration and Monte Carlo kernels.
// Usage: ptf_bench [repeats]

#include <cstdio>
#include <cstdlib>
#include <string>

#include "ptf/boolean_sense.hpp"
#include "ptf/families.hpp"
#include "ptf/gaussian_sense.hpp"
#include "ptf/parallel.hpp"
#include "ptf/reduction.hpp"
#include "ptf/rng.hpp"
#include "ptf/truth_table.hpp"

using namespace ptf;

namespace {

template <class Fn>
double time_best(int repeats, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const double t0 = wall_time();
    fn();
    best = std::min(best, wall_time() - t0);
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4f s %10.4f s %8.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d, repeats: %d\n", max_threads(), repeats);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial", "openmp",
              "speedup");

  {
    std::vector<double> base(1 << 22);
    Rng rng = Rng::stream(7, 900);
    for (double& v : base) v = rng.normal();
    auto v1 = base, v2 = base;
    const double ts =
        time_best(repeats, [&] { walsh_hadamard(v1, Exec::serial); });
    const double tp =
        time_best(repeats, [&] { walsh_hadamard(v2, Exec::parallel); });
    report("walsh-hadamard n=22", ts, tp);
  }

  {
    Rng rng = Rng::stream(7, 901);
    PtfBoolean f = random_ptf_checked("dense", 22, 2, 0, rng);
    const TruthTable& table = f.ensure_table();
    const double ts =
        time_best(repeats, [&] { (void)exact_as(table, Exec::serial); });
    const double tp =
        time_best(repeats, [&] { (void)exact_as(table, Exec::parallel); });
    report("exact-as n=22", ts, tp);
  }

  {
    Rng rng = Rng::stream(7, 902);
    const HermiteExpansion p = random_expansion(8, 3, rng);
    const double ts = time_best(repeats, [&] {
      (void)estimate_gns(p, 0.1, 400000, 7, Exec::serial);
    });
    const double tp = time_best(repeats, [&] {
      (void)estimate_gns(p, 0.1, 400000, 7, Exec::parallel);
    });
    report("gns 4e5 samples", ts, tp);
  }

  {
    Rng rng = Rng::stream(7, 903);
    PtfBoolean f = random_ptf_checked("dense", 12, 2, 0, rng);
    const TruthTable& table = f.ensure_table();
    const double ts = time_best(repeats, [&] {
      (void)reduction_estimate(table, 2, 0.1, 3000, 7, Exec::serial);
    });
    const double tp = time_best(repeats, [&] {
      (void)reduction_estimate(table, 2, 0.1, 3000, 7, Exec::parallel);
    });
    report("reduction 3e3 trials", ts, tp);
  }
  return 0;
}
