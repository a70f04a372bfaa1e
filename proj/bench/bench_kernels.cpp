// Wall-clock comparison of the OpenMP kernels against their serial references.
//   smclab_bench [--repeat N] [--n DAYS]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smclab/convexity.hpp"
#include "smclab/data_io.hpp"
#include "smclab/region.hpp"
#include "smclab/simulate.hpp"
#include "smclab/windows.hpp"

using namespace smclab;

namespace {

double best_of(int repeat, const std::function<std::size_t()>& fn, std::size_t& items) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    items = fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, int repeat, const std::function<std::size_t()>& parallel,
            const std::function<std::size_t()>& serial) {
  std::size_t n_par = 0, n_ser = 0;
  const double tp = best_of(repeat, parallel, n_par);
  const double ts = best_of(repeat, serial, n_ser);
  std::printf("%-16s %10zu %12.4f %12.4f %8.2fx%s\n", name, n_par, ts * 1e3, tp * 1e3, ts / tp,
              n_par == n_ser ? "" : "  (output sizes differ)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel vs serial kernel timings"};
  int repeat = 5;
  std::size_t n = 5000;
  app.add_option("--repeat", repeat, "Runs per kernel; the best time is reported");
  app.add_option("--n", n, "Days in each synthetic series");
  CLI11_PARSE(app, argc, argv);

  const auto index = gen_index({IndexKind::IidStudentT, 0.0002, 0.015, 4.0, 1}, n);
  const auto letf = synth_letf(index, {3.0, 0.0095, 0.0005, 2}, "F");
  const auto pair = align(letf.letf, index, {"F", "", Side::Long, 3.0, 0.0095, index.ticker(), "", ""});
  std::vector<ReturnSeries> indexes;
  for (std::uint64_t s = 0; s < 8; ++s) indexes.push_back(gen_index({IndexKind::IidNormal, 0.0, 0.02, 0.0, s}, n));
  const std::vector<double> betas{-3, -2, -1, 1, 2, 3};
  const std::vector<Horizon> horizons{Horizon::days(21), Horizon::days(252), Horizon::days(10000),
                                      Horizon::infinite()};
  const auto xs = symmetric_grid(0.5, 20000);

  std::printf("threads: %d, series length: %zu, best of %d\n", omp_get_max_threads(), n, repeat);
  std::printf("%-16s %10s %12s %12s %9s\n", "kernel", "items", "serial ms", "parallel ms", "speedup");
  report(
      "windows p=252", repeat, [&] { return evaluate_windows(pair, 252).records.size(); },
      [&] { return evaluate_windows_reference(pair, 252, 3.0).records.size(); });
  report(
      "windows p=21", repeat, [&] { return evaluate_windows(pair, 21).records.size(); },
      [&] { return evaluate_windows_reference(pair, 21, 3.0).records.size(); });
  report(
      "counterexamples", repeat, [&] { return counterexample_search(indexes, {2.0, 3.0}, 21).scanned; },
      [&] { return counterexample_search_reference(indexes, {2.0, 3.0}, 21).scanned; });
  report(
      "region samples", repeat, [&] { return region_samples(3.0, 600).size(); },
      [&] { return region_samples_reference(3.0, 600).size(); });
  report(
      "curve family", repeat, [&] { return emit_curve_family(betas, horizons, xs).size(); },
      [&] { return emit_curve_family_reference(betas, horizons, xs).size(); });
  return 0;
}
