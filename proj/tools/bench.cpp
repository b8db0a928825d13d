// Timing comparison of the two counting engines.
//
// The brute-force scan is the serial reference; the cell list is the
// production kernel and uses OpenMP. Counts are cross-checked whenever
// both engines run, so this doubles as a coarse smoke test.
//
// Usage: paircorr-bench [max_n] [dim] [s_max]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "paircorr/generators.hpp"
#include "paircorr/pair_correlation.hpp"

using namespace paircorr;

namespace {

double seconds(const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::int64_t max_n = argc > 1 ? std::atoll(argv[1]) : 1000000;
    const int dim = argc > 2 ? std::atoi(argv[2]) : 2;
    const double s_max = argc > 3 ? std::atof(argv[3]) : 1.0;

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("dim=%d s_max=%g threads=%d\n", dim, s_max, threads);
    std::printf("%10s %14s %14s %10s %8s\n", "N", "brute[s]", "cell_list[s]", "speedup", "check");

    const SGrid grid = SGrid::of({s_max / 2.0, s_max});
    constexpr std::int64_t kBruteCap = 40000;

    for (std::int64_t n = 2000; n <= max_n; n *= 5) {
        const PointSet pts = uniform_points(dim, n, 42);
        PairCorrResult brute, cell;
        double t_brute = -1.0;
        if (n <= kBruteCap) {
            t_brute = seconds([&] { brute = pair_correlation_brute_force(pts, grid); });
        }
        const double t_cell = seconds([&] { cell = pair_correlation_cell_list(pts, grid); });

        const char* check = "-";
        if (n <= kBruteCap) {
            check = brute.counts == cell.counts ? "equal" : "MISMATCH";
        }
        if (t_brute >= 0.0) {
            std::printf("%10lld %14.4f %14.4f %9.1fx %8s\n", static_cast<long long>(n), t_brute,
                        t_cell, t_brute / t_cell, check);
        } else {
            std::printf("%10lld %14s %14.4f %10s %8s\n", static_cast<long long>(n), "-", t_cell,
                        "-", check);
        }
        if (n <= kBruteCap && brute.counts != cell.counts) return 1;
    }
    return 0;
}
