// Compares the row-parallel sparse product against the serial reference on
// three-leg contractions, and times the quantified-identity sweep that uses
// the same kernel internally.  Thread count follows OMP_NUM_THREADS.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qorbit/identities.hpp"

using namespace qorbit;

namespace {

template <class F>
double best_ms(F&& f, int reps) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif
    std::printf("%-8s %-26s %10s %12s %12s %9s %7s\n", "series", "kernel", "rows",
                "serial ms", "parallel ms", "speedup", "match");

    const int reps = 3;
    for (const char* name : {"B2", "B3", "C3", "D4"}) {
        const SeriesSpec sp = build_series(name);
        const int n = sp.N;
        const LegMatrix r = build_R(sp);
        const LegMatrix r12 = r.embed({n, n, n}, {1, 2});
        const LegMatrix r23 = r.embed({n, n, n}, {2, 3});
        const LegMatrix left = r12 * r23;

        LegMatrix par, ser;
        const double tp = best_ms([&] { par = left * r12; }, reps);
        const double ts = best_ms([&] { ser = LegMatrix::multiply_serial(left, r12); }, reps);
        const bool ok = (par - ser).nnz() == 0;
        std::printf("%-8s %-26s %10d %12.2f %12.2f %8.2fx %7s\n", name,
                    "three-leg product", n * n * n, ts, tp, ts / tp, ok ? "yes" : "NO");

        const double tq = best_ms([&] { (void)check("2.15", sp); }, 1);
        std::printf("%-8s %-26s %10d %12s %12.2f %9s %7s\n", name,
                    "quantified sweep (2.15)", n * n, "-", tq, "-",
                    check("2.15", sp).pass ? "yes" : "NO");
    }
    return 0;
}
