// Times the OpenMP kernels against the serial reference on random dense
// matrices and cross-checks their results. Speedups near 1.0 are
// expected on a single-core host; the point is the comparison harness.

#include "gha/matrix.hpp"
#include "gha/rng.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace gha;

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t rows, std::size_t cols, SplitMix& rng) {
    Matrix<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = f.from_long(rng.centered(20));
    return m;
}

double time_ms(const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

template <class F>
void bench_field(const F& f, const char* fname, const std::vector<std::size_t>& sizes,
                 int reps) {
    SplitMix rng(42);
    for (std::size_t n : sizes) {
        auto a = random_matrix(f, n, n, rng);
        auto b = random_matrix(f, n, n, rng);

        Matrix<F> mp(f, 0, 0), ms(f, 0, 0);
        double tp = 0, ts = 0;
        for (int r = 0; r < reps; ++r) {
            tp += time_ms([&] { mp = matmul(a, b); });
            ts += time_ms([&] { ms = ref::matmul(a, b); });
        }
        std::printf("matmul  %-10s %4zu x %-4zu  parallel %8.2f ms  serial %8.2f ms  "
                    "speedup %5.2f  agree %s\n",
                    fname, n, n, tp / reps, ts / reps, ts / tp, equal(mp, ms) ? "yes" : "NO");

        double rp = 0, rs = 0;
        std::size_t rkp = 0, rks = 0;
        for (int r = 0; r < reps; ++r) {
            rp += time_ms([&] { rkp = rref(a).pivots.size(); });
            rs += time_ms([&] { rks = ref::rref(a).pivots.size(); });
        }
        std::printf("rref    %-10s %4zu x %-4zu  parallel %8.2f ms  serial %8.2f ms  "
                    "speedup %5.2f  agree %s\n",
                    fname, n, n, rp / reps, rs / reps, rs / rp, rkp == rks ? "yes" : "NO");
    }
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled at build time\n");
#endif
    bench_field(PrimeField{101}, "prime(101)", {64, 128, 256}, 3);
    bench_field(Rationals{}, "rationals", {32, 64}, 3);
    return 0;
}
