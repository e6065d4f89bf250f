// Timing comparison between the production kernels (OpenMP parallel loops,
// sweep-line/separable algorithms) and the serial reference implementations
// kept for testing.

#include <chrono>
#include <cstdio>
#include <functional>

#include "dyadlab/kernels.hpp"
#include "dyadlab/rng.hpp"
#include "dyadlab/square.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace dyadlab;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto start = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() / reps;
}

void report(const char* name, double ref_ms, double fast_ms) {
    std::printf("%-34s %10.3f ms %10.3f ms %8.2fx\n", name, ref_ms, fast_ms,
                ref_ms / fast_ms);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-34s %13s %13s %9s\n", "kernel", "reference", "production", "speedup");

    Rng rng(1);

    {
        const DyadicRectangle w{{0, 0}, {0, 0}};
        Signal2D f(w, 6, 6);
        for (double& x : f.v) x = rng.normal();
        const double ref_ms = time_ms([&] { (void)ref::haar_forward(f); }, 3);
        const double fast_ms = time_ms([&] { (void)haar_forward(f); }, 50);
        report("2d haar forward (2^6 x 2^6)", ref_ms, fast_ms);
    }
    {
        const DyadicInterval w{0, 0};
        Signal1D f(w, 12);
        for (double& x : f.v) x = rng.normal();
        const double ref_ms = time_ms([&] { (void)ref::square_fn(f); }, 10);
        const double fast_ms = time_ms([&] { (void)square_fn(f); }, 10);
        report("square function (2^12)", ref_ms, fast_ms);
    }
    {
        const DyadicRectangle w{{-2, 0}, {-2, 0}};
        Signal2D f(w, 5, 5);
        for (double& x : f.v) x = rng.normal();
        const ProductKernel hilbert = kernel_from_registry("tensor_hilbert");
        const double ref_ms =
            time_ms([&] { (void)ref::apply_kernel_operator(hilbert, f, 0.0, 0.0); }, 3);
        const double fast_ms =
            time_ms([&] { (void)apply_kernel_operator(hilbert, f, 0.0, 0.0); }, 10);
        report("pv kernel apply (2^5 x 2^5)", ref_ms, fast_ms);
    }
    {
        const DyadicInterval w{0, 0};
        const ClipRange ambient = ClipRange::symmetric(5);
        const ShiftSpec spec = leftmost_selector(2, 8, w, 10, ambient);
        const auto op = [&](const Signal1D& f) {
            return modified_square_fn(f, spec, std::numeric_limits<double>::infinity())
                .lp_norm(4.0);
        };
        const double serial_ms = time_ms(
            [&] {
#ifdef _OPENMP
                omp_set_num_threads(1);
#endif
                (void)empirical_opnorm(op, 4.0, 16, 7, w, 10);
            },
            3);
        const double par_ms = time_ms(
            [&] {
#ifdef _OPENMP
                omp_set_num_threads(omp_get_num_procs());
#endif
                (void)empirical_opnorm(op, 4.0, 16, 7, w, 10);
            },
            3);
        report("opnorm trials (16 @ 2^10)", serial_ms, par_ms);
    }
    return 0;
}
