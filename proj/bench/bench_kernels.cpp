// Serial vs OpenMP timings for the table kernels and the dense oracle product.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "growthcert/convolution.hpp"
#include "growthcert/kernels.hpp"

using namespace growthcert;
namespace k = growthcert::kernels;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

ComplexMatrix test_matrix(std::size_t d) {
    ComplexMatrix a(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) a(r, c) = Complex(r == c ? 0.5 : 0.1 / (1.0 + r + c), 0.05 * (r > c));
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 5;
    std::printf("threads: %d\n", k::max_threads());
    std::printf("%-22s %6s %4s %12s %12s %8s\n", "kernel", "N", "d", "serial [s]", "openmp [s]", "speedup");

    for (const std::size_t d : {1u, 3u}) {
        const EvolutionFamily fam(GeneratorSpec::constant(test_matrix(d)));
        for (const std::size_t n : {256u, 1024u}) {
            const k::PropagatorTable table(fam, n);
            std::vector<Complex> w(n + 1);
            for (std::size_t i = 0; i <= n; ++i) w[i] = std::polar(1.0, 0.1 * static_cast<double>(i));
            const auto f = random_unit(SpaceSpec::lp(2.0), d, n, 1);
            TruncatedSequence out;
            const double s = best_of(reps, [&] { k::serial::weighted_convolve(table, w, f, out); });
            const double p = best_of(reps, [&] { k::parallel::weighted_convolve(table, w, f, out); });
            std::printf("%-22s %6zu %4zu %12.6f %12.6f %8.2f\n", "weighted_convolve", n, d, s, p, s / p);
            const double sa = best_of(reps, [&] { k::serial::weighted_convolve_adjoint(table, w, f, out); });
            const double pa = best_of(reps, [&] { k::parallel::weighted_convolve_adjoint(table, w, f, out); });
            std::printf("%-22s %6zu %4zu %12.6f %12.6f %8.2f\n", "weighted_adjoint", n, d, sa, pa, sa / pa);
            const double rec = best_of(reps, [&] { k::convolve_recurrence(fam, f, out); });
            std::printf("%-22s %6zu %4zu %12.6f %12s %8s\n", "recurrence", n, d, rec, "-", "-");
        }
        const std::size_t n = 1024 / d;
        const ComplexMatrix dense = dense_oracle_matrix(fam, n);
        const auto x = flatten_tail(random_unit(SpaceSpec::lp(2.0), d, n, 2));
        std::vector<Complex> y(x.size());
        const double s = best_of(reps, [&] { k::serial::dense_matvec(dense, x, y); });
        const double p = best_of(reps, [&] { k::parallel::dense_matvec(dense, x, y); });
        std::printf("%-22s %6zu %4zu %12.6f %12.6f %8.2f\n", "dense_matvec", n, d, s, p, s / p);
    }
    return 0;
}
