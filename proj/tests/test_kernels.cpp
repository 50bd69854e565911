#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "corpus.hpp"
#include "growthcert/convolution.hpp"
#include "growthcert/kernels.hpp"
#include "oracles.hpp"

using namespace growthcert;
namespace k = growthcert::kernels;

namespace {

std::vector<Complex> random_weights(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<Complex> w(n);
    for (auto& c : w) c = Complex(u(rng), u(rng));
    return w;
}

}  // namespace

TEST_CASE("propagator table matches direct products") {
    for (const auto& def : corpus::stable()) {
        CAPTURE(def.name);
        const EvolutionFamily fam(def.spec);
        const k::PropagatorTable table(fam, 12);
        for (std::size_t n = 0; n <= 12; ++n) {
            for (std::size_t j = 0; j <= n; ++j) {
                const auto ref = oracle::product(def.spec, n, j);
                const auto& got = table.at(n, j);
                double dev = 0.0, scale = 1.0;
                for (std::size_t r = 0; r < fam.dim(); ++r)
                    for (std::size_t c = 0; c < fam.dim(); ++c) {
                        dev = std::max(dev, std::abs(got(r, c) - ref[r][c]));
                        scale = std::max(scale, std::abs(ref[r][c]));
                    }
                CHECK(dev <= 1e-12 * scale);
            }
        }
    }
}

TEST_CASE("recurrence and unit-weight table kernels agree") {
    for (const auto& def : corpus::stable()) {
        CAPTURE(def.name);
        const EvolutionFamily fam(def.spec);
        const std::size_t last = 40;
        const auto f = random_unit(SpaceSpec::lp(2.0), fam.dim(), last, 11);
        TruncatedSequence rec(fam.dim(), last), tab(fam.dim(), last);
        k::convolve_recurrence(fam, f, rec);
        const k::PropagatorTable table(fam, last);
        const std::vector<Complex> ones(last + 1, Complex(1.0));
        k::serial::weighted_convolve(table, ones, f, tab);
        double scale = 1.0;
        for (const Complex c : rec.flat()) scale = std::max(scale, std::abs(c));
        CHECK(max_abs_diff(rec, tab) <= 1e-11 * scale);

        TruncatedSequence adj_rec(fam.dim(), last), adj_tab(fam.dim(), last);
        k::convolve_adjoint_recurrence(fam, f, adj_rec);
        k::serial::weighted_convolve_adjoint(table, ones, f, adj_tab);
        for (auto& c : adj_tab.at(0)) c = Complex{};  // the recurrence leaves y_0 at 0
        scale = 1.0;
        for (const Complex c : adj_rec.flat()) scale = std::max(scale, std::abs(c));
        CHECK(max_abs_diff(adj_rec, adj_tab) <= 1e-11 * scale);
    }
}

TEST_CASE("serial and OpenMP kernels agree to rounding") {
    CHECK(k::max_threads() >= 1);
    std::uint64_t seed = 3;
    for (const auto& def : corpus::stable()) {
        CAPTURE(def.name);
        const EvolutionFamily fam(def.spec);
        const std::size_t last = 48;
        const k::PropagatorTable table(fam, last);
        const auto w = random_weights(last + 1, seed++);
        const auto f = random_unit(SpaceSpec::lp(1.0), fam.dim(), last, seed++);
        TruncatedSequence a(fam.dim(), last), b(fam.dim(), last);
        k::serial::weighted_convolve(table, w, f, a);
        k::parallel::weighted_convolve(table, w, f, b);
        double scale = 1.0;
        for (const Complex c : a.flat()) scale = std::max(scale, std::abs(c));
        CHECK(max_abs_diff(a, b) <= 1e-12 * scale);

        k::serial::weighted_convolve_adjoint(table, w, f, a);
        k::parallel::weighted_convolve_adjoint(table, w, f, b);
        scale = 1.0;
        for (const Complex c : a.flat()) scale = std::max(scale, std::abs(c));
        CHECK(max_abs_diff(a, b) <= 1e-12 * scale);
    }
}

TEST_CASE("dense_matvec serial vs parallel vs oracle") {
    const std::size_t n = 37;
    ComplexMatrix m(n);
    const auto vals = random_weights(n * n, 5);
    std::copy(vals.begin(), vals.end(), m.values().begin());
    const auto x = random_weights(n, 6);
    std::vector<Complex> ys(n), yp(n);
    k::serial::dense_matvec(m, x, ys);
    k::parallel::dense_matvec(m, x, yp);
    const auto d = oracle::to_dense(m);
    for (std::size_t i = 0; i < n; ++i) {
        Complex ref = 0.0;
        for (std::size_t j = 0; j < n; ++j) ref += d[i][j] * x[j];
        CHECK(std::abs(ys[i] - ref) <= 1e-12);
        CHECK(std::abs(yp[i] - ref) <= 1e-12);
    }
}

TEST_CASE("weighted table kernel is the truncated resolvent kernel") {
    // weights z^{-(k+1)} against a direct double loop over U(n,j)
    const auto def = corpus::stable()[20];
    const EvolutionFamily fam(def.spec);
    const std::size_t last = 20;
    const Complex z = std::polar(1.3, 0.4);
    std::vector<Complex> w(last + 1);
    for (std::size_t i = 0; i <= last; ++i) w[i] = std::pow(z, -static_cast<double>(i + 1));
    const k::PropagatorTable table(fam, last);
    const auto f = random_unit(SpaceSpec::lp(2.0), fam.dim(), last, 8);
    TruncatedSequence out(fam.dim(), last);
    k::parallel::weighted_convolve(table, w, f, out);
    for (std::size_t n = 0; n <= last; ++n) {
        for (std::size_t r = 0; r < fam.dim(); ++r) {
            Complex ref = 0.0;
            for (std::size_t j = 0; j <= n; ++j) {
                const auto u = oracle::product(def.spec, n, j);
                for (std::size_t c = 0; c < fam.dim(); ++c) ref += w[n - j] * u[r][c] * f.at(j)[c];
            }
            CHECK(std::abs(out.at(n)[r] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}
