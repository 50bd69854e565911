#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "growthcert/linalg.hpp"
#include "oracles.hpp"

using namespace growthcert;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix random_matrix(std::size_t d, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    ComplexMatrix a(d);
    for (auto& c : a.values()) c = scale * Complex(normal(rng), normal(rng));
    return a;
}

ComplexMatrix diag(std::initializer_list<Complex> v) { return ComplexMatrix::diagonal(std::vector<Complex>(v)); }

}  // namespace

TEST_CASE("matrix construction validates shape and finiteness") {
    CHECK_THROWS_AS(ComplexMatrix::from_rows({{1.0, 2.0}, {3.0}}), Error);
    CHECK_THROWS_AS(ComplexMatrix::from_row_major(2, {1.0, 2.0, 3.0}), Error);
    CHECK_THROWS_AS(ComplexMatrix::from_rows({{std::numeric_limits<double>::quiet_NaN()}}), Error);
    const auto a = ComplexMatrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
    CHECK(a(1, 0) == Complex(3.0));
    CHECK(a.adjoint()(0, 1) == Complex(3.0));
}

TEST_CASE("vec_norm") {
    const std::vector<Complex> v{3.0, 4.0};
    CHECK(vec_norm(v, 2.0) == doctest::Approx(5.0));
    const std::vector<Complex> w{1.0, -1.0};
    CHECK(vec_norm(w, kInf) == 1.0);
    CHECK(vec_norm(w, 1.0) == 2.0);
    const std::vector<Complex> zero(4);
    for (const double p : {1.0, 1.5, 2.0, 3.0, kInf}) CHECK(vec_norm(zero, p) == 0.0);
    CHECK_THROWS_AS(vec_norm(v, 0.5), Error);
    try {
        vec_norm(v, 0.5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidParameter);
    }
    const std::vector<Complex> tiny{1e-200, 1e-200};
    CHECK(vec_norm(tiny, NormKind::Two) == doctest::Approx(std::sqrt(2.0) * 1e-200));
}

TEST_CASE("op_norm examples") {
    for (const auto k : {NormKind::One, NormKind::Two, NormKind::Inf}) {
        CHECK(op_norm(ComplexMatrix::identity(3), k) == doctest::Approx(1.0));
    }
    CHECK(op_norm(diag({0.5}), NormKind::Two) == doctest::Approx(0.5));
    const auto j = ComplexMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
    CHECK(op_norm(j, NormKind::Two) == doctest::Approx(1.0).epsilon(1e-14));
    const auto a = ComplexMatrix::from_rows({{1.0, -2.0}, {Complex(0, 3), 4.0}});
    CHECK(op_norm(a, NormKind::One) == doctest::Approx(6.0));
    CHECK(op_norm(a, NormKind::Inf) == doctest::Approx(7.0));
}

TEST_CASE("op_norm 2 matches the closed-form 2x2 singular value and a brute power iteration") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto a2 = random_matrix(2, seed);
        CHECK(op_norm(a2, NormKind::Two) == doctest::Approx(oracle::two_norm_2x2(oracle::to_dense(a2))).epsilon(1e-12));
        const auto a5 = random_matrix(5, 100 + seed);
        CHECK(op_norm(a5, NormKind::Two) == doctest::Approx(oracle::two_norm(oracle::to_dense(a5))).epsilon(1e-10));
        CHECK(op_norm(a5, NormKind::One) == doctest::Approx(oracle::max_col_sum(oracle::to_dense(a5))).epsilon(1e-14));
        CHECK(op_norm(a5, NormKind::Inf) == doctest::Approx(oracle::max_row_sum(oracle::to_dense(a5))).epsilon(1e-14));
    }
}

TEST_CASE("power_iteration_norm agrees with op_norm and reports non-convergence") {
    const auto a = random_matrix(4, 3);
    const auto r = power_iteration_norm(a, 42);
    CHECK(r.value == doctest::Approx(op_norm(a, NormKind::Two)).epsilon(1e-6));
    // equal top singular values in different directions: the Rayleigh estimate cannot settle in one sweep
    const auto slow = ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.999999}});
    try {
        power_iteration_norm(slow, 1, 1e-16, 3);
        FAIL("expected convergence-failure");
    } catch (const ConvergenceError& e) {
        CHECK(e.kind() == ErrorKind::ConvergenceFailure);
        CHECK(e.last().iterations == 3);
    }
}

TEST_CASE("submultiplicativity and r(A) <= ||A||") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto a = random_matrix(4, seed);
        const auto b = random_matrix(4, seed + 1000);
        double r = 0.0;
        for (const Complex l : eigenvalues(a)) r = std::max(r, std::abs(l));
        for (const auto k : {NormKind::One, NormKind::Two, NormKind::Inf}) {
            CHECK(op_norm(a * b, k) <= op_norm(a, k) * op_norm(b, k) + 1e-12);
            CHECK(r <= op_norm(a, k) + 1e-12);
        }
    }
}

TEST_CASE("eigenvalues of triangular and structured matrices") {
    const auto t = ComplexMatrix::from_rows({{0.5, 1.0, 2.0}, {0.0, -0.25, 3.0}, {0.0, 0.0, Complex(0, 0.75)}});
    auto ev = eigenvalues(t);
    std::vector<double> mods;
    for (const Complex l : ev) mods.push_back(std::abs(l));
    std::sort(mods.begin(), mods.end());
    CHECK(mods[0] == doctest::Approx(0.25));
    CHECK(mods[1] == doctest::Approx(0.5));
    CHECK(mods[2] == doctest::Approx(0.75));

    // companion matrix of (x-1)(x-2)(x-3)
    const auto c = ComplexMatrix::from_rows({{6.0, -11.0, 6.0}, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}});
    ev = eigenvalues(c);
    std::vector<double> re;
    for (const Complex l : ev) re.push_back(l.real());
    std::sort(re.begin(), re.end());
    CHECK(re[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(re[1] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(re[2] == doctest::Approx(3.0).epsilon(1e-9));

    // rotation: eigenvalues +-i
    ev = eigenvalues(ComplexMatrix::from_rows({{0.0, -1.0}, {1.0, 0.0}}));
    for (const Complex l : ev) CHECK(std::abs(l) == doctest::Approx(1.0));
    CHECK_THROWS_AS(eigenvalues(ComplexMatrix::identity(65)), Error);
}

TEST_CASE("eigenvalues: trace and determinant of random matrices") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto a = random_matrix(6, seed);
        const auto ev = eigenvalues(a);
        Complex tr{}, sum{};
        for (std::size_t i = 0; i < 6; ++i) tr += a(i, i);
        for (const Complex l : ev) sum += l;
        CHECK(std::abs(tr - sum) < 1e-10);
        // each eigenvalue makes A - lambda I singular: smallest singular value ~ 0
        for (const Complex l : ev) {
            const auto shifted = a - l * ComplexMatrix::identity(6);
            const auto ev_h = hermitian_eigenvalues(shifted.adjoint() * shifted);
            CHECK(std::sqrt(std::max(0.0, ev_h.front())) < 1e-6);
        }
    }
}

TEST_CASE("spectral_radius") {
    const auto d = spectral_radius(diag({0.5}));
    CHECK(d.estimate == doctest::Approx(0.5));
    for (const double u : d.upper_bounds) CHECK(u == doctest::Approx(0.5));

    const auto j = spectral_radius(ComplexMatrix::from_rows({{0.5, 1.0}, {0.0, 0.5}}));
    CHECK(j.estimate == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(j.lower == doctest::Approx(0.5));
    for (const double u : j.upper_bounds) CHECK(j.estimate <= u + 1e-9);

    const auto z = spectral_radius(ComplexMatrix::zero(3));
    CHECK(z.estimate == 0.0);
    CHECK(z.upper() == 0.0);

    // no overflow close to the boundary with a large transient
    const auto big = spectral_radius(ComplexMatrix::from_rows({{0.999, 1e6}, {0.0, 0.999}}));
    CHECK(std::isfinite(big.upper()));
    CHECK(big.estimate == doctest::Approx(0.999).epsilon(1e-6));
}

TEST_CASE("spectral_radius upper bounds dominate the eigenvalue radius on random matrices") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto a = random_matrix(4, seed, 0.3);
        const auto r = spectral_radius(a);
        for (const double u : r.upper_bounds) CHECK(r.lower <= u + 1e-9);
        CHECK(r.estimate == doctest::Approx(r.lower).epsilon(1e-6));
    }
}

TEST_CASE("scaled_power stays finite for huge exponents") {
    const auto a = ComplexMatrix::from_rows({{0.9, 1.0}, {0.0, 0.9}});
    const auto p = scaled_power(a, std::uint64_t{1} << 40);
    CHECK(std::isfinite(p.log_scale));
    const auto exact = scaled_power(a, 7).value();
    auto direct = ComplexMatrix::identity(2);
    for (int i = 0; i < 7; ++i) direct = direct * a;
    CHECK(max_abs_diff(exact, direct) < 1e-12);
    CHECK(scaled_power(ComplexMatrix::zero(2), 5).log_scale == -kInf);
}

TEST_CASE("resolvent_closed") {
    const auto r = resolvent_closed(2.0, diag({0.5}));
    CHECK(r(0, 0).real() == doctest::Approx(1.0 / 1.5));
    CHECK(resolvent_closed(1.0, diag({0.5}))(0, 0).real() == doctest::Approx(2.0));
    try {
        resolvent_closed(0.5, diag({0.5}));
        FAIL("expected resolvent-singular");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ResolventSingular);
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto a = random_matrix(4, seed);
        const Complex z(3.0, 1.0);
        const auto inv = resolvent_closed(z, a);
        const auto check = (z * ComplexMatrix::identity(4) - a) * inv;
        CHECK(max_abs_diff(check, ComplexMatrix::identity(4)) < 1e-12);
    }
}

TEST_CASE("resolvent_series stays within its tail bound") {
    const ExponentialBound half[] = {{std::log(0.5), 1.0}};
    auto s = resolvent_series(2.0, diag({0.5}), 10, half);
    CHECK(s.tail_bound == doctest::Approx(0.5 * std::pow(0.25, 11) / 0.75));
    CHECK(std::abs(s.partial_sum(0, 0) - 1.0 / 1.5) <= s.tail_bound);

    s = resolvent_series(2.0, ComplexMatrix::zero(1), 0, half);
    CHECK(s.partial_sum(0, 0) == Complex(0.5));
    CHECK(s.tail_bound == 0.0);

    s = resolvent_series(10.0, diag({0.5}), 0, half);
    CHECK(s.partial_sum(0, 0).real() == doctest::Approx(0.1));
    CHECK(std::abs(s.partial_sum(0, 0) - 1.0 / 9.5) <= s.tail_bound);
    CHECK(s.tail_bound == doctest::Approx(1.0 / 190.0));

    const ExponentialBound none[] = {{std::log(3.0), 1.0}};
    try {
        resolvent_series(2.0, diag({0.5}), 5, none);
        FAIL("expected insufficient-bound");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InsufficientBound);
    }

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto a = random_matrix(3, seed, 0.2);
        const auto r = spectral_radius(a);
        // ||A^n|| <= ||A||^n gives omega = ln ||A||, M = 1
        const ExponentialBound b[] = {{std::log(op_norm(a, NormKind::Two)), 1.0}};
        const Complex z = std::polar(1.5 * std::exp(b[0].omega) + 0.1, 0.3 * static_cast<double>(seed));
        for (const std::size_t k : {0u, 3u, 12u}) {
            const auto series = resolvent_series(z, a, k, b);
            CHECK(op_norm(series.partial_sum - resolvent_closed(z, a), NormKind::Two) <= series.tail_bound + 1e-12);
        }
        CHECK(r.upper() < std::abs(z));
    }
}

TEST_CASE("resolvent_distance_check") {
    auto r = resolvent_distance_check(1.0, diag({0.5}));
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.verdict);
    r = resolvent_distance_check(2.0, diag({0.5}));
    CHECK(r.lhs == doctest::Approx(1.0));
    r = resolvent_distance_check(1.0, ComplexMatrix::from_rows({{0.5, 1.0}, {0.0, 0.5}}));
    CHECK(r.lhs > 1.0);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto a = random_matrix(4, seed);
        const Complex z = std::polar(5.0, static_cast<double>(seed));
        CHECK(resolvent_distance_check(z, a).verdict);
    }
}
