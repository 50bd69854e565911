#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "growthcert/error.hpp"

namespace growthcert {

using Complex = std::complex<double>;

/// Induced operator norms supported on the state space C^d.
enum class NormKind { One, Two, Inf };

const char* to_string(NormKind kind) noexcept;

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : data_(dim) {}
    ComplexVector(std::initializer_list<Complex> values) : data_(values) {}
    explicit ComplexVector(std::vector<Complex> values) : data_(std::move(values)) {}

    std::size_t dim() const noexcept { return data_.size(); }
    Complex& operator[](std::size_t i) { return data_[i]; }
    const Complex& operator[](std::size_t i) const { return data_[i]; }
    std::span<Complex> values() noexcept { return data_; }
    std::span<const Complex> values() const noexcept { return data_; }

private:
    std::vector<Complex> data_;
};

/// Dense square complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix scalar(Complex value);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// Throws InvalidParameter on ragged/non-square input or non-finite entries.
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    static ComplexMatrix from_row_major(std::size_t dim, std::vector<Complex> values);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    std::span<const Complex> values() const noexcept { return data_; }
    std::span<Complex> values() noexcept { return data_; }

    ComplexMatrix adjoint() const;
    bool is_zero() const noexcept;
    bool is_finite() const noexcept;
    double max_abs() const noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x);

/// y = A x on raw spans of length dim (no allocation).
void multiply_into(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y);
/// y = A^* x on raw spans of length dim.
void adjoint_multiply_into(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y);

/// Max-abs entrywise difference; dims must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Standard p-norm for p in [1, inf]; p = infinity() selects the max norm.
double vec_norm(std::span<const Complex> v, double p);
inline double vec_norm(const ComplexVector& v, double p) { return vec_norm(v.values(), p); }
double vec_norm(std::span<const Complex> v, NormKind kind);
/// Norm of the dual space of (C^d, kind) under the Euclidean pairing.
NormKind dual_norm(NormKind kind) noexcept;

/// Induced operator norm. The 2-norm comes from the largest eigenvalue of A^*A
/// (Hermitian Jacobi), which is accurate from above as well as below.
double op_norm(const ComplexMatrix& a, NormKind kind);

struct PowerIterationResult {
    double value = 0.0;
    ComplexVector iterate;
    double residual = 0.0;
    int iterations = 0;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, PowerIterationResult last)
        : Error(ErrorKind::ConvergenceFailure, what), last_(std::move(last)) {}
    const PowerIterationResult& last() const noexcept { return last_; }

private:
    PowerIterationResult last_;
};

/// Largest singular value by power iteration on A^*A from a seeded start.
/// Stops when the relative change of the estimate drops below rel_tol;
/// throws ConvergenceError after max_iter sweeps.
PowerIterationResult power_iteration_norm(const ComplexMatrix& a, std::uint64_t seed,
                                          double rel_tol = 1e-12, int max_iter = 10000);

/// Eigenvalues by Hessenberg reduction + shifted QR. Limited to dim <= 64.
std::vector<Complex> eigenvalues(const ComplexMatrix& a);
/// Eigenvalues of a Hermitian matrix (cyclic Jacobi), ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

inline constexpr std::size_t kMaxEigenDim = 64;

/// Gelfand-type spectral radius data.
struct SpectralRadius {
    double estimate = 0.0;          ///< last Gelfand iterate
    double lower = 0.0;             ///< max |eigenvalue| (0 when dim > 64 or unavailable)
    std::vector<double> upper_bounds;  ///< r_ub(2^k) = ||A^{2^k}||^{2^-k}, k = 0..K
    bool eigen_available = false;

    double upper() const;  ///< tightest certified upper bound
};

SpectralRadius spectral_radius(const ComplexMatrix& a, NormKind kind = NormKind::Two);

/// A matrix stored as exp(log_scale) * unit, with the unit part normalised.
struct ScaledMatrix {
    ComplexMatrix unit;
    double log_scale = 0.0;  ///< -inf for the zero matrix

    static ScaledMatrix from(const ComplexMatrix& m);
    ComplexMatrix value() const;
    double log_norm(NormKind kind) const;
};

ScaledMatrix operator*(const ScaledMatrix& a, const ScaledMatrix& b);
/// A^e by repeated squaring with renormalisation; safe for huge exponents.
ScaledMatrix scaled_power(const ComplexMatrix& a, std::uint64_t exponent);

/// Exponential bound ||T^n|| <= M e^{omega n} (also used for families).
struct ExponentialBound {
    double omega = 0.0;
    double M = 1.0;
};

/// (zI - A)^{-1} by LU with partial pivoting.
ComplexMatrix resolvent_closed(Complex z, const ComplexMatrix& a);

struct ResolventSeries {
    ComplexMatrix partial_sum;
    double tail_bound = 0.0;
};

/// Neumann partial sum sum_{n<=K} A^n / z^{n+1} with a geometric tail bound taken
/// from the best stored bound with e^omega < |z|.
ResolventSeries resolvent_series(Complex z, const ComplexMatrix& a, std::size_t terms,
                                 std::span<const ExponentialBound> bounds);

struct DistanceCheck {
    double lhs = 0.0;
    bool verdict = false;
};

/// ||R(z,A)||_2 * dist(z, sigma(A)) >= 1.
DistanceCheck resolvent_distance_check(Complex z, const ComplexMatrix& a);

}  // namespace growthcert
