#include "growthcert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace growthcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorKind::DomainError, "matrix dimension mismatch " + std::to_string(a.dim()) +
                                                " vs " + std::to_string(b.dim()));
    }
}

}  // namespace

const char* to_string(NormKind kind) noexcept {
    switch (kind) {
        case NormKind::One: return "1";
        case NormKind::Two: return "2";
        case NormKind::Inf: return "inf";
    }
    return "?";
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::scalar(Complex value) {
    ComplexMatrix m(1);
    m(0, 0) = value;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t dim = rows.size();
    std::vector<Complex> values;
    values.reserve(dim * dim);
    for (const auto& row : rows) {
        if (row.size() != dim) throw Error(ErrorKind::InvalidParameter, "matrix must be square");
        values.insert(values.end(), row.begin(), row.end());
    }
    return from_row_major(dim, std::move(values));
}

ComplexMatrix ComplexMatrix::from_row_major(std::size_t dim, std::vector<Complex> values) {
    if (dim == 0) throw Error(ErrorKind::InvalidParameter, "matrix dimension must be >= 1");
    if (values.size() != dim * dim) {
        throw Error(ErrorKind::InvalidParameter, "expected " + std::to_string(dim * dim) +
                                                     " entries, got " + std::to_string(values.size()));
    }
    ComplexMatrix m;
    m.dim_ = dim;
    m.data_ = std::move(values);
    if (!m.is_finite()) throw Error(ErrorKind::InvalidParameter, "matrix entries must be finite");
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

bool ComplexMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Complex c) { return c == Complex{}; });
}

bool ComplexMatrix::is_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& c : data_) m = std::max(m, std::abs(c));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(*this, rhs);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& c : data_) c *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    const std::size_t d = a.dim();
    ComplexMatrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
    if (a.dim() != x.dim()) throw Error(ErrorKind::DomainError, "matrix/vector dimension mismatch");
    ComplexVector y(x.dim());
    multiply_into(a, x.values(), y.values());
    return y;
}

void multiply_into(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < d; ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
}

void adjoint_multiply_into(const ComplexMatrix& a, std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t d = a.dim();
    for (std::size_t j = 0; j < d; ++j) y[j] = Complex{};
    for (std::size_t i = 0; i < d; ++i) {
        const Complex xi = x[i];
        for (std::size_t j = 0; j < d; ++j) y[j] += std::conj(a(i, j)) * xi;
    }
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

double vec_norm(std::span<const Complex> v, double p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::InvalidParameter, "vector norm requires p >= 1");
    if (p == kInf) {
        double m = 0.0;
        for (const auto& c : v) m = std::max(m, std::abs(c));
        return m;
    }
    // Scale by the max entry so large/small p do not under/overflow.
    double scale = 0.0;
    for (const auto& c : v) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    if (p == 1.0) {
        double s = 0.0;
        for (const auto& c : v) s += std::abs(c);
        return s;
    }
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& c : v) s += std::norm(c / scale);
        return scale * std::sqrt(s);
    }
    for (const auto& c : v) s += std::pow(std::abs(c) / scale, p);
    return scale * std::pow(s, 1.0 / p);
}

double vec_norm(std::span<const Complex> v, NormKind kind) {
    switch (kind) {
        case NormKind::One: return vec_norm(v, 1.0);
        case NormKind::Two: {
            double s = 0.0;
            for (const auto& c : v) s += std::norm(c);
            // rescaled path only when the plain sum under/overflows
            if (std::isfinite(s) && (s > 1e-280 || s == 0.0)) return std::sqrt(s);
            return vec_norm(v, 2.0);
        }
        case NormKind::Inf: return vec_norm(v, kInf);
    }
    return 0.0;
}

NormKind dual_norm(NormKind kind) noexcept {
    switch (kind) {
        case NormKind::One: return NormKind::Inf;
        case NormKind::Two: return NormKind::Two;
        case NormKind::Inf: return NormKind::One;
    }
    return NormKind::Two;
}

double op_norm(const ComplexMatrix& a, NormKind kind) {
    const std::size_t d = a.dim();
    switch (kind) {
        case NormKind::One: {
            double best = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += std::abs(a(i, j));
                best = std::max(best, s);
            }
            return best;
        }
        case NormKind::Inf: {
            double best = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < d; ++j) s += std::abs(a(i, j));
                best = std::max(best, s);
            }
            return best;
        }
        case NormKind::Two: {
            if (d == 1) return std::abs(a(0, 0));
            const double scale = a.max_abs();
            if (scale == 0.0) return 0.0;
            ComplexMatrix b = a;
            b *= 1.0 / scale;
            const auto ev = hermitian_eigenvalues(b.adjoint() * b);
            return scale * std::sqrt(std::max(ev.back(), 0.0));
        }
    }
    return 0.0;
}

PowerIterationResult power_iteration_norm(const ComplexMatrix& a, std::uint64_t seed, double rel_tol,
                                          int max_iter) {
    const std::size_t d = a.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    PowerIterationResult res;
    res.iterate = ComplexVector(d);
    for (std::size_t i = 0; i < d; ++i) res.iterate[i] = Complex(normal(rng), normal(rng));
    double nx = vec_norm(res.iterate.values(), 2.0);
    for (std::size_t i = 0; i < d; ++i) res.iterate[i] /= nx;

    ComplexVector y(d), w(d);
    double previous = -1.0;
    for (int it = 1; it <= max_iter; ++it) {
        multiply_into(a, res.iterate.values(), y.values());
        res.value = vec_norm(y.values(), 2.0);
        adjoint_multiply_into(a, y.values(), w.values());
        const double nw = vec_norm(w.values(), 2.0);
        res.iterations = it;
        if (nw == 0.0 || res.value == 0.0) {
            res.residual = 0.0;
            return res;
        }
        // residual of the Rayleigh pair for A^*A
        const double theta = res.value * res.value;
        double r2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) r2 += std::norm(w[i] - theta * res.iterate[i]);
        res.residual = std::sqrt(r2);
        for (std::size_t i = 0; i < d; ++i) res.iterate[i] = w[i] / nw;
        if (previous >= 0.0 && std::abs(res.value - previous) <= rel_tol * res.value) return res;
        previous = res.value;
    }
    throw ConvergenceError("power iteration did not reach tolerance in " + std::to_string(max_iter) +
                               " iterations",
                           res);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h_in) {
    const std::size_t n = h_in.dim();
    ComplexMatrix h = h_in;
    // symmetrise against rounding in the caller's product
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = avg;
            h(j, i) = std::conj(avg);
        }
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0, diag = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            diag += std::norm(h(i, i));
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(h(i, j));
        }
        if (off <= 1e-32 * diag || off == 0.0) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = h(p, q);
                const double babs = std::abs(b);
                if (babs == 0.0) continue;
                const Complex e = b / babs;
                const double alpha = h(p, p).real(), beta = h(q, q).real();
                const double theta = (beta - alpha) / (2.0 * babs);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G = [[c, s], [-s conj(e), c conj(e)]]; H <- G^* H G
                const Complex ge = std::conj(e);
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex hp = h(i, p), hq = h(i, q);
                    h(i, p) = c * hp - s * ge * hq;
                    h(i, q) = s * hp + c * ge * hq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const Complex hp = h(p, j), hq = h(q, j);
                    h(p, j) = c * hp - s * e * hq;
                    h(q, j) = s * hp + c * e * hq;
                }
                h(p, q) = 0.0;
                h(q, p) = 0.0;
                h(p, p) = h(p, p).real();
                h(q, q) = h(q, q).real();
            }
        }
    }
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = h(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::vector<Complex> eigenvalues(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    if (n > kMaxEigenDim) {
        throw Error(ErrorKind::NumericFailure, "eigen-solver limited to dim <= 64, got " + std::to_string(n));
    }
    ComplexMatrix h = a;

    // Householder reduction to upper Hessenberg form.
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double alpha_norm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) alpha_norm += std::norm(h(i, k));
        alpha_norm = std::sqrt(alpha_norm);
        if (alpha_norm == 0.0) continue;
        const Complex x0 = h(k + 1, k);
        const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
        std::vector<Complex> v(n, Complex{});
        for (std::size_t i = k + 1; i < n; ++i) v[i] = h(i, k);
        v[k + 1] += phase * alpha_norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;
        // H <- (I - 2 v v^*/|v|^2) H (I - 2 v v^*/|v|^2)
        for (std::size_t j = 0; j < n; ++j) {
            Complex s{};
            for (std::size_t i = k + 1; i < n; ++i) s += std::conj(v[i]) * h(i, j);
            s *= 2.0 / vnorm2;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * s;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex s{};
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= 2.0 / vnorm2;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<Complex> eig;
    eig.reserve(n);
    std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
    int iter = 0;
    const int max_iter = 60 * static_cast<int>(n) + 60;
    int total = 0;
    while (hi >= 0) {
        if (hi == 0) {
            eig.push_back(h(0, 0));
            break;
        }
        std::ptrdiff_t l = hi;
        while (l > 0) {
            const double sub = std::abs(h(l, l - 1));
            const double ref = std::abs(h(l, l)) + std::abs(h(l - 1, l - 1));
            if (sub <= eps * ref || sub < std::numeric_limits<double>::min()) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == hi) {
            eig.push_back(h(hi, hi));
            --hi;
            iter = 0;
            continue;
        }
        if (++total > max_iter) throw Error(ErrorKind::NumericFailure, "QR iteration did not converge");
        ++iter;

        Complex shift;
        if (iter % 11 == 10) {
            // exceptional shift to break cycles
            shift = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.25 * std::abs(h(hi, hi - 1)));
        } else {
            const Complex a11 = h(hi - 1, hi - 1), a12 = h(hi - 1, hi), a21 = h(hi, hi - 1), a22 = h(hi, hi);
            const Complex half = 0.5 * (a11 - a22);
            const Complex disc = std::sqrt(half * half + a12 * a21);
            const Complex mu1 = 0.5 * (a11 + a22) + disc;
            const Complex mu2 = 0.5 * (a11 + a22) - disc;
            shift = std::abs(mu1 - a22) < std::abs(mu2 - a22) ? mu1 : mu2;
        }

        const auto lo = static_cast<std::size_t>(l);
        const auto up = static_cast<std::size_t>(hi);
        for (std::size_t k = lo; k <= up; ++k) h(k, k) -= shift;
        std::vector<std::pair<Complex, Complex>> rot(up - lo);
        for (std::size_t k = lo; k < up; ++k) {
            const Complex x = h(k, k), y = h(k + 1, k);
            const double r = std::hypot(std::abs(x), std::abs(y));
            Complex g = 1.0, s = 0.0;
            if (r != 0.0) {
                g = std::conj(x) / r;
                s = std::conj(y) / r;
            }
            rot[k - lo] = {g, s};
            for (std::size_t j = k; j <= up; ++j) {
                const Complex u = h(k, j), v = h(k + 1, j);
                h(k, j) = g * u + s * v;
                h(k + 1, j) = -std::conj(s) * u + std::conj(g) * v;
            }
        }
        for (std::size_t k = lo; k < up; ++k) {
            const auto [g, s] = rot[k - lo];
            const std::size_t last = std::min(k + 2, up);
            for (std::size_t i = lo; i <= last; ++i) {
                const Complex u = h(i, k), v = h(i, k + 1);
                h(i, k) = u * std::conj(g) + v * std::conj(s);
                h(i, k + 1) = -u * s + v * g;
            }
        }
        for (std::size_t k = lo; k <= up; ++k) h(k, k) += shift;
    }
    return eig;
}

double SpectralRadius::upper() const {
    if (upper_bounds.empty()) return kInf;
    return *std::min_element(upper_bounds.begin(), upper_bounds.end());
}

SpectralRadius spectral_radius(const ComplexMatrix& a, NormKind kind) {
    SpectralRadius out;
    constexpr int kMaxSquarings = 40;
    ComplexMatrix b = a;
    double log_scale = 0.0;
    double previous = -1.0;
    for (int k = 0; k <= kMaxSquarings; ++k) {
        const double nb = op_norm(b, kind);
        if (!std::isfinite(nb)) throw Error(ErrorKind::NumericFailure, "overflow in Gelfand iteration");
        if (nb == 0.0) {
            out.upper_bounds.push_back(0.0);
            out.estimate = 0.0;
            break;
        }
        const double log_total = log_scale + std::log(nb);
        const double r = std::exp(std::ldexp(log_total, -k));
        out.upper_bounds.push_back(r);
        out.estimate = r;
        if (previous >= 0.0 && std::abs(r - previous) < 1e-10) break;
        previous = r;
        b *= 1.0 / nb;
        b = b * b;
        log_scale = 2.0 * log_total;
    }
    if (a.dim() <= kMaxEigenDim) {
        double m = 0.0;
        for (const auto& lam : eigenvalues(a)) m = std::max(m, std::abs(lam));
        out.lower = std::min(m, out.upper());
        out.eigen_available = true;
    }
    return out;
}

ScaledMatrix ScaledMatrix::from(const ComplexMatrix& m) {
    ScaledMatrix s{m, 0.0};
    const double mx = m.max_abs();
    if (mx == 0.0) {
        s.log_scale = -kInf;
        return s;
    }
    s.unit *= 1.0 / mx;
    s.log_scale = std::log(mx);
    return s;
}

ComplexMatrix ScaledMatrix::value() const {
    if (log_scale == -kInf) return ComplexMatrix::zero(unit.dim());
    return std::exp(log_scale) * unit;
}

double ScaledMatrix::log_norm(NormKind kind) const {
    if (log_scale == -kInf) return -kInf;
    const double n = op_norm(unit, kind);
    return n == 0.0 ? -kInf : log_scale + std::log(n);
}

ScaledMatrix operator*(const ScaledMatrix& a, const ScaledMatrix& b) {
    if (a.log_scale == -kInf || b.log_scale == -kInf) return {ComplexMatrix::zero(a.unit.dim()), -kInf};
    ScaledMatrix p = ScaledMatrix::from(a.unit * b.unit);
    if (p.log_scale != -kInf) p.log_scale += a.log_scale + b.log_scale;
    return p;
}

ScaledMatrix scaled_power(const ComplexMatrix& a, std::uint64_t exponent) {
    ScaledMatrix result{ComplexMatrix::identity(a.dim()), 0.0};
    ScaledMatrix base = ScaledMatrix::from(a);
    while (exponent > 0) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent > 0) base = base * base;
    }
    return result;
}

ComplexMatrix resolvent_closed(Complex z, const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix lu = z * ComplexMatrix::identity(n) - a;
    const double norm_m = op_norm(lu, NormKind::One);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
        if (std::abs(lu(piv, k)) == 0.0 || std::abs(lu(piv, k)) <= 1e-300) {
            throw Error(ErrorKind::ResolventSingular, "zI - A is singular (z in the spectrum)");
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            lu(i, k) /= lu(k, k);
            const Complex f = lu(i, k);
            for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
        }
    }
    ComplexMatrix inv(n);
    std::vector<Complex> col(n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t i = 0; i < n; ++i) col[i] = perm[i] == c ? Complex(1.0) : Complex{};
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) col[i] -= lu(i, j) * col[j];
        for (std::size_t ii = n; ii-- > 0;) {
            for (std::size_t j = ii + 1; j < n; ++j) col[ii] -= lu(ii, j) * col[j];
            col[ii] /= lu(ii, ii);
        }
        for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
    }
    const double cond = norm_m * op_norm(inv, NormKind::One);
    if (!std::isfinite(cond) || cond > 1e14) {
        throw Error(ErrorKind::ResolventSingular, "zI - A is ill-conditioned (cond_1 ~ " + std::to_string(cond) + ")");
    }
    return inv;
}

ResolventSeries resolvent_series(Complex z, const ComplexMatrix& a, std::size_t terms,
                                 std::span<const ExponentialBound> bounds) {
    const std::size_t n = a.dim();
    const double rz = std::abs(z);
    ResolventSeries out{ComplexMatrix::zero(n), 0.0};
    ComplexMatrix power = ComplexMatrix::identity(n);
    Complex zpow = 1.0 / z;
    for (std::size_t k = 0; k <= terms; ++k) {
        out.partial_sum += zpow * power;
        power = power * a;
        zpow /= z;
    }
    // `power` now holds A^{K+1}; a vanishing power kills the tail exactly.
    if (power.is_zero()) return out;

    double best = kInf;
    for (const auto& b : bounds) {
        const double q = std::exp(b.omega) / rz;
        if (!(q < 1.0)) continue;
        const double tail = b.M / rz * std::pow(q, static_cast<double>(terms + 1)) / (1.0 - q);
        best = std::min(best, tail);
    }
    if (best == kInf) {
        throw Error(ErrorKind::InsufficientBound, "no stored exponential bound with e^omega < |z|");
    }
    out.tail_bound = best;
    return out;
}

DistanceCheck resolvent_distance_check(Complex z, const ComplexMatrix& a) {
    const auto r = resolvent_closed(z, a);
    double dist = kInf;
    for (const auto& lam : eigenvalues(a)) dist = std::min(dist, std::abs(z - lam));
    DistanceCheck out;
    out.lhs = op_norm(r, NormKind::Two) * dist;
    out.verdict = out.lhs >= 1.0 - 1e-9;
    return out;
}

}  // namespace growthcert
