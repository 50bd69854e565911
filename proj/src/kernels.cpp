#include "growthcert/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace growthcert::kernels {

namespace {

void require_shape(const TruncatedSequence& f, std::size_t dim, std::size_t last) {
    if (f.dim() != dim || f.last_index() != last) throw Error(ErrorKind::DomainError, "sequence shape mismatch");
}

void prepare_output(TruncatedSequence& out, std::size_t dim, std::size_t last) {
    if (out.dim() != dim || out.last_index() != last) out = TruncatedSequence(dim, last);
}

// Accumulate w * M x into y for a single d-block.
inline void block_axpy(const ComplexMatrix& m, Complex w, std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t d = m.dim();
    for (std::size_t r = 0; r < d; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < d; ++c) acc += m(r, c) * x[c];
        y[r] += w * acc;
    }
}

inline void block_adjoint_axpy(const ComplexMatrix& m, Complex w, std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t d = m.dim();
    for (std::size_t r = 0; r < d; ++r) {
        const Complex xr = w * x[r];
        for (std::size_t c = 0; c < d; ++c) y[c] += std::conj(m(r, c)) * xr;
    }
}

void weighted_row(const PropagatorTable& table, std::span<const Complex> weights, const TruncatedSequence& f,
                  TruncatedSequence& out, std::size_t n) {
    auto y = out.at(n);
    for (auto& c : y) c = Complex{};
    for (std::size_t j = 0; j <= n; ++j) block_axpy(table.at(n, j), weights[n - j], f.at(j), y);
}

void weighted_column(const PropagatorTable& table, std::span<const Complex> weights, const TruncatedSequence& g,
                     TruncatedSequence& out, std::size_t j) {
    auto y = out.at(j);
    for (auto& c : y) c = Complex{};
    for (std::size_t n = j; n <= table.last_index(); ++n)
        block_adjoint_axpy(table.at(n, j), std::conj(weights[n - j]), g.at(n), y);
}

void check_weights(const PropagatorTable& table, std::span<const Complex> weights) {
    if (weights.size() <= table.last_index()) throw Error(ErrorKind::DomainError, "weight vector too short");
}

}  // namespace

void convolve_recurrence(const EvolutionFamily& fam, const TruncatedSequence& f, TruncatedSequence& out) {
    const std::size_t d = fam.dim();
    if (f.dim() != d) throw Error(ErrorKind::DomainError, "sequence dimension does not match the family");
    f.validate();
    const std::size_t last = f.last_index();
    prepare_output(out, d, last);
    for (auto& c : out.at(0)) c = Complex{};
    for (std::size_t k = 1; k <= last; ++k) {
        multiply_into(fam.step(k - 1), out.at(k - 1), out.at(k));
        const auto fk = f.at(k);
        auto xk = out.at(k);
        for (std::size_t i = 0; i < d; ++i) xk[i] += fk[i];
    }
}

void convolve_adjoint_recurrence(const EvolutionFamily& fam, const TruncatedSequence& g, TruncatedSequence& out) {
    const std::size_t d = fam.dim();
    if (g.dim() != d) throw Error(ErrorKind::DomainError, "sequence dimension does not match the family");
    const std::size_t last = g.last_index();
    prepare_output(out, d, last);
    std::vector<Complex> tmp(d);
    auto yl = out.at(last);
    auto gl = g.at(last);
    for (std::size_t i = 0; i < d; ++i) yl[i] = gl[i];
    for (std::size_t j = last; j-- > 1;) {
        adjoint_multiply_into(fam.step(j), out.at(j + 1), tmp);
        const auto gj = g.at(j);
        auto yj = out.at(j);
        for (std::size_t i = 0; i < d; ++i) yj[i] = gj[i] + tmp[i];
    }
    for (auto& c : out.at(0)) c = Complex{};
}

PropagatorTable::PropagatorTable(const EvolutionFamily& fam, std::size_t last_index)
    : dim_(fam.dim()), last_(last_index) {
    blocks_.reserve((last_ + 1) * (last_ + 2) / 2);
    for (std::size_t n = 0; n <= last_; ++n) {
        // row n from row n-1: U(n,j) = A_{n-1} U(n-1,j)
        for (std::size_t j = 0; j < n; ++j) blocks_.push_back(fam.step(n - 1) * at(n - 1, j));
        blocks_.push_back(ComplexMatrix::identity(dim_));
    }
}

namespace serial {

void weighted_convolve(const PropagatorTable& table, std::span<const Complex> weights, const TruncatedSequence& f,
                       TruncatedSequence& out) {
    require_shape(f, table.dim(), table.last_index());
    check_weights(table, weights);
    prepare_output(out, table.dim(), table.last_index());
    for (std::size_t n = 0; n <= table.last_index(); ++n) weighted_row(table, weights, f, out, n);
}

void weighted_convolve_adjoint(const PropagatorTable& table, std::span<const Complex> weights,
                               const TruncatedSequence& g, TruncatedSequence& out) {
    require_shape(g, table.dim(), table.last_index());
    check_weights(table, weights);
    prepare_output(out, table.dim(), table.last_index());
    for (std::size_t j = 0; j <= table.last_index(); ++j) weighted_column(table, weights, g, out, j);
}

void dense_matvec(const ComplexMatrix& m, std::span<const Complex> x, std::span<Complex> y) {
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * x[j];
        y[i] = acc;
    }
}

}  // namespace serial

namespace parallel {

void weighted_convolve(const PropagatorTable& table, std::span<const Complex> weights, const TruncatedSequence& f,
                       TruncatedSequence& out) {
    require_shape(f, table.dim(), table.last_index());
    check_weights(table, weights);
    prepare_output(out, table.dim(), table.last_index());
    const auto rows = static_cast<std::ptrdiff_t>(table.last_index() + 1);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t n = 0; n < rows; ++n) weighted_row(table, weights, f, out, static_cast<std::size_t>(n));
}

void weighted_convolve_adjoint(const PropagatorTable& table, std::span<const Complex> weights,
                               const TruncatedSequence& g, TruncatedSequence& out) {
    require_shape(g, table.dim(), table.last_index());
    check_weights(table, weights);
    prepare_output(out, table.dim(), table.last_index());
    const auto cols = static_cast<std::ptrdiff_t>(table.last_index() + 1);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t j = 0; j < cols; ++j) weighted_column(table, weights, g, out, static_cast<std::size_t>(j));
}

void dense_matvec(const ComplexMatrix& m, std::span<const Complex> x, std::span<Complex> y) {
    const auto n = static_cast<std::ptrdiff_t>(m.dim());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::ptrdiff_t j = 0; j < n; ++j) acc += m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
}

}  // namespace parallel

int max_threads() noexcept {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace growthcert::kernels
