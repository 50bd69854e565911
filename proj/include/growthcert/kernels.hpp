#pragma once

// Compute kernels for the convolution operator. The recurrence kernels are
// inherently sequential in the time index; the table kernels are data-parallel
// over the output index and come in a serial reference version and an OpenMP
// version that must agree to rounding.

#include <span>
#include <vector>

#include "growthcert/evolution.hpp"
#include "growthcert/sequence.hpp"

namespace growthcert::kernels {

/// g_k = sum_{j<=k} U(k,j) f_j via x_k = A_{k-1} x_{k-1} + f_k. O(N d^2).
void convolve_recurrence(const EvolutionFamily& fam, const TruncatedSequence& f, TruncatedSequence& out);

/// y_j = sum_{k>=j} U(k,j)^* g_k via y_j = g_j + A_j^* y_{j+1}; y_0 is left 0.
void convolve_adjoint_recurrence(const EvolutionFamily& fam, const TruncatedSequence& g, TruncatedSequence& out);

/// U(n,j) for 0 <= j <= n <= N, packed row by row.
class PropagatorTable {
public:
    PropagatorTable(const EvolutionFamily& fam, std::size_t last_index);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t last_index() const noexcept { return last_; }
    const ComplexMatrix& at(std::size_t n, std::size_t j) const { return blocks_[n * (n + 1) / 2 + j]; }

private:
    std::size_t dim_;
    std::size_t last_;
    std::vector<ComplexMatrix> blocks_;
};

namespace serial {

/// out_n = sum_{j<=n} w[n-j] U(n,j) f_j, with w.size() > N.
void weighted_convolve(const PropagatorTable& table, std::span<const Complex> weights,
                       const TruncatedSequence& f, TruncatedSequence& out);
/// out_j = sum_{n>=j} conj(w[n-j]) U(n,j)^* g_n.
void weighted_convolve_adjoint(const PropagatorTable& table, std::span<const Complex> weights,
                               const TruncatedSequence& g, TruncatedSequence& out);
/// y = M x for a dense square matrix.
void dense_matvec(const ComplexMatrix& m, std::span<const Complex> x, std::span<Complex> y);

}  // namespace serial

namespace parallel {

void weighted_convolve(const PropagatorTable& table, std::span<const Complex> weights,
                       const TruncatedSequence& f, TruncatedSequence& out);
void weighted_convolve_adjoint(const PropagatorTable& table, std::span<const Complex> weights,
                               const TruncatedSequence& g, TruncatedSequence& out);
void dense_matvec(const ComplexMatrix& m, std::span<const Complex> x, std::span<Complex> y);

}  // namespace parallel

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace growthcert::kernels
