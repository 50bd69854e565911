#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "growthcert/linalg.hpp"
#include "growthcert/sequence.hpp"

namespace growthcert {

/// Finite encoding of an infinite step sequence {A_n}: an explicit prefix
/// A_0..A_{L-1} followed by a constant or periodic tail.
struct GeneratorSpec {
    enum class Tail { Constant, Periodic };

    std::size_t dim = 1;
    std::vector<ComplexMatrix> prefix;
    Tail tail_kind = Tail::Constant;
    std::vector<ComplexMatrix> tail;  ///< one matrix for Constant, q >= 1 for Periodic

    static GeneratorSpec constant(ComplexMatrix step, std::vector<ComplexMatrix> prefix = {});
    static GeneratorSpec periodic(std::vector<ComplexMatrix> period, std::vector<ComplexMatrix> prefix = {});
    static GeneratorSpec scalar(Complex gamma) { return constant(ComplexMatrix::scalar(gamma)); }

    /// Throws InvalidParameter when matrices disagree with dim or the tail is empty.
    void validate() const;

    std::size_t prefix_length() const noexcept { return prefix.size(); }
    std::size_t period() const noexcept { return tail.size(); }
    /// A_n for any n >= 0.
    const ComplexMatrix& step(std::size_t n) const;
    /// No prefix and a constant tail: U(n,m) = T^{n-m}.
    bool is_autonomous() const noexcept { return prefix.empty() && tail.size() == 1; }
    /// Every generator multiplied by s.
    GeneratorSpec scaled(Complex s) const;
};

/// U(n,m) = A_{n-1} ... A_m for n >= m, U(m,m) = I.
///
/// Immutable after construction; the tail-window cache behind propagator() is
/// shared between copies and guarded by a mutex.
class EvolutionFamily {
public:
    explicit EvolutionFamily(GeneratorSpec spec, NormKind norm = NormKind::Two);

    const GeneratorSpec& spec() const noexcept { return spec_; }
    std::size_t dim() const noexcept { return spec_.dim; }
    NormKind norm() const noexcept { return norm_; }
    std::size_t prefix_length() const noexcept { return spec_.prefix_length(); }
    std::size_t period() const noexcept { return spec_.period(); }
    const ComplexMatrix& step(std::size_t n) const { return spec_.step(n); }

    /// Throws DomainError when n < m.
    ComplexMatrix propagator(std::size_t n, std::size_t m) const;
    /// ln ||U(m + len, m)||, exact for arbitrarily long windows (-inf for zero).
    double log_window_norm(std::size_t m, std::uint64_t len) const;
    /// Product of one tail period starting at tail phase `phase` (phase 0 = index L).
    const ComplexMatrix& monodromy(std::size_t phase = 0) const { return monodromy_.at(phase); }
    const SpectralRadius& monodromy_spectrum() const noexcept { return monodromy_spectrum_; }

    EvolutionFamily scaled(Complex s) const { return EvolutionFamily(spec_.scaled(s), norm_); }

private:
    struct TailCache;

    ComplexMatrix tail_window(std::size_t phase, std::uint64_t len) const;
    ScaledMatrix tail_window_scaled(std::size_t phase, std::uint64_t len) const;

    GeneratorSpec spec_;
    NormKind norm_;
    // prefix_products_[m][k] = U(m + k, m) for 0 <= m <= m + k <= L
    std::vector<std::vector<ComplexMatrix>> prefix_products_;
    std::vector<ComplexMatrix> monodromy_;
    SpectralRadius monodromy_spectrum_;
    std::shared_ptr<TailCache> cache_;
};

/// (T(j) f)(k) = U(k, k - j) f_{k - j} for k >= j, else 0.
TruncatedSequence apply_semigroup(const EvolutionFamily& fam, std::size_t j, const TruncatedSequence& f);

/// x_{n+1} = A_n x_n + f_{n+1}, x_0 = 0. Same kernel as apply_convolution.
TruncatedSequence solve_cauchy(const EvolutionFamily& fam, const TruncatedSequence& f);

enum class BoundStatus { Bounded, Unbounded, Inconclusive };

struct BoundResult {
    BoundStatus status = BoundStatus::Inconclusive;
    ExponentialBound bound;     ///< valid when status == Bounded
    std::uint64_t period_power = 0;  ///< tail length J after which scaled windows stop growing
    double rate_lower = 0.0;    ///< certified bracket on e^{omega_0}
    double rate_upper = 0.0;
};

const char* to_string(BoundStatus status) noexcept;

/// M_omega = sup_{n >= m} e^{-omega (n - m)} ||U(n,m)|| computed exactly through the
/// prefix/tail structure. `max_tail_power` caps the search for a contracting tail power.
BoundResult exponential_bound(const EvolutionFamily& fam, double omega, std::uint64_t max_tail_power = 1u << 16);

struct GrowthBound {
    double value = 0.0;  ///< omega_0, possibly -inf
    double lower = 0.0;
    double upper = 0.0;
    std::string justification;
};

/// omega_0 = (1/q) ln r(P) for the tail monodromy P (q = 1 for a constant tail).
GrowthBound growth_bound_oracle(const EvolutionFamily& fam);

/// ||T(j)|| = sup_k ||U(k, k - j)||, evaluated in log form (ln of the norm).
double semigroup_log_power_norm(const EvolutionFamily& fam, std::uint64_t j);
double semigroup_power_norm(const EvolutionFamily& fam, std::uint64_t j);

struct SemigroupSpectralBracket {
    double lower = 0.0;
    double upper = 0.0;
    /// (j, ||T(j)||^{1/j}) for j = 1, 2, 4, ...
    std::vector<std::pair<std::uint64_t, double>> trace;
};

/// Bracket on r(T(1)): upper from Gelfand power norms ||T(j)||^{1/j}, lower from the
/// tail monodromy eigenvalues (r(T(1)) >= r(P)^{1/q}).
SemigroupSpectralBracket semigroup_spectral_radius(const EvolutionFamily& fam);

}  // namespace growthcert
