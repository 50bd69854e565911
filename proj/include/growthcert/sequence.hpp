#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "growthcert/linalg.hpp"

namespace growthcert {

/// Which sequence space: l^p_0 (1 <= p < inf), l^inf_0, or c_0^0. All spaces hold
/// sequences with first entry 0. On truncations LInfty and C0 coincide.
struct SpaceSpec {
    enum class Kind { Lp, LInfty, C0 };

    Kind kind = Kind::Lp;
    double p = 2.0;  ///< only meaningful for Lp
    NormKind state_norm = NormKind::Two;

    static SpaceSpec lp(double p, NormKind state = NormKind::Two);
    static SpaceSpec linf(NormKind state = NormKind::Two) { return {Kind::LInfty, 0.0, state}; }
    static SpaceSpec c0(NormKind state = NormKind::Two) { return {Kind::C0, 0.0, state}; }

    bool is_sup() const noexcept { return kind != Kind::Lp; }
    /// Sequence exponent: p for Lp, infinity for the sup spaces.
    double exponent() const noexcept;
    /// "lp:2", "linf", "c0".
    std::string label() const;
    /// Parses the CLI form produced by label().
    static SpaceSpec parse(const std::string& text);
};

/// f_0, ..., f_N with each f_k in C^d, stored contiguously.
class TruncatedSequence {
public:
    TruncatedSequence() = default;
    /// Zero sequence with indices 0..last_index.
    TruncatedSequence(std::size_t dim, std::size_t last_index);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t last_index() const noexcept { return length_ - 1; }
    std::size_t length() const noexcept { return length_; }

    std::span<Complex> at(std::size_t k) { return {data_.data() + k * dim_, dim_}; }
    std::span<const Complex> at(std::size_t k) const { return {data_.data() + k * dim_, dim_}; }
    std::span<Complex> flat() noexcept { return data_; }
    std::span<const Complex> flat() const noexcept { return data_; }

    bool first_is_zero() const noexcept;
    /// Throws InvalidSequence when f_0 != 0 or an entry is not finite.
    void validate() const;
    /// Copy extended with trailing zeros up to new_last_index (>= last_index()).
    TruncatedSequence padded(std::size_t new_last_index) const;

    TruncatedSequence& operator+=(const TruncatedSequence& rhs);
    TruncatedSequence& operator*=(Complex s);

    friend bool operator==(const TruncatedSequence&, const TruncatedSequence&) = default;

private:
    std::size_t dim_ = 0;
    std::size_t length_ = 0;
    std::vector<Complex> data_;
};

double seq_norm(const TruncatedSequence& f, const SpaceSpec& space);
/// Norm in the dual space (l^q with state dual norm), used for Hoelder checks.
double dual_seq_norm(const TruncatedSequence& h, const SpaceSpec& space);
/// sum_k <h_k, f_k>, conjugate-linear in h.
Complex dual_pair(const TruncatedSequence& h, const TruncatedSequence& f);
/// Random sequence with f_0 = 0 and unit norm; deterministic in seed.
TruncatedSequence random_unit(const SpaceSpec& space, std::size_t dim, std::size_t last_index, std::uint64_t seed);

double max_abs_diff(const TruncatedSequence& a, const TruncatedSequence& b);

}  // namespace growthcert
