#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "growthcert/evolution.hpp"
#include "growthcert/sequence.hpp"

namespace growthcert {

/// Where the upper side of a norm bracket comes from.
enum class UpperProvenance {
    None,                ///< no upper bound (family not certified stable)
    AnalyticGeometric,   ///< M / (1 - e^omega) from a certified exponential bound
    ScalarExact,         ///< closed-form row/column sums of the infinite scalar kernel
    SchurInterpolation,  ///< c_1^{1/p} c_inf^{1-1/p} from the scalar-exact sums
    DenseOracle,         ///< induced norm of the dense truncated matrix
};

const char* to_string(UpperProvenance p) noexcept;

/// Certified enclosure [lower, upper] of an operator norm.
struct NormBracket {
    double lower = 0.0;
    double upper = 0.0;
    TruncatedSequence lower_witness;  ///< lower == ||K w|| / ||w|| on the witness truncation
    std::string lower_method;
    UpperProvenance upper_provenance = UpperProvenance::None;
    std::optional<ExponentialBound> upper_bound_used;
    std::size_t truncation = 0;  ///< last index N of the witness
    bool inconclusive = false;   ///< width >= tolerance after the whole schedule
    std::vector<std::pair<std::size_t, double>> lower_trace;  ///< (N, lower) over the schedule

    double width() const noexcept { return upper - lower; }
};

/// (U*f)(k) = sum_{j<=k} U(k,j) f_j. Throws InvalidSequence when f_0 != 0.
TruncatedSequence apply_convolution(const EvolutionFamily& fam, const TruncatedSequence& f);
/// Adjoint of the truncated convolution on sequences with first entry 0.
TruncatedSequence apply_convolution_adjoint(const EvolutionFamily& fam, const TruncatedSequence& g);

inline constexpr std::size_t kMaxOracleSize = 4096;

/// Block lower-triangular (N d) x (N d) matrix with block (k,j) = U(k,j), 1 <= j <= k <= N.
/// Throws ResourceError when N d exceeds kMaxOracleSize.
ComplexMatrix dense_oracle_matrix(const EvolutionFamily& fam, std::size_t last_index);
/// Flattens f_1..f_N (index 0 dropped) to match dense_oracle_matrix.
std::vector<Complex> flatten_tail(const TruncatedSequence& f);

/// A linear operator on truncated sequences together with its adjoint.
struct SequenceOperator {
    std::function<void(const TruncatedSequence&, TruncatedSequence&)> apply;
    std::function<void(const TruncatedSequence&, TruncatedSequence&)> adjoint;
    std::size_t dim = 1;
    std::size_t last_index = 1;
};

struct LowerEstimate {
    double value = 0.0;
    TruncatedSequence witness;
    std::string method;
    int iterations = 0;
};

/// Norm lower bound by dual ascent (Boyd's p-norm power method; Hager's scheme at
/// p = 1 and p = inf; plain power iteration at p = 2). Restarts are seeded and the
/// reduction is independent of thread scheduling.
LowerEstimate estimate_norm(const SequenceOperator& op, const SpaceSpec& space, std::uint64_t seed,
                            const TruncatedSequence* warm_start = nullptr, int restarts = 8);

/// Lower bound on c_U(X) from the truncation 0..N. Scalar families on l^1 and the
/// sup spaces use exact row/column sums.
LowerEstimate conv_norm_lower(const EvolutionFamily& fam, const SpaceSpec& space, std::size_t last_index,
                              std::uint64_t seed, const TruncatedSequence* warm_start = nullptr);

/// sup_n sum_{j<=n} |U(n,j)| and sup_j sum_{n>=j} |U(n,j)| over the infinite index set
/// (j >= 1) for d = 1; +inf when the tail does not contract.
struct ScalarKernelSums {
    double rows = 0.0;
    double columns = 0.0;
};
ScalarKernelSums scalar_exact_sums(const EvolutionFamily& fam);

/// Certified exponential bounds with omega < 0 on a grid in [omega0_upper, 0).
std::vector<ExponentialBound> certified_negative_bounds(const EvolutionFamily& fam, const GrowthBound& growth,
                                                        int grid_points = 32);

/// M / (1 - e^omega): bounds ||K|| on every l^p_0, l^inf_0 and c_0^0.
double geometric_upper(const ExponentialBound& b);
/// M (e^{nu p} / (e^{nu p} - 1))^{1/p}, nu = -omega: the l^p chain constant from the
/// Datko-type argument. Not a valid norm bound for p > 1; kept for comparison only.
double lp_chain_constant(const ExponentialBound& b, double p);

struct UpperEstimate {
    double value = 0.0;
    UpperProvenance provenance = UpperProvenance::None;
    std::optional<ExponentialBound> bound;
};

/// Certified upper bound on c_U(X). Throws NotStableCertified when no exponential
/// bound with omega < 0 exists.
UpperEstimate conv_norm_upper(const EvolutionFamily& fam, const SpaceSpec& space);
UpperEstimate conv_norm_upper(const EvolutionFamily& fam, const SpaceSpec& space, const GrowthBound& growth);

struct BracketOptions {
    std::vector<std::size_t> schedule;  ///< empty = automatic doubling from 16
    double tolerance = 1e-6;
    std::uint64_t seed = 42;
};

/// Runs conv_norm_lower over an increasing truncation schedule (warm-started from the
/// zero-padded previous witness, so lower bounds never decrease) until the bracket
/// is narrower than the tolerance.
NormBracket conv_norm_bracket(const EvolutionFamily& fam, const SpaceSpec& space, const BracketOptions& options);
NormBracket conv_norm_bracket(const EvolutionFamily& fam, const SpaceSpec& space, const BracketOptions& options,
                              const GrowthBound& growth);

/// u_1(T) = sum_n ||T^n|| bracketed by a partial sum plus a certified geometric tail.
NormBracket u1_bracket(const ComplexMatrix& t, double tolerance = 1e-14, NormKind norm = NormKind::Two);

}  // namespace growthcert
