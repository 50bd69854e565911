#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthcert/convolution.hpp"
#include "growthcert/resolvent.hpp"

namespace growthcert {

inline constexpr int kSchemaVersion = 1;

/// Parsed certify input.
struct FamilyConfig {
    GeneratorSpec spec;
    SpaceSpec space = SpaceSpec::c0();
    std::vector<std::size_t> schedule;  ///< empty = "auto"
    double tolerance = 1e-6;
    std::uint64_t seed = 42;
};

/// Throws ConfigError naming the offending field.
FamilyConfig parse_config(const nlohmann::json& j);
FamilyConfig parse_config_text(const std::string& text);
FamilyConfig load_config(const std::string& path);
nlohmann::json config_to_json(const FamilyConfig& config);

/// FNV-1a over a canonical text form of the generators.
std::string family_digest(const GeneratorSpec& spec);

struct DatkoEntry {
    std::size_t j = 0;
    std::size_t basis = 0;
    double partial_sum = 0.0;  ///< sum_{n=j}^{H} ||U(n,j) e_basis||^p
    double tail_bound = 0.0;   ///< certified bound on the sum over n > H (inf without a bound)
    double bound = 0.0;        ///< c_upper^p (inf when not certified)
    bool diverged = false;     ///< partial sum passed kDatkoDivergence
    bool ok = false;
};

inline constexpr double kDatkoDivergence = 1e6;

struct DatkoReport {
    double p = 1.0;
    std::size_t horizon = 0;
    std::vector<DatkoEntry> entries;
    bool diverged = false;
    bool verdict = false;  ///< every entry bounded; false on divergence
};

/// Summed p-th powers of ||U(n,j) x|| for 1 <= j <= j_max and every standard basis x.
/// `bounds` supply the geometric tail; c_upper = inf runs the divergence diagnostic only.
DatkoReport datko_check(const EvolutionFamily& fam, double p, std::size_t j_max, std::size_t horizon,
                        std::span<const ExponentialBound> bounds, double c_upper);

struct Corollary2Entry {
    double p = 1.0;
    NormBracket conv;
    bool below_u1 = false;  ///< every scheduled lower bound <= u1.upper + 1e-9
};

struct Corollary2Report {
    NormBracket u1;
    double r_lower = 0.0;
    double r_upper = 0.0;
    double product = 0.0;  ///< ln(r_lower) * u1.upper, or the exact value when T is diagonal
    bool exact = false;
    double margin = 0.0;   ///< -1 - product
    std::vector<Corollary2Entry> entries;
    bool verdict = false;
};

/// Throws NotStableCertified unless r(T) < 1 is certified.
Corollary2Report corollary2_report(const ComplexMatrix& t, std::span<const double> p_list,
                                   const BracketOptions& options = {}, NormKind norm = NormKind::Two);

enum class Verdict { CertifiedStable, NotCertified, TheoremViolation };
const char* to_string(Verdict v) noexcept;

struct Theorem12i {
    bool exact = false;
    double favorable = 0.0;  ///< omega0_lower * c_upper
    double strict = 0.0;     ///< omega0_upper * c_lower
    double margin = 0.0;     ///< -1 - favorable
    double strict_margin = 0.0;
    double tolerance = 0.0;  ///< slack on the strict corner from the bracket widths
    bool verdict = false;
};

struct RotationSummary {
    std::size_t grid_points = 0;
    std::size_t truncation = 0;
    double max_deviation = 0.0;
};

struct StabilityCertificate {
    int schema_version = kSchemaVersion;
    std::string family_digest;
    FamilyConfig config;
    GrowthBound omega0;
    SemigroupSpectralBracket spectral;
    std::optional<NormBracket> c_bracket;
    std::optional<Theorem12i> thm12_i;
    std::optional<DiskCheck> thm12_ii;
    std::optional<ResolventCircleResult> resolvent;
    RotationSummary rotation;
    DatkoReport datko;
    std::optional<Corollary2Report> corollary2;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::NotCertified;
    std::string generated_at;
};

struct CertifyOptions {
    int grid_points = 64;
    std::size_t resolvent_truncation = 64;
    std::size_t datko_horizon = 256;
    std::size_t datko_j_max = 8;
    bool corollary2 = true;
};

StabilityCertificate certify(const FamilyConfig& config, const CertifyOptions& options = {});

/// Field-for-field JSON form. Non-finite numbers become "inf" / "-inf".
nlohmann::json to_json(const StabilityCertificate& cert);
/// Process exit code for a verdict: 0, 2 or 3.
int exit_code(Verdict v) noexcept;

/// Family diagnostics without the convolution bracket.
nlohmann::json analyze(const FamilyConfig& config);

struct OracleReport {
    std::size_t truncation = 0;
    double apply_deviation = 0.0;     ///< structured vs dense K f
    double adjoint_deviation = 0.0;   ///< structured vs dense K^* g
    double kernel_deviation = 0.0;    ///< serial vs OpenMP table kernels
    std::optional<double> l1_deviation;    ///< d = 1: dense induced l^1 vs exact column sums
    std::optional<double> linf_deviation;  ///< d = 1: dense induced l^inf vs exact row sums
    double max_deviation() const noexcept;
};

OracleReport oracle_check(const FamilyConfig& config, std::size_t last_index);

struct SweepRow {
    double gamma = 0.0;
    double omega0 = 0.0;
    double c_lower = 0.0;
    double c_upper = 0.0;
    double product_corner = 0.0;
    double margin = 0.0;
};

/// Certifies the scalar family gamma on c_0 for each grid value; rows keep grid order.
/// Throws InvalidParameter for gamma outside (0, 1).
std::vector<SweepRow> sweep(std::span<const double> gammas, double tolerance = 1e-6, std::uint64_t seed = 42);
std::string sweep_csv(std::span<const SweepRow> rows);

}  // namespace growthcert
