#pragma once

// Resolvent-side checks for the evolution semigroup T(1) on sequence spaces.
//
// T(1) restricted to a truncation is nilpotent, so its truncated spectrum says
// nothing. Every spectral statement about T(1) goes through the Gelfand bracket
// of semigroup_spectral_radius instead.

#include <cstdint>
#include <span>
#include <vector>

#include "growthcert/convolution.hpp"

namespace growthcert {

/// z_m = e^{2 pi i m / count}, m = 0..count-1.
class UnimodularGrid {
public:
    explicit UnimodularGrid(int count = 64);

    int count() const noexcept { return static_cast<int>(points_.size()); }
    const std::vector<Complex>& points() const noexcept { return points_; }
    Complex operator[](std::size_t m) const { return points_[m]; }

private:
    std::vector<Complex> points_;
};

/// g_j = z^j f_j. Throws InvalidParameter unless ||z| - 1| <= 1e-12.
TruncatedSequence rotate_sequence(const TruncatedSequence& f, Complex z);

/// sum_{k=0}^{N} T(k) f / z^{k+1} on the truncation 0..N (exact there: T(k) f
/// vanishes on indices <= N once k > N). Requires |z| >= 1 - 1e-12.
TruncatedSequence truncated_semigroup_resolvent(const EvolutionFamily& fam, Complex z, const TruncatedSequence& f);

/// max_n |R(z) f (n) - z^{-(n+1)} (U * rotate(f, z))(n)|.
double rotation_identity_check(const EvolutionFamily& fam, Complex z, const TruncatedSequence& f);

struct ResolventPoint {
    Complex z;
    double estimate = 0.0;
};

struct ResolventCircleResult {
    std::vector<ResolventPoint> points;  ///< unit-circle grid first, then the radial checks
    double max_unit = 0.0;
    double max_radial = 0.0;
    double c_upper = 0.0;
    bool verdict = false;  ///< every estimate <= c_upper + 1e-9
};

inline constexpr double kRadialChecks[] = {1.25, 2.0, 10.0};

/// Lower estimates of ||R(z, T(1))|| on the truncation 0..N at every grid point and
/// at z = rho for rho in kRadialChecks, compared with c_upper.
ResolventCircleResult resolvent_circle_bound(const EvolutionFamily& fam, const SpaceSpec& space,
                                             const UnimodularGrid& grid, std::size_t last_index,
                                             std::uint64_t seed, double c_upper);

struct DiskCheck {
    double r_lower = 0.0;
    double r_upper = 0.0;
    double c_lower = 0.0;
    double c_upper = 0.0;
    double margin = 0.0;       ///< (1 - 1/c_lower) - r_upper
    double tol_bracket = 0.0;  ///< slack from the widths of both brackets
    bool exact = false;        ///< scalar autonomous family, checked as an equality
    double exact_deviation = 0.0;
    bool verdict = false;
};

/// r(T(1)) <= 1 - 1/c against the brackets.
DiskCheck disk_bound_check(const EvolutionFamily& fam, const NormBracket& c, const SemigroupSpectralBracket& r);

/// min over the grid of 1/(1-r) + 1/ln r. Throws InvalidParameter for r outside
/// [1e-8, 1 - 1e-8].
double elementary_inequality_check(std::span<const double> grid);

}  // namespace growthcert
