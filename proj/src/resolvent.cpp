#include "growthcert/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "growthcert/kernels.hpp"

namespace growthcert {

UnimodularGrid::UnimodularGrid(int count) {
    if (count < 1) throw Error(ErrorKind::InvalidParameter, "grid needs at least one point");
    points_.reserve(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
        const double theta = 2.0 * std::numbers::pi * m / count;
        points_.push_back(std::polar(1.0, theta));
    }
}

TruncatedSequence rotate_sequence(const TruncatedSequence& f, Complex z) {
    if (!(std::abs(std::abs(z) - 1.0) <= 1e-12)) {
        throw Error(ErrorKind::InvalidParameter, "rotation needs |z| = 1");
    }
    TruncatedSequence g = f;
    Complex power = 1.0;
    for (std::size_t j = 0; j < g.length(); ++j) {
        for (auto& c : g.at(j)) c *= power;
        power *= z;
        // keep |z^j| = 1 over long sequences
        power /= std::abs(power);
    }
    return g;
}

TruncatedSequence truncated_semigroup_resolvent(const EvolutionFamily& fam, Complex z, const TruncatedSequence& f) {
    if (!(std::abs(z) >= 1.0 - 1e-12)) throw Error(ErrorKind::InvalidParameter, "resolvent sum needs |z| >= 1");
    f.validate();
    const kernels::PropagatorTable table(fam, f.last_index());
    std::vector<Complex> weights(f.length());
    Complex w = 1.0 / z;
    for (auto& x : weights) {
        x = w;
        w /= z;
    }
    TruncatedSequence out;
    kernels::parallel::weighted_convolve(table, weights, f, out);
    return out;
}

double rotation_identity_check(const EvolutionFamily& fam, Complex z, const TruncatedSequence& f) {
    const TruncatedSequence lhs = truncated_semigroup_resolvent(fam, z, f);
    TruncatedSequence rhs = apply_convolution(fam, rotate_sequence(f, z));
    Complex w = 1.0 / z;
    for (std::size_t n = 0; n < rhs.length(); ++n) {
        for (auto& c : rhs.at(n)) c *= w;
        w /= z;
    }
    return max_abs_diff(lhs, rhs);
}

ResolventCircleResult resolvent_circle_bound(const EvolutionFamily& fam, const SpaceSpec& space,
                                             const UnimodularGrid& grid, std::size_t last_index,
                                             std::uint64_t seed, double c_upper) {
    ResolventCircleResult out;
    out.c_upper = c_upper;
    std::vector<Complex> zs = grid.points();
    for (const double rho : kRadialChecks) zs.emplace_back(rho, 0.0);
    out.points.resize(zs.size());

    const auto count = static_cast<std::ptrdiff_t>(zs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const Complex z = zs[static_cast<std::size_t>(i)];
        // on truncations R(z, T(1)) = (1/z) K for the family with generators A_n / z
        const EvolutionFamily rotated = fam.scaled(1.0 / z);
        const double lower = conv_norm_lower(rotated, space, last_index, seed).value;
        out.points[static_cast<std::size_t>(i)] = {z, lower / std::abs(z)};
    }

    const std::size_t unit = grid.points().size();
    for (std::size_t i = 0; i < out.points.size(); ++i) {
        double& slot = i < unit ? out.max_unit : out.max_radial;
        slot = std::max(slot, out.points[i].estimate);
    }
    out.verdict = std::max(out.max_unit, out.max_radial) <= c_upper + 1e-9;
    return out;
}

DiskCheck disk_bound_check(const EvolutionFamily& fam, const NormBracket& c, const SemigroupSpectralBracket& r) {
    DiskCheck out;
    out.r_lower = r.lower;
    out.r_upper = r.upper;
    out.c_lower = c.lower;
    out.c_upper = c.upper;
    out.margin = (1.0 - 1.0 / c.lower) - r.upper;
    out.tol_bracket = (1.0 / c.lower - 1.0 / c.upper) + (r.upper - r.lower);
    out.verdict = out.margin >= -out.tol_bracket - 1e-12;

    const bool scalar_autonomous = fam.dim() == 1 && fam.spec().is_autonomous();
    if (scalar_autonomous && c.upper_provenance != UpperProvenance::AnalyticGeometric) {
        // r(T(1)) = |gamma| and c = 1/(1 - |gamma|) on every space: equality
        out.exact = true;
        out.exact_deviation = std::abs((1.0 - 1.0 / c.upper) - r.upper);
        out.verdict = out.verdict && out.exact_deviation <= 1e-12;
    }
    return out;
}

double elementary_inequality_check(std::span<const double> grid) {
    double worst = std::numeric_limits<double>::infinity();
    for (const double r : grid) {
        if (!(r >= 1e-8 && r <= 1.0 - 1e-8)) {
            throw Error(ErrorKind::InvalidParameter, "elementary inequality grid must lie in [1e-8, 1 - 1e-8]");
        }
        const double gap = 1.0 - r;
        worst = std::min(worst, 1.0 / gap + 1.0 / std::log1p(-gap));
    }
    return worst;
}

}  // namespace growthcert
