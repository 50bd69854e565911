#include "growthcert/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "growthcert/kernels.hpp"

namespace growthcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Scaled windows whose norm exceeds 1 by less than this are treated as
// non-expanding; the resulting M drifts by at most this factor per period.
constexpr double kContractionSlack = 1e-13;
constexpr std::uint64_t kCachedWindow = 256;

double safe_log(double x) { return x == 0.0 ? -kInf : std::log(x); }

}  // namespace

GeneratorSpec GeneratorSpec::constant(ComplexMatrix step, std::vector<ComplexMatrix> prefix) {
    GeneratorSpec s;
    s.dim = step.dim();
    s.prefix = std::move(prefix);
    s.tail_kind = Tail::Constant;
    s.tail.push_back(std::move(step));
    s.validate();
    return s;
}

GeneratorSpec GeneratorSpec::periodic(std::vector<ComplexMatrix> period, std::vector<ComplexMatrix> prefix) {
    if (period.empty()) throw Error(ErrorKind::InvalidParameter, "periodic tail needs at least one matrix");
    GeneratorSpec s;
    s.dim = period.front().dim();
    s.prefix = std::move(prefix);
    s.tail_kind = Tail::Periodic;
    s.tail = std::move(period);
    s.validate();
    return s;
}

void GeneratorSpec::validate() const {
    if (dim == 0) throw Error(ErrorKind::InvalidParameter, "dimension must be >= 1");
    if (tail.empty()) throw Error(ErrorKind::InvalidParameter, "tail must contain at least one matrix");
    if (tail_kind == Tail::Constant && tail.size() != 1) {
        throw Error(ErrorKind::InvalidParameter, "constant tail holds exactly one matrix");
    }
    auto check = [&](const ComplexMatrix& m, const char* where, std::size_t i) {
        if (m.dim() != dim) {
            throw Error(ErrorKind::InvalidParameter, std::string(where) + "[" + std::to_string(i) + "] is " +
                                                         std::to_string(m.dim()) + "x" + std::to_string(m.dim()) +
                                                         ", expected " + std::to_string(dim));
        }
        if (!m.is_finite()) throw Error(ErrorKind::InvalidParameter, std::string(where) + " entries must be finite");
    };
    for (std::size_t i = 0; i < prefix.size(); ++i) check(prefix[i], "prefix", i);
    for (std::size_t i = 0; i < tail.size(); ++i) check(tail[i], "tail", i);
}

const ComplexMatrix& GeneratorSpec::step(std::size_t n) const {
    if (n < prefix.size()) return prefix[n];
    return tail[(n - prefix.size()) % tail.size()];
}

GeneratorSpec GeneratorSpec::scaled(Complex s) const {
    GeneratorSpec out = *this;
    for (auto& m : out.prefix) m *= s;
    for (auto& m : out.tail) m *= s;
    return out;
}

struct EvolutionFamily::TailCache {
    std::mutex mu;
    std::vector<std::vector<ComplexMatrix>> windows;  // windows[phase][len]
};

EvolutionFamily::EvolutionFamily(GeneratorSpec spec, NormKind norm)
    : spec_(std::move(spec)), norm_(norm), cache_(std::make_shared<TailCache>()) {
    spec_.validate();
    const std::size_t L = spec_.prefix_length();
    const std::size_t q = spec_.period();
    const std::size_t d = spec_.dim;

    prefix_products_.resize(L + 1);
    for (std::size_t m = 0; m <= L; ++m) {
        auto& row = prefix_products_[m];
        row.push_back(ComplexMatrix::identity(d));
        for (std::size_t n = m; n < L; ++n) row.push_back(spec_.prefix[n] * row.back());
    }

    cache_->windows.resize(q);
    for (std::size_t phase = 0; phase < q; ++phase) {
        auto& w = cache_->windows[phase];
        w.push_back(ComplexMatrix::identity(d));
        for (std::size_t b = 0; b < q; ++b) w.push_back(spec_.tail[(phase + b) % q] * w.back());
        monodromy_.push_back(w.back());
    }
    monodromy_spectrum_ = spectral_radius(monodromy_.front(), norm_);
}

ComplexMatrix EvolutionFamily::tail_window(std::size_t phase, std::uint64_t len) const {
    if (len > 4096) return tail_window_scaled(phase, len).value();
    std::lock_guard lock(cache_->mu);
    auto& w = cache_->windows[phase];
    const std::size_t q = period();
    while (w.size() <= len) w.push_back(spec_.tail[(phase + w.size() - 1) % q] * w.back());
    return w[len];
}

ScaledMatrix EvolutionFamily::tail_window_scaled(std::size_t phase, std::uint64_t len) const {
    const std::size_t q = period();
    const std::uint64_t full = len / q;
    const std::size_t rest = static_cast<std::size_t>(len % q);
    const ScaledMatrix head = ScaledMatrix::from(tail_window(phase, rest));
    return scaled_power(monodromy_[(phase + rest) % q], full) * head;
}

ComplexMatrix EvolutionFamily::propagator(std::size_t n, std::size_t m) const {
    if (n < m) {
        throw Error(ErrorKind::DomainError,
                    "propagator U(" + std::to_string(n) + ", " + std::to_string(m) + ") requires n >= m");
    }
    const std::size_t L = prefix_length();
    if (n <= L) return prefix_products_[m][n - m];
    if (m >= L) return tail_window((m - L) % period(), n - m);
    return tail_window(0, n - L) * prefix_products_[m][L - m];
}

double EvolutionFamily::log_window_norm(std::size_t m, std::uint64_t len) const {
    const std::size_t L = prefix_length();
    const std::size_t q = period();
    if (m + len <= L) return safe_log(op_norm(prefix_products_[m][len], norm_));
    auto tail_part = [&](std::size_t phase, std::uint64_t l) {
        return l <= kCachedWindow ? ScaledMatrix::from(tail_window(phase, l)) : tail_window_scaled(phase, l);
    };
    if (m >= L) return tail_part((m - L) % q, len).log_norm(norm_);
    const ScaledMatrix head = ScaledMatrix::from(prefix_products_[m][L - m]);
    return (tail_part(0, m + len - L) * head).log_norm(norm_);
}

TruncatedSequence apply_semigroup(const EvolutionFamily& fam, std::size_t j, const TruncatedSequence& f) {
    if (f.dim() != fam.dim()) throw Error(ErrorKind::DomainError, "sequence dimension does not match the family");
    TruncatedSequence out(f.dim(), f.last_index());
    for (std::size_t k = j; k <= f.last_index(); ++k) multiply_into(fam.propagator(k, k - j), f.at(k - j), out.at(k));
    return out;
}

TruncatedSequence solve_cauchy(const EvolutionFamily& fam, const TruncatedSequence& f) {
    TruncatedSequence x;
    kernels::convolve_recurrence(fam, f, x);
    return x;
}

const char* to_string(BoundStatus status) noexcept {
    switch (status) {
        case BoundStatus::Bounded: return "bounded";
        case BoundStatus::Unbounded: return "unbounded";
        case BoundStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

BoundResult exponential_bound(const EvolutionFamily& fam, double omega, std::uint64_t max_tail_power) {
    BoundResult out;
    const std::size_t q = fam.period();
    const std::size_t L = fam.prefix_length();
    const std::size_t d = fam.dim();
    const auto& spec = fam.monodromy_spectrum();
    const double inv_q = 1.0 / static_cast<double>(q);
    out.rate_lower = spec.eigen_available ? std::pow(spec.lower, inv_q) : 0.0;
    out.rate_upper = std::pow(spec.upper(), inv_q);

    const double growth = std::exp(omega);
    if (growth < out.rate_lower * (1.0 - 1e-12)) {
        out.status = BoundStatus::Unbounded;
        return out;
    }

    const Complex step_scale = std::exp(-omega);
    std::vector<ComplexMatrix> scaled_tail;
    for (const auto& t : fam.spec().tail) scaled_tail.push_back(step_scale * t);

    // A tail length J = j q with ||(e^{-omega q} P_phase)^j|| <= 1 for every phase;
    // j runs through powers of two (any such J gives the exact supremum below).
    const Complex period_scale = std::exp(-omega * static_cast<double>(q));
    std::vector<ComplexMatrix> power;
    for (std::size_t phase = 0; phase < q; ++phase) power.push_back(period_scale * fam.monodromy(phase));
    std::uint64_t j = 1;
    bool found = false;
    while (j * q <= max_tail_power) {
        bool all_contract = true;
        bool blown_up = false;
        for (const auto& p : power) {
            const double n = op_norm(p, fam.norm());
            if (!std::isfinite(n) || n > 1e150) blown_up = true;
            if (n > 1.0 + kContractionSlack) all_contract = false;
        }
        if (all_contract) {
            found = true;
            break;
        }
        if (blown_up) break;
        for (auto& p : power) p = p * p;
        j *= 2;
    }
    if (!found) {
        out.status = growth <= out.rate_lower ? BoundStatus::Unbounded : BoundStatus::Inconclusive;
        return out;
    }

    const std::uint64_t J = j * q;
    out.period_power = J;
    double M = 1.0;
    auto consider = [&](const ComplexMatrix& w) { M = std::max(M, op_norm(w, fam.norm())); };

    // windows starting in the tail: sup over the length equals max over lengths < J
    for (std::size_t phase = 0; phase < q; ++phase) {
        ComplexMatrix cur = ComplexMatrix::identity(d);
        for (std::uint64_t b = 0; b < J; ++b) {
            consider(cur);
            cur = scaled_tail[(phase + b) % q] * cur;
        }
    }
    // windows starting in the prefix
    for (std::size_t m = 0; m < L; ++m) {
        ComplexMatrix cur = ComplexMatrix::identity(d);
        for (std::size_t n = m; n < L; ++n) {
            consider(cur);
            cur = step_scale * fam.step(n) * cur;
        }
        for (std::uint64_t b = 0; b < J; ++b) {
            consider(cur);
            cur = scaled_tail[b % q] * cur;
        }
    }
    if (!std::isfinite(M)) {
        out.status = BoundStatus::Inconclusive;
        return out;
    }
    out.status = BoundStatus::Bounded;
    out.bound = {omega, M};
    return out;
}

GrowthBound growth_bound_oracle(const EvolutionFamily& fam) {
    GrowthBound out;
    const auto& spec = fam.monodromy_spectrum();
    const double q = static_cast<double>(fam.period());
    const double r_hi = spec.upper();
    const double r_lo = spec.eigen_available ? spec.lower : 0.0;
    out.upper = safe_log(r_hi) / q;
    out.lower = std::min(safe_log(r_lo) / q, out.upper);
    if (r_hi == 0.0) {
        out.value = -kInf;
    } else if (spec.eigen_available) {
        out.value = out.lower;
    } else {  // no eigenvalues past kMaxEigenDim
        out.value = safe_log(spec.estimate) / q;
    }
    std::ostringstream why;
    why << "omega0 = (1/q) ln r(P) with q = " << fam.period() << " and P the tail monodromy; windows (m + kq, m) "
        << "inside the tail force omega >= (1/q) ln r(P) and the length-" << fam.prefix_length()
        << " prefix contributes a bounded factor only. Bracket from eigenvalues (lower) and Gelfand norms (upper).";
    out.justification = why.str();
    return out;
}

double semigroup_log_power_norm(const EvolutionFamily& fam, std::uint64_t j) {
    if (j == 0) return 0.0;
    double best = -kInf;
    const std::size_t L = fam.prefix_length();
    for (std::size_t m = 0; m < L + fam.period(); ++m) best = std::max(best, fam.log_window_norm(m, j));
    return best;
}

double semigroup_power_norm(const EvolutionFamily& fam, std::uint64_t j) {
    return std::exp(semigroup_log_power_norm(fam, j));
}

SemigroupSpectralBracket semigroup_spectral_radius(const EvolutionFamily& fam) {
    SemigroupSpectralBracket out;
    out.upper = kInf;
    double previous = -1.0;
    for (int k = 0; k <= 40; ++k) {
        const std::uint64_t j = std::uint64_t{1} << k;
        const double v = std::exp(semigroup_log_power_norm(fam, j) / static_cast<double>(j));
        out.trace.emplace_back(j, v);
        out.upper = std::min(out.upper, v);
        // windows shorter than the prefix plus one period can repeat a norm without having converged
        const bool settled = j > fam.prefix_length() + fam.period() && previous >= 0.0 && std::abs(v - previous) < 1e-10;
        if (v == 0.0 || settled) break;
        previous = v;
    }
    const auto& spec = fam.monodromy_spectrum();
    out.lower = spec.eigen_available ? std::pow(spec.lower, 1.0 / static_cast<double>(fam.period())) : 0.0;
    out.lower = std::min(out.lower, out.upper);
    return out;
}

}  // namespace growthcert
