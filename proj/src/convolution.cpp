#include "growthcert/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growthcert/kernels.hpp"

namespace growthcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double conjugate_exponent(double p) {
    if (p == 1.0) return kInf;
    if (p == kInf) return 1.0;
    return p / (p - 1.0);
}

// Unit functional w in (C^d, state)^* with <w, u> = ||u||_state (zero for u = 0).
void norming_functional(std::span<const Complex> u, NormKind state, std::span<Complex> w) {
    for (auto& c : w) c = Complex{};
    const double n = vec_norm(u, state);
    if (n == 0.0) return;
    switch (state) {
        case NormKind::Two:
            for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] / n;
            break;
        case NormKind::One:
            for (std::size_t i = 0; i < u.size(); ++i) w[i] = std::abs(u[i]) > 0.0 ? u[i] / std::abs(u[i]) : Complex(1.0);
            break;
        case NormKind::Inf: {
            std::size_t best = 0;
            for (std::size_t i = 1; i < u.size(); ++i)
                if (std::abs(u[i]) > std::abs(u[best])) best = i;
            w[best] = u[best] / std::abs(u[best]);
            break;
        }
    }
}

// Element h of the dual of l^p(X) with ||h||_* = 1 and <h, g> = ||g||_{l^p(X)}.
TruncatedSequence norming_sequence(const TruncatedSequence& g, double p, NormKind state) {
    TruncatedSequence h(g.dim(), g.last_index());
    std::vector<double> norms(g.length());
    for (std::size_t k = 0; k < g.length(); ++k) norms[k] = vec_norm(g.at(k), state);
    if (p == kInf) {
        const auto it = std::max_element(norms.begin(), norms.end());
        if (*it == 0.0) return h;
        const auto k = static_cast<std::size_t>(it - norms.begin());
        norming_functional(g.at(k), state, h.at(k));
        return h;
    }
    std::vector<Complex> as_complex(norms.begin(), norms.end());
    const double total = vec_norm(as_complex, p);
    if (total == 0.0) return h;
    for (std::size_t k = 0; k < g.length(); ++k) {
        if (norms[k] == 0.0) continue;
        const double weight = p == 1.0 ? 1.0 : std::pow(norms[k] / total, p - 1.0);
        norming_functional(g.at(k), state, h.at(k));
        for (auto& c : h.at(k)) c *= weight;
    }
    return h;
}

double ratio(const SequenceOperator& op, const SpaceSpec& space, const TruncatedSequence& f, TruncatedSequence& scratch) {
    const double nf = seq_norm(f, space);
    if (nf == 0.0) return 0.0;
    op.apply(f, scratch);
    return seq_norm(scratch, space) / nf;
}

struct RestartResult {
    double value = 0.0;
    TruncatedSequence witness;
    int iterations = 0;
};

double flat_two_norm(const TruncatedSequence& f) {
    double s = 0.0;
    for (const Complex c : f.flat()) s += std::norm(c);
    return std::sqrt(s);
}

// Power iteration on K^* K for l^2 with the Euclidean state norm.
RestartResult power_ascend(const SequenceOperator& op, TruncatedSequence f, int max_iter, double rel_tol) {
    for (auto& c : f.at(0)) c = Complex{};
    RestartResult best;
    const double nf = flat_two_norm(f);
    if (nf == 0.0) return {0.0, f, 0};
    f *= 1.0 / nf;
    TruncatedSequence g, x;
    op.apply(f, g);
    best.value = flat_two_norm(g);
    best.witness = f;
    for (int it = 1; it <= max_iter; ++it) {
        best.iterations = it;
        op.adjoint(g, x);
        for (auto& c : x.at(0)) c = Complex{};
        const double nx = flat_two_norm(x);
        if (nx == 0.0) break;
        x *= 1.0 / nx;
        op.apply(x, g);
        const double v = flat_two_norm(g);
        const bool improved = v > best.value * (1.0 + rel_tol);
        if (v > best.value) {
            best.value = v;
            best.witness = x;
        }
        if (!improved) break;
    }
    return best;
}

RestartResult ascend(const SequenceOperator& op, const SpaceSpec& space, TruncatedSequence f, int max_iter,
                     double rel_tol) {
    const double p = space.exponent();
    const double q = conjugate_exponent(p);
    const NormKind state = space.state_norm;
    const NormKind dual_state = dual_norm(state);

    for (auto& c : f.at(0)) c = Complex{};
    TruncatedSequence g, x;
    RestartResult best;
    best.value = ratio(op, space, f, g);
    best.witness = f;
    for (int it = 1; it <= max_iter; ++it) {
        best.iterations = it;
        const TruncatedSequence h = norming_sequence(g, p, state);
        op.adjoint(h, x);
        for (auto& c : x.at(0)) c = Complex{};
        TruncatedSequence next = norming_sequence(x, q, dual_state);
        const double v = ratio(op, space, next, g);
        const bool improved = v > best.value * (1.0 + rel_tol);
        if (v > best.value) {
            best.value = v;
            best.witness = std::move(next);
        }
        if (!improved) break;
    }
    return best;
}

TruncatedSequence flat_start(const SpaceSpec& space, std::size_t dim, std::size_t last) {
    TruncatedSequence f(dim, last);
    for (std::size_t k = 1; k <= last; ++k)
        for (auto& c : f.at(k)) c = 1.0;
    f *= 1.0 / seq_norm(f, space);
    return f;
}

// Truncated scalar kernel: exact max row sum (sup spaces) or column sum (l^1).
LowerEstimate scalar_exact_lower(const EvolutionFamily& fam, const SpaceSpec& space, std::size_t last) {
    LowerEstimate out;
    out.witness = TruncatedSequence(1, last);
    auto a = [&](std::size_t n) { return fam.step(n)(0, 0); };
    if (space.is_sup()) {
        out.method = "scalar-exact-rows";
        double row = 1.0, best = 1.0;
        std::size_t best_n = 1;
        for (std::size_t n = 1; n < last; ++n) {
            row = std::abs(a(n)) * row + 1.0;
            if (row > best) {
                best = row;
                best_n = n + 1;
            }
        }
        // f_j = conj(phase of U(best_n, j)) makes every term of row best_n add up in modulus
        Complex phase = 1.0;
        for (std::size_t j = best_n; j >= 1; --j) {
            out.witness.at(j)[0] = std::conj(phase);
            const Complex aj = a(j - 1);
            if (j > 1) phase = std::abs(aj) > 0.0 ? phase * aj / std::abs(aj) : Complex(1.0);
        }
        out.value = best;
    } else {
        out.method = "scalar-exact-columns";
        double col = 1.0, best = 1.0;
        std::size_t best_j = last;
        for (std::size_t j = last - 1; j >= 1; --j) {
            col = 1.0 + std::abs(a(j)) * col;
            if (col >= best) {
                best = col;
                best_j = j;
            }
        }
        out.witness.at(best_j)[0] = 1.0;
        out.value = best;
    }
    return out;
}

SequenceOperator convolution_operator(const EvolutionFamily& fam, std::size_t last) {
    SequenceOperator op;
    op.dim = fam.dim();
    op.last_index = last;
    op.apply = [&fam](const TruncatedSequence& f, TruncatedSequence& out) { kernels::convolve_recurrence(fam, f, out); };
    op.adjoint = [&fam](const TruncatedSequence& g, TruncatedSequence& out) {
        kernels::convolve_adjoint_recurrence(fam, g, out);
    };
    return op;
}

}  // namespace

const char* to_string(UpperProvenance p) noexcept {
    switch (p) {
        case UpperProvenance::None: return "none";
        case UpperProvenance::AnalyticGeometric: return "analytic-geometric";
        case UpperProvenance::ScalarExact: return "scalar-exact";
        case UpperProvenance::SchurInterpolation: return "schur-interpolation";
        case UpperProvenance::DenseOracle: return "dense-oracle";
    }
    return "?";
}

TruncatedSequence apply_convolution(const EvolutionFamily& fam, const TruncatedSequence& f) {
    TruncatedSequence g;
    kernels::convolve_recurrence(fam, f, g);
    return g;
}

TruncatedSequence apply_convolution_adjoint(const EvolutionFamily& fam, const TruncatedSequence& g) {
    TruncatedSequence y;
    kernels::convolve_adjoint_recurrence(fam, g, y);
    return y;
}

ComplexMatrix dense_oracle_matrix(const EvolutionFamily& fam, std::size_t last_index) {
    const std::size_t d = fam.dim();
    const std::size_t size = last_index * d;
    if (size > kMaxOracleSize) {
        throw Error(ErrorKind::ResourceError, "oracle matrix of size " + std::to_string(size) + " exceeds " +
                                                  std::to_string(kMaxOracleSize));
    }
    ComplexMatrix k(size);
    for (std::size_t n = 1; n <= last_index; ++n) {
        for (std::size_t j = 1; j <= n; ++j) {
            const ComplexMatrix u = fam.propagator(n, j);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) k((n - 1) * d + r, (j - 1) * d + c) = u(r, c);
        }
    }
    return k;
}

std::vector<Complex> flatten_tail(const TruncatedSequence& f) {
    const auto flat = f.flat();
    return {flat.begin() + static_cast<std::ptrdiff_t>(f.dim()), flat.end()};
}

// Best single-index start. The l^1 unit ball is the hull of atoms x e_j, and the
// sup-space norm is a max over rows, so on these spaces one atom (or one row
// normed through the adjoint) is exact whenever the state ball is a polytope.
TruncatedSequence atom_start(const SequenceOperator& op, const SpaceSpec& space) {
    TruncatedSequence probe(op.dim, op.last_index), image, best;
    double best_value = -1.0;
    for (std::size_t k = 1; k <= op.last_index; ++k) {
        for (std::size_t c = 0; c < op.dim; ++c) {
            probe.at(k)[c] = 1.0;
            TruncatedSequence candidate;
            if (space.is_sup()) {
                op.adjoint(probe, image);
                for (auto& v : image.at(0)) v = Complex{};
                candidate = norming_sequence(image, 1.0, dual_norm(space.state_norm));
            } else {
                candidate = probe;
            }
            probe.at(k)[c] = 0.0;
            const double v = ratio(op, space, candidate, image);
            if (v > best_value) {
                best_value = v;
                best = std::move(candidate);
            }
        }
    }
    return best;
}

LowerEstimate estimate_norm(const SequenceOperator& op, const SpaceSpec& space, std::uint64_t seed,
                            const TruncatedSequence* warm_start, int restarts) {
    const bool two = space.kind == SpaceSpec::Kind::Lp && space.p == 2.0 && space.state_norm == NormKind::Two;
    // power iteration finds the top singular vector from any generic start
    restarts = two ? 1 : std::max(restarts, 1);
    std::vector<TruncatedSequence> starts;
    if (warm_start != nullptr) {
        starts.push_back(warm_start->last_index() < op.last_index ? warm_start->padded(op.last_index) : *warm_start);
    } else {
        starts.push_back(flat_start(space, op.dim, op.last_index));
    }
    for (int r = 1; r < restarts; ++r) {
        starts.push_back(random_unit(space, op.dim, op.last_index, seed + static_cast<std::uint64_t>(r)));
    }
    if (space.is_sup() || space.p == 1.0) starts.push_back(atom_start(op, space));

    const int max_iter = two ? 2000 : 300;
    const double rel_tol = two ? 1e-13 : 1e-14;

    std::vector<RestartResult> results(starts.size());
    const auto count = static_cast<std::ptrdiff_t>(starts.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t r = 0; r < count; ++r) {
        const auto u = static_cast<std::size_t>(r);
        results[u] = two ? power_ascend(op, starts[u], max_iter, rel_tol) : ascend(op, space, starts[u], max_iter, rel_tol);
    }

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].value > results[best].value) best = r;

    LowerEstimate out;
    out.witness = std::move(results[best].witness);
    out.iterations = results[best].iterations;
    out.method = two ? "power-iteration" : (space.is_sup() || space.p == 1.0 ? "hager-dual-ascent" : "boyd-dual-ascent");
    TruncatedSequence scratch;
    out.value = ratio(op, space, out.witness, scratch);
    return out;
}

LowerEstimate conv_norm_lower(const EvolutionFamily& fam, const SpaceSpec& space, std::size_t last_index,
                              std::uint64_t seed, const TruncatedSequence* warm_start) {
    if (last_index < 1) throw Error(ErrorKind::InvalidParameter, "truncation needs N >= 1");
    if (fam.dim() == 1 && (space.is_sup() || space.p == 1.0)) return scalar_exact_lower(fam, space, last_index);
    return estimate_norm(convolution_operator(fam, last_index), space, seed, warm_start);
}

ScalarKernelSums scalar_exact_sums(const EvolutionFamily& fam) {
    if (fam.dim() != 1) throw Error(ErrorKind::InvalidParameter, "scalar-exact sums need d = 1");
    const std::size_t L = fam.prefix_length();
    const std::size_t q = fam.period();
    auto a = [&](std::size_t n) { return std::abs(fam.step(n)(0, 0)); };
    double rho = 1.0;
    for (std::size_t b = 0; b < q; ++b) rho *= a(L + b);
    ScalarKernelSums out;
    if (!(rho < 1.0)) return {kInf, kInf};

    // Rows: R(1) = 1, R(n+1) = a_n R(n) + 1. From s = max(L,1) on, each phase follows
    // x -> rho x + c, which moves monotonically to c / (1 - rho).
    const std::size_t s = std::max<std::size_t>(L, 1);
    double row = 1.0;
    double best = 1.0;
    for (std::size_t n = 1; n < s; ++n) {
        row = a(n) * row + 1.0;
        best = std::max(best, row);
    }
    for (std::size_t t = 0; t < q; ++t) {
        // row currently holds R(s + t)
        double c = 0.0;
        for (std::size_t b = 0; b < q; ++b) c = a(s + t + b) * c + 1.0;
        best = std::max({best, row, c / (1.0 - rho)});
        row = a(s + t) * row + 1.0;
    }
    out.rows = best;

    // Columns: C(j) = 1 + a_j C(j+1); tail phases sum a geometric series of periods.
    std::vector<double> tail_col(q);
    for (std::size_t t = 0; t < q; ++t) {
        double partial = 0.0, prod = 1.0;
        for (std::size_t b = 0; b < q; ++b) {
            partial += prod;
            prod *= a(L + t + b);
        }
        tail_col[t] = partial / (1.0 - rho);
    }
    // every tail phase recurs at arbitrarily large j
    best = *std::max_element(tail_col.begin(), tail_col.end());
    double col = tail_col[0];  // C(L)
    for (std::size_t j = L; j-- > 1;) {
        col = 1.0 + a(j) * col;
        best = std::max(best, col);
    }
    out.columns = best;
    return out;
}

std::vector<ExponentialBound> certified_negative_bounds(const EvolutionFamily& fam, const GrowthBound& growth,
                                                        int grid_points) {
    std::vector<ExponentialBound> out;
    if (!(growth.upper < 0.0)) return out;
    std::vector<double> omegas;
    if (growth.upper == -kInf) {
        for (int i = 0; i < 10; ++i) omegas.push_back(-std::ldexp(1.0, i - 3));
    } else {
        for (int i = 0; i < grid_points; ++i) omegas.push_back(growth.upper * (1.0 - static_cast<double>(i) / grid_points));
    }
    for (const double w : omegas) {
        const auto r = exponential_bound(fam, w, 8192);
        if (r.status == BoundStatus::Bounded) out.push_back(r.bound);
    }
    return out;
}

double geometric_upper(const ExponentialBound& b) { return b.M / (1.0 - std::exp(b.omega)); }

double lp_chain_constant(const ExponentialBound& b, double p) {
    const double e = std::exp(-b.omega * p);
    return b.M * std::pow(e / (e - 1.0), 1.0 / p);
}

UpperEstimate conv_norm_upper(const EvolutionFamily& fam, const SpaceSpec& space) {
    return conv_norm_upper(fam, space, growth_bound_oracle(fam));
}

UpperEstimate conv_norm_upper(const EvolutionFamily& fam, const SpaceSpec& space, const GrowthBound& growth) {
    UpperEstimate out;
    if (fam.dim() == 1) {
        const auto sums = scalar_exact_sums(fam);
        if (std::isfinite(sums.rows) && std::isfinite(sums.columns)) {
            if (space.is_sup()) {
                out.value = sums.rows;
                out.provenance = UpperProvenance::ScalarExact;
            } else if (space.p == 1.0) {
                out.value = sums.columns;
                out.provenance = UpperProvenance::ScalarExact;
            } else {
                out.value = std::pow(sums.columns, 1.0 / space.p) * std::pow(sums.rows, 1.0 - 1.0 / space.p);
                out.provenance = UpperProvenance::SchurInterpolation;
            }
            return out;
        }
    }
    // M depends on the state norm; omega_0 does not
    const auto bounds = space.state_norm == fam.norm()
                            ? certified_negative_bounds(fam, growth)
                            : certified_negative_bounds(EvolutionFamily(fam.spec(), space.state_norm), growth);
    if (bounds.empty()) {
        throw Error(ErrorKind::NotStableCertified,
                    "no exponential bound with negative omega; the convolution operator is unbounded");
    }
    out.value = kInf;
    for (const auto& b : bounds) {
        const double v = geometric_upper(b);
        if (v < out.value) {
            out.value = v;
            out.bound = b;
        }
    }
    out.provenance = UpperProvenance::AnalyticGeometric;
    return out;
}

NormBracket conv_norm_bracket(const EvolutionFamily& fam, const SpaceSpec& space, const BracketOptions& options) {
    return conv_norm_bracket(fam, space, options, growth_bound_oracle(fam));
}

NormBracket conv_norm_bracket(const EvolutionFamily& fam, const SpaceSpec& space, const BracketOptions& options,
                              const GrowthBound& growth) {
    const UpperEstimate upper = conv_norm_upper(fam, space, growth);
    NormBracket out;
    out.upper = upper.value;
    out.upper_provenance = upper.provenance;
    out.upper_bound_used = upper.bound;

    const bool exact_path = fam.dim() == 1 && (space.is_sup() || space.p == 1.0);
    std::vector<std::size_t> schedule = options.schedule;
    const bool automatic = schedule.empty();
    if (automatic) {
        const std::size_t cap = exact_path ? (std::size_t{1} << 21) : std::min<std::size_t>(512, kMaxOracleSize / (2 * fam.dim()));
        for (std::size_t n = 16; n <= cap; n *= 2) schedule.push_back(n);
    }
    std::sort(schedule.begin(), schedule.end());

    for (const std::size_t n : schedule) {
        const TruncatedSequence* warm = out.lower_witness.length() > 0 ? &out.lower_witness : nullptr;
        LowerEstimate est = conv_norm_lower(fam, space, n, options.seed, warm);
        const double previous = out.lower;
        if (est.value >= out.lower || out.lower_witness.length() == 0) {
            out.lower = est.value;
            out.lower_witness = std::move(est.witness);
            out.lower_method = est.method;
            out.truncation = n;
        }
        out.lower_trace.emplace_back(n, out.lower);
        if (out.upper - out.lower < options.tolerance) break;
        // the iterative lower bound has stopped moving; more truncation will not close the gap
        if (automatic && !exact_path && previous > 0.0 && out.lower - previous <= 1e-9 * out.lower) break;
    }
    // rounding in the closed forms can leave the exact lower a few ulps above the exact upper
    if (out.lower > out.upper && out.lower <= out.upper * (1.0 + 1e-12)) out.lower = out.upper;
    out.inconclusive = !(out.upper - out.lower < options.tolerance);
    return out;
}

NormBracket u1_bracket(const ComplexMatrix& t, double tolerance, NormKind norm) {
    const EvolutionFamily fam(GeneratorSpec::constant(t), norm);
    const GrowthBound growth = growth_bound_oracle(fam);
    if (!(growth.upper < 0.0)) throw Error(ErrorKind::NotStableCertified, "u1(T) needs a certified r(T) < 1");
    const auto bounds = certified_negative_bounds(fam, growth);
    if (bounds.empty()) throw Error(ErrorKind::NotStableCertified, "no exponential bound with e^omega < 1 for T");

    NormBracket out;
    out.lower_method = "partial-sum";
    out.upper_provenance = UpperProvenance::AnalyticGeometric;
    ComplexMatrix power = ComplexMatrix::identity(t.dim());
    double sum = 0.0;
    constexpr std::size_t kMaxTerms = std::size_t{1} << 20;
    for (std::size_t n = 0; n < kMaxTerms; ++n) {
        sum += op_norm(power, norm);
        power = power * t;  // T^{n+1}
        const double next = op_norm(power, norm);
        double tail = kInf;
        for (const auto& b : bounds) {
            const double v = next * b.M / (1.0 - std::exp(b.omega));
            if (v < tail) {
                tail = v;
                out.upper_bound_used = b;
            }
        }
        out.truncation = n;
        if (next == 0.0 || tail <= tolerance * sum || n + 1 == kMaxTerms) {
            out.lower = sum;
            out.upper = sum + (next == 0.0 ? 0.0 : tail);
            break;
        }
    }
    out.inconclusive = out.width() > tolerance * out.lower;
    return out;
}

}  // namespace growthcert
