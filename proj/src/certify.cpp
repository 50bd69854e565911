#include "growthcert/certify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

#include "growthcert/kernels.hpp"

namespace growthcert {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ConfigError, path + ": " + what);
}

double number_at(const json& j, const std::string& path) {
    if (!j.is_number()) config_error(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) config_error(path, "must be finite");
    return v;
}

Complex entry_at(const json& j, const std::string& path) {
    if (j.is_number()) return number_at(j, path);
    if (!j.is_array() || j.size() != 2) config_error(path, "expected a complex entry [re, im]");
    return {number_at(j[0], path + "[0]"), number_at(j[1], path + "[1]")};
}

// Either d rows of d entries or a flat row-major list of d*d entries.
ComplexMatrix matrix_at(const json& j, std::size_t d, const std::string& path) {
    if (!j.is_array()) config_error(path, "expected a matrix");
    std::vector<Complex> values;
    // for d > 1 the two forms differ in length; for d = 1 a row is [x] and an entry is [re, im]
    const bool nested = d > 1 ? j.size() == d : (j.size() == 1 && j[0].is_array() && j[0].size() == 1);
    if (nested) {
        for (std::size_t r = 0; r < d; ++r) {
            const std::string row = path + "[" + std::to_string(r) + "]";
            if (!j[r].is_array() || j[r].size() != d) config_error(row, "expected " + std::to_string(d) + " entries");
            for (std::size_t c = 0; c < d; ++c) values.push_back(entry_at(j[r][c], row + "[" + std::to_string(c) + "]"));
        }
    } else {
        if (j.size() != d * d) config_error(path, "expected " + std::to_string(d) + " rows or " + std::to_string(d * d) + " entries");
        for (std::size_t k = 0; k < j.size(); ++k) values.push_back(entry_at(j[k], path + "[" + std::to_string(k) + "]"));
    }
    return ComplexMatrix::from_row_major(d, std::move(values));
}

std::vector<ComplexMatrix> matrix_list_at(const json& j, std::size_t d, const std::string& path) {
    if (!j.is_array()) config_error(path, "expected a list of matrices");
    std::vector<ComplexMatrix> out;
    for (std::size_t k = 0; k < j.size(); ++k) out.push_back(matrix_at(j[k], d, path + "[" + std::to_string(k) + "]"));
    return out;
}

NormKind norm_at(const json& j, const std::string& path) {
    const std::string s = j.is_string() ? j.get<std::string>() : (j.is_number() ? j.dump() : "");
    if (s == "1") return NormKind::One;
    if (s == "2") return NormKind::Two;
    if (s == "inf") return NormKind::Inf;
    config_error(path, "expected \"1\", \"2\" or \"inf\"");
}

const char* norm_label(NormKind k) {
    switch (k) {
        case NormKind::One: return "1";
        case NormKind::Two: return "2";
        case NormKind::Inf: return "inf";
    }
    return "?";
}

json num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

json complex_json(Complex z) { return json::array({num(z.real()), num(z.imag())}); }

json matrix_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(complex_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// w * c with -inf * positive = -inf.
double product(double w, double c) {
    if (std::isinf(w)) return c > 0.0 ? w : 0.0;
    return w * c;
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : -kInf; }

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json bracket_json(const NormBracket& b) {
    json trace = json::array();
    for (const auto& [n, v] : b.lower_trace) trace.push_back(json::array({n, num(v)}));
    json used = nullptr;
    if (b.upper_bound_used) used = {{"omega", num(b.upper_bound_used->omega)}, {"M", num(b.upper_bound_used->M)}};
    return {{"lower", num(b.lower)},
            {"upper", num(b.upper)},
            {"width", num(b.width())},
            {"lower_method", b.lower_method},
            {"upper_provenance", to_string(b.upper_provenance)},
            {"upper_bound", used},
            {"truncation", b.truncation},
            {"inconclusive", b.inconclusive},
            {"lower_trace", trace}};
}

bool is_diagonal(const ComplexMatrix& t) {
    for (std::size_t r = 0; r < t.dim(); ++r)
        for (std::size_t c = 0; c < t.dim(); ++c)
            if (r != c && t(r, c) != Complex{}) return false;
    return true;
}

}  // namespace

FamilyConfig parse_config(const json& j) {
    if (!j.is_object()) config_error("$", "expected an object");
    FamilyConfig cfg;
    if (!j.contains("schema_version")) config_error("schema_version", "missing");
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kSchemaVersion) {
        config_error("schema_version", "unsupported (expected 1)");
    }
    if (!j.contains("dimension") || !j["dimension"].is_number_integer() || j["dimension"].get<long long>() < 1) {
        config_error("dimension", "expected a positive integer");
    }
    const auto d = j["dimension"].get<std::size_t>();

    std::vector<ComplexMatrix> prefix;
    if (j.contains("prefix")) prefix = matrix_list_at(j["prefix"], d, "prefix");

    if (!j.contains("tail") || !j["tail"].is_object()) config_error("tail", "expected an object");
    const json& tail = j["tail"];
    const std::string type = tail.value("type", "");
    if (type == "constant") {
        if (!tail.contains("matrix")) config_error("tail.matrix", "missing");
        cfg.spec = GeneratorSpec::constant(matrix_at(tail["matrix"], d, "tail.matrix"), std::move(prefix));
    } else if (type == "periodic") {
        if (!tail.contains("matrices")) config_error("tail.matrices", "missing");
        auto period = matrix_list_at(tail["matrices"], d, "tail.matrices");
        if (period.empty()) config_error("tail.matrices", "period must be non-empty");
        cfg.spec = GeneratorSpec::periodic(std::move(period), std::move(prefix));
    } else {
        config_error("tail.type", "expected \"constant\" or \"periodic\"");
    }

    if (j.contains("space")) {
        const json& s = j["space"];
        if (!s.is_object()) config_error("space", "expected an object");
        const NormKind state = s.contains("state_norm") ? norm_at(s["state_norm"], "space.state_norm") : NormKind::Two;
        const std::string kind = s.value("type", "");
        if (kind == "lp") {
            if (!s.contains("p")) config_error("space.p", "missing");
            const double p = number_at(s["p"], "space.p");
            if (p < 1.0) config_error("space.p", "must be >= 1");
            cfg.space = SpaceSpec::lp(p, state);
        } else if (kind == "linf") {
            cfg.space = SpaceSpec::linf(state);
        } else if (kind == "c0") {
            cfg.space = SpaceSpec::c0(state);
        } else {
            config_error("space.type", "expected \"lp\", \"linf\" or \"c0\"");
        }
    }

    if (j.contains("truncation")) {
        const json& t = j["truncation"];
        if (t.is_string()) {
            if (t.get<std::string>() != "auto") config_error("truncation", "expected \"auto\" or {\"schedule\": [...]}");
        } else if (t.is_object() && t.contains("schedule") && t["schedule"].is_array()) {
            const json& s = t["schedule"];
            for (std::size_t k = 0; k < s.size(); ++k) {
                const std::string path = "truncation.schedule[" + std::to_string(k) + "]";
                if (!s[k].is_number_integer() || s[k].get<long long>() < 1) config_error(path, "expected a positive integer");
                cfg.schedule.push_back(s[k].get<std::size_t>());
            }
            if (cfg.schedule.empty()) config_error("truncation.schedule", "must be non-empty");
        } else {
            config_error("truncation", "expected \"auto\" or {\"schedule\": [...]}");
        }
    }
    if (j.contains("tolerance")) {
        cfg.tolerance = number_at(j["tolerance"], "tolerance");
        if (!(cfg.tolerance > 0.0)) config_error("tolerance", "must be positive");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) config_error("seed", "expected a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
    try {
        cfg.spec.validate();
    } catch (const Error& e) {
        config_error("tail", e.what());
    }
    return cfg;
}

FamilyConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

FamilyConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, path + ": cannot open");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

json config_to_json(const FamilyConfig& config) {
    const GeneratorSpec& s = config.spec;
    json prefix = json::array();
    for (const auto& m : s.prefix) prefix.push_back(matrix_json(m));
    json tail;
    if (s.tail_kind == GeneratorSpec::Tail::Constant) {
        tail = {{"type", "constant"}, {"matrix", matrix_json(s.tail.front())}};
    } else {
        json ms = json::array();
        for (const auto& m : s.tail) ms.push_back(matrix_json(m));
        tail = {{"type", "periodic"}, {"matrices", ms}};
    }
    json space;
    switch (config.space.kind) {
        case SpaceSpec::Kind::Lp: space = {{"type", "lp"}, {"p", config.space.p}}; break;
        case SpaceSpec::Kind::LInfty: space = {{"type", "linf"}}; break;
        case SpaceSpec::Kind::C0: space = {{"type", "c0"}}; break;
    }
    space["state_norm"] = norm_label(config.space.state_norm);
    json truncation = "auto";
    if (!config.schedule.empty()) truncation = {{"schedule", config.schedule}};
    return {{"schema_version", kSchemaVersion},
            {"dimension", s.dim},
            {"prefix", prefix},
            {"tail", tail},
            {"space", space},
            {"truncation", truncation},
            {"tolerance", config.tolerance},
            {"seed", config.seed}};
}

std::string family_digest(const GeneratorSpec& spec) {
    std::ostringstream text;
    char buf[64];
    auto put = [&](const ComplexMatrix& m) {
        text << '[';
        for (const Complex c : m.values()) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g;", c.real(), c.imag());
            text << buf;
        }
        text << ']';
    };
    text << "d=" << spec.dim << ";prefix=";
    for (const auto& m : spec.prefix) put(m);
    text << (spec.tail_kind == GeneratorSpec::Tail::Constant ? ";constant=" : ";periodic=");
    for (const auto& m : spec.tail) put(m);

    std::uint64_t h = 14695981039346656037ull;
    for (const unsigned char ch : text.str()) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DatkoReport datko_check(const EvolutionFamily& fam, double p, std::size_t j_max, std::size_t horizon,
                        std::span<const ExponentialBound> bounds, double c_upper) {
    if (!(p >= 1.0) || std::isinf(p)) throw Error(ErrorKind::InvalidParameter, "Datko sums need 1 <= p < inf");
    DatkoReport out;
    out.p = p;
    out.horizon = horizon;
    const std::size_t d = fam.dim();
    const double bound = std::isfinite(c_upper) ? std::pow(c_upper, p) : kInf;
    std::vector<Complex> v(d), next(d);
    for (std::size_t j = 1; j <= j_max && j <= horizon; ++j) {
        double tail = kInf;
        for (const auto& b : bounds) {
            const double ep = std::exp(b.omega * p);
            tail = std::min(tail, std::pow(b.M, p) * std::exp(b.omega * p * static_cast<double>(horizon + 1 - j)) / (1.0 - ep));
        }
        for (std::size_t i = 0; i < d; ++i) {
            DatkoEntry e;
            e.j = j;
            e.basis = i;
            e.bound = bound;
            e.tail_bound = tail;
            std::fill(v.begin(), v.end(), Complex{});
            v[i] = 1.0;
            for (std::size_t n = j; n <= horizon; ++n) {
                e.partial_sum += std::pow(vec_norm(v, fam.norm()), p);
                if (e.partial_sum > kDatkoDivergence) {
                    e.diverged = true;
                    break;
                }
                multiply_into(fam.step(n), v, next);
                std::swap(v, next);
            }
            e.ok = !e.diverged && e.partial_sum + e.tail_bound <= bound * (1.0 + 1e-9);
            out.diverged = out.diverged || e.diverged;
            out.entries.push_back(e);
        }
    }
    out.verdict = !out.entries.empty() &&
                  std::all_of(out.entries.begin(), out.entries.end(), [](const DatkoEntry& e) { return e.ok; });
    return out;
}

Corollary2Report corollary2_report(const ComplexMatrix& t, std::span<const double> p_list,
                                   const BracketOptions& options, NormKind norm) {
    Corollary2Report out;
    const SpectralRadius r = spectral_radius(t, norm);
    out.r_upper = r.upper();
    out.r_lower = std::min(r.eigen_available ? r.lower : 0.0, out.r_upper);
    if (!(out.r_upper < 1.0)) throw Error(ErrorKind::NotStableCertified, "corollary needs r(T) < 1");
    out.u1 = u1_bracket(t, 1e-12, norm);

    if (is_diagonal(t)) {
        // ||T^n|| = r^n for a diagonal T in every induced p-norm
        double rad = 0.0;
        for (std::size_t i = 0; i < t.dim(); ++i) rad = std::max(rad, std::abs(t(i, i)));
        out.exact = true;
        out.product = product(safe_log(rad), 1.0 / (1.0 - rad));
        out.verdict = out.product <= -1.0 + 1e-12;
    } else {
        out.product = product(safe_log(out.r_lower), out.u1.upper);
        out.verdict = out.product <= -1.0 + 1e-9;
    }
    out.margin = -1.0 - out.product;

    const EvolutionFamily fam(GeneratorSpec::constant(t), norm);
    const GrowthBound growth = growth_bound_oracle(fam);
    for (const double p : p_list) {
        Corollary2Entry e;
        e.p = p;
        e.conv = conv_norm_bracket(fam, SpaceSpec::lp(p, norm), options, growth);
        e.below_u1 = std::all_of(e.conv.lower_trace.begin(), e.conv.lower_trace.end(),
                                 [&](const auto& nv) { return nv.second <= out.u1.upper + 1e-9; });
        out.verdict = out.verdict && e.below_u1;
        out.entries.push_back(std::move(e));
    }
    return out;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::CertifiedStable: return "CERTIFIED_STABLE";
        case Verdict::NotCertified: return "NOT_CERTIFIED";
        case Verdict::TheoremViolation: return "THEOREM_VIOLATION";
    }
    return "?";
}

int exit_code(Verdict v) noexcept {
    switch (v) {
        case Verdict::CertifiedStable: return 0;
        case Verdict::NotCertified: return 2;
        case Verdict::TheoremViolation: return 3;
    }
    return 3;
}

StabilityCertificate certify(const FamilyConfig& config, const CertifyOptions& options) {
    StabilityCertificate cert;
    cert.config = config;
    cert.family_digest = family_digest(config.spec);
    cert.generated_at = timestamp();

    const EvolutionFamily fam(config.spec, config.space.state_norm);
    const SpaceSpec& space = config.space;
    cert.omega0 = growth_bound_oracle(fam);
    cert.spectral = semigroup_spectral_radius(fam);
    if (cert.omega0.value == -kInf) cert.notes.push_back("omega0 = -inf (nilpotent tail); -inf * c is taken as -inf");
    if (space.is_sup()) {
        cert.notes.push_back("linf and c0 coincide on truncations; lower bounds come from truncations and are exact "
                             "only in the limit");
    }

    bool violation = false;
    std::vector<ExponentialBound> bounds;
    if (cert.omega0.upper < 0.0) {
        bounds = certified_negative_bounds(fam, cert.omega0);
        try {
            BracketOptions bo{config.schedule, config.tolerance, config.seed};
            cert.c_bracket = conv_norm_bracket(fam, space, bo, cert.omega0);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotStableCertified) throw;
            cert.notes.push_back(e.what());
        }
    } else {
        cert.notes.push_back("omega0 upper bound is not negative; the convolution operator is bounded only for "
                             "uniformly exponentially stable families, so no finite c is reported");
    }

    if (cert.c_bracket) {
        const NormBracket& c = *cert.c_bracket;
        if (c.inconclusive) cert.notes.push_back("norm bracket wider than the tolerance after the whole schedule");

        Theorem12i t;
        t.exact = fam.dim() == 1 && c.upper_provenance == UpperProvenance::ScalarExact;
        if (t.exact) {
            t.favorable = product(cert.omega0.value, c.upper);
            t.strict = t.favorable;
            t.verdict = t.favorable <= -1.0 + 1e-12;
        } else {
            t.favorable = product(cert.omega0.lower, c.upper);
            t.strict = product(cert.omega0.upper, c.lower);
            t.tolerance = std::isfinite(t.favorable) ? t.strict - t.favorable : 0.0;
            t.verdict = t.favorable <= -1.0 + 1e-9;
        }
        t.margin = -1.0 - t.favorable;
        t.strict_margin = -1.0 - t.strict;
        violation = violation || !t.verdict;
        cert.thm12_i = t;

        cert.thm12_ii = disk_bound_check(fam, c, cert.spectral);
        violation = violation || !cert.thm12_ii->verdict;

        const UnimodularGrid grid(options.grid_points);
        const std::size_t n = std::max<std::size_t>(1, std::min(options.resolvent_truncation, kMaxOracleSize / fam.dim()));
        cert.resolvent = resolvent_circle_bound(fam, space, grid, n, config.seed, c.upper);
        violation = violation || !cert.resolvent->verdict;

        const TruncatedSequence f = random_unit(SpaceSpec::lp(2.0), fam.dim(), n, config.seed);
        cert.rotation = {grid.points().size(), n, 0.0};
        for (const Complex z : grid.points())
            cert.rotation.max_deviation = std::max(cert.rotation.max_deviation, rotation_identity_check(fam, z, f));
        violation = violation || !(cert.rotation.max_deviation <= 1e-10);
    }

    // sup spaces use the l^1 sums (impulse responses summed once)
    const double datko_p = space.is_sup() ? 1.0 : space.p;
    double datko_c = kInf;
    if (cert.c_bracket) {
        datko_c = space.is_sup() ? conv_norm_upper(fam, SpaceSpec::lp(1.0, space.state_norm), cert.omega0).value
                                 : cert.c_bracket->upper;
        if (space.is_sup()) cert.notes.push_back("Datko sums use p = 1 with the l^1 upper bound");
    }
    const std::size_t j_max = std::clamp<std::size_t>(fam.prefix_length() + fam.period(), options.datko_j_max, 64);
    cert.datko = datko_check(fam, datko_p, j_max, options.datko_horizon, bounds, datko_c);
    if (cert.c_bracket) violation = violation || !cert.datko.verdict;

    if (cert.c_bracket && options.corollary2 && config.spec.is_autonomous()) {
        const double ps[] = {1.0, 2.0, 4.0};
        BracketOptions bo{config.schedule, config.tolerance, config.seed};
        cert.corollary2 = corollary2_report(config.spec.tail.front(), ps, bo, space.state_norm);
        violation = violation || !cert.corollary2->verdict;
    }

    if (violation) {
        cert.verdict = Verdict::TheoremViolation;
    } else if (cert.c_bracket && std::isfinite(cert.c_bracket->upper) && cert.omega0.upper < 0.0) {
        cert.verdict = Verdict::CertifiedStable;
    } else {
        cert.verdict = Verdict::NotCertified;
        if (cert.datko.diverged) cert.notes.push_back("Datko partial sums diverge: not uniformly exponentially stable");
    }
    return cert;
}

json to_json(const StabilityCertificate& cert) {
    json out;
    out["schema_version"] = cert.schema_version;
    out["family_digest"] = cert.family_digest;
    out["generated_at"] = cert.generated_at;
    out["config"] = config_to_json(cert.config);
    out["space"] = cert.config.space.label();
    out["omega0"] = {{"value", num(cert.omega0.value)},
                     {"lower", num(cert.omega0.lower)},
                     {"upper", num(cert.omega0.upper)},
                     {"justification", cert.omega0.justification}};
    json trace = json::array();
    for (const auto& [j, v] : cert.spectral.trace) trace.push_back(json::array({j, num(v)}));
    out["spectral_radius_T1"] = {{"lower", num(cert.spectral.lower)}, {"upper", num(cert.spectral.upper)}, {"trace", trace}};
    out["c_bracket"] = cert.c_bracket ? bracket_json(*cert.c_bracket) : json(nullptr);

    if (cert.thm12_i) {
        const auto& t = *cert.thm12_i;
        out["thm12_i"] = {{"exact", t.exact},
                          {"favorable_product", num(t.favorable)},
                          {"strict_product", num(t.strict)},
                          {"margin", num(t.margin)},
                          {"strict_margin", num(t.strict_margin)},
                          {"tolerance", num(t.tolerance)},
                          {"verdict", t.verdict}};
    } else {
        out["thm12_i"] = nullptr;
    }
    if (cert.thm12_ii) {
        const auto& d = *cert.thm12_ii;
        out["thm12_ii"] = {{"margin", num(d.margin)},     {"tol_bracket", num(d.tol_bracket)},
                           {"r_lower", num(d.r_lower)},   {"r_upper", num(d.r_upper)},
                           {"c_lower", num(d.c_lower)},   {"c_upper", num(d.c_upper)},
                           {"exact", d.exact},            {"exact_deviation", num(d.exact_deviation)},
                           {"verdict", d.verdict}};
    } else {
        out["thm12_ii"] = nullptr;
    }
    if (cert.resolvent) {
        const auto& r = *cert.resolvent;
        json radial = json::array();
        for (std::size_t i = r.points.size() - std::size(kRadialChecks); i < r.points.size(); ++i)
            radial.push_back({{"z", complex_json(r.points[i].z)}, {"estimate", num(r.points[i].estimate)}});
        out["resolvent"] = {{"grid_points", cert.rotation.grid_points},
                            {"truncation", cert.rotation.truncation},
                            {"max_unit_circle", num(r.max_unit)},
                            {"max_radial", num(r.max_radial)},
                            {"radial", radial},
                            {"c_upper", num(r.c_upper)},
                            {"verdict", r.verdict},
                            {"rotation_identity_max_deviation", num(cert.rotation.max_deviation)}};
    } else {
        out["resolvent"] = nullptr;
    }

    json entries = json::array();
    for (const auto& e : cert.datko.entries) {
        entries.push_back({{"j", e.j},
                           {"basis", e.basis},
                           {"p", num(cert.datko.p)},
                           {"partial_sum", num(e.partial_sum)},
                           {"tail_bound", num(e.tail_bound)},
                           {"value", num(e.partial_sum + e.tail_bound)},
                           {"bound", num(e.bound)},
                           {"diverged", e.diverged},
                           {"ok", e.ok}});
    }
    out["datko"] = {{"p", num(cert.datko.p)},
                    {"horizon", cert.datko.horizon},
                    {"diverged", cert.datko.diverged},
                    {"verdict", cert.datko.verdict},
                    {"entries", entries}};

    if (cert.corollary2) {
        const auto& c = *cert.corollary2;
        json per_p = json::array();
        for (const auto& e : c.entries)
            per_p.push_back({{"p", num(e.p)}, {"c_bracket", bracket_json(e.conv)}, {"below_u1", e.below_u1}});
        out["corollary2"] = {{"u1", bracket_json(c.u1)},
                             {"r_lower", num(c.r_lower)},
                             {"r_upper", num(c.r_upper)},
                             {"product", num(c.product)},
                             {"exact", c.exact},
                             {"margin", num(c.margin)},
                             {"per_p", per_p},
                             {"verdict", c.verdict}};
    } else {
        out["corollary2"] = nullptr;
    }
    out["seeds_and_tolerances"] = {{"seed", cert.config.seed},
                                   {"tolerance", num(cert.config.tolerance)},
                                   {"schedule", cert.config.schedule.empty() ? json("auto") : json(cert.config.schedule)},
                                   {"restarts", 8},
                                   {"contraction_slack", num(1e-13)},
                                   {"thm12_i_tolerance", num(1e-9)},
                                   {"resolvent_tolerance", num(1e-9)},
                                   {"rotation_tolerance", num(1e-10)}};
    out["notes"] = cert.notes;
    out["verdict"] = to_string(cert.verdict);
    return out;
}

json analyze(const FamilyConfig& config) {
    const EvolutionFamily fam(config.spec, config.space.state_norm);
    const GrowthBound growth = growth_bound_oracle(fam);
    const SemigroupSpectralBracket sb = semigroup_spectral_radius(fam);
    const SpectralRadius& mono = fam.monodromy_spectrum();

    json eig = nullptr;
    if (fam.dim() <= kMaxEigenDim) {
        eig = json::array();
        for (const Complex l : eigenvalues(fam.monodromy())) eig.push_back(complex_json(l));
    }
    json bounds = json::array();
    for (const auto& b : certified_negative_bounds(fam, growth))
        bounds.push_back({{"omega", num(b.omega)}, {"M", num(b.M)}, {"geometric_upper", num(geometric_upper(b))}});
    json trace = json::array();
    for (const auto& [j, v] : sb.trace) trace.push_back(json::array({j, num(v)}));

    return {{"schema_version", kSchemaVersion},
            {"family_digest", family_digest(config.spec)},
            {"dimension", fam.dim()},
            {"prefix_length", fam.prefix_length()},
            {"period", fam.period()},
            {"autonomous", config.spec.is_autonomous()},
            {"state_norm", norm_label(fam.norm())},
            {"monodromy_eigenvalues", eig},
            {"monodromy_spectral_radius", {{"lower", num(mono.lower)}, {"upper", num(mono.upper())}}},
            {"omega0",
             {{"value", num(growth.value)}, {"lower", num(growth.lower)}, {"upper", num(growth.upper)},
              {"justification", growth.justification}}},
            {"spectral_radius_T1", {{"lower", num(sb.lower)}, {"upper", num(sb.upper)}, {"trace", trace}}},
            {"exponential_bounds", bounds}};
}

double OracleReport::max_deviation() const noexcept {
    double m = std::max({apply_deviation, adjoint_deviation, kernel_deviation});
    if (l1_deviation) m = std::max(m, *l1_deviation);
    if (linf_deviation) m = std::max(m, *linf_deviation);
    return m;
}

OracleReport oracle_check(const FamilyConfig& config, std::size_t last_index) {
    const EvolutionFamily fam(config.spec, config.space.state_norm);
    const std::size_t d = fam.dim();
    OracleReport out;
    out.truncation = last_index;
    const ComplexMatrix k = dense_oracle_matrix(fam, last_index);
    const std::size_t size = k.dim();

    const TruncatedSequence f = random_unit(SpaceSpec::lp(2.0), d, last_index, config.seed);
    const TruncatedSequence g = apply_convolution(fam, f);
    std::vector<Complex> dense(size), dense_par(size);
    const auto flat_f = flatten_tail(f);
    kernels::serial::dense_matvec(k, flat_f, dense);
    kernels::parallel::dense_matvec(k, flat_f, dense_par);
    const auto flat_g = flatten_tail(g);
    for (std::size_t i = 0; i < size; ++i) {
        out.apply_deviation = std::max(out.apply_deviation, std::abs(dense[i] - flat_g[i]));
        out.kernel_deviation = std::max(out.kernel_deviation, std::abs(dense[i] - dense_par[i]));
    }

    const TruncatedSequence h = random_unit(SpaceSpec::lp(2.0), d, last_index, config.seed + 1);
    const TruncatedSequence y = apply_convolution_adjoint(fam, h);
    const ComplexMatrix ks = k.adjoint();
    kernels::serial::dense_matvec(ks, flatten_tail(h), dense);
    const auto flat_y = flatten_tail(y);
    for (std::size_t i = 0; i < size; ++i) out.adjoint_deviation = std::max(out.adjoint_deviation, std::abs(dense[i] - flat_y[i]));

    const kernels::PropagatorTable table(fam, last_index);
    const std::vector<Complex> ones(last_index + 1, 1.0);
    TruncatedSequence serial_out, parallel_out;
    kernels::serial::weighted_convolve(table, ones, f, serial_out);
    kernels::parallel::weighted_convolve(table, ones, f, parallel_out);
    out.kernel_deviation = std::max({out.kernel_deviation, max_abs_diff(serial_out, parallel_out), max_abs_diff(serial_out, g)});

    if (d == 1) {
        double col = 0.0, row = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < size; ++j) {
                c += std::abs(k(j, i));
                r += std::abs(k(i, j));
            }
            col = std::max(col, c);
            row = std::max(row, r);
        }
        out.l1_deviation = std::abs(col - conv_norm_lower(fam, SpaceSpec::lp(1.0), last_index, config.seed).value);
        out.linf_deviation = std::abs(row - conv_norm_lower(fam, SpaceSpec::linf(), last_index, config.seed).value);
    }
    return out;
}

std::vector<SweepRow> sweep(std::span<const double> gammas, double tolerance, std::uint64_t seed) {
    for (const double g : gammas) {
        if (!(g > 0.0 && g < 1.0)) throw Error(ErrorKind::InvalidParameter, "sweep values must lie in (0, 1)");
    }
    std::vector<SweepRow> rows(gammas.size());
    std::vector<std::exception_ptr> errors(gammas.size());
    const auto count = static_cast<std::ptrdiff_t>(gammas.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            FamilyConfig cfg;
            cfg.spec = GeneratorSpec::scalar(gammas[u]);
            cfg.space = SpaceSpec::c0();
            cfg.tolerance = tolerance;
            cfg.seed = seed;
            CertifyOptions opts;
            opts.corollary2 = false;
            const StabilityCertificate cert = certify(cfg, opts);
            SweepRow row;
            row.gamma = gammas[u];
            row.omega0 = cert.omega0.value;
            if (cert.c_bracket) {
                row.c_lower = cert.c_bracket->lower;
                row.c_upper = cert.c_bracket->upper;
            }
            if (cert.thm12_i) {
                row.product_corner = cert.thm12_i->favorable;
                row.margin = cert.thm12_i->margin;
            }
            rows[u] = row;
        } catch (...) {
            errors[u] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out = "gamma,omega0,c_lower,c_upper,product_corner,margin\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.gamma, r.omega0, r.c_lower,
                      r.c_upper, r.product_corner, r.margin);
        out += buf;
    }
    return out;
}

}  // namespace growthcert
