// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "growthcert/certify.hpp"

using namespace growthcert;
using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); }
};

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Certified {
    corpus::Family family;
    StabilityCertificate cert;
};

std::string run_cli(const std::string& args) {
    std::string out;
    FILE* pipe = popen((std::string(GROWTHCERT_CLI) + " " + args + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) return out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    pclose(pipe);
    return out;
}

void criterion1() {
    const Clock clock;
    const double gammas[] = {0.5, 0.9, 0.99, 0.999};
    const double expect[] = {-1.386294, -1.053605, -1.005034, -1.000500};
    const auto rows = sweep(gammas, 1e-6, 42);
    bool ok = rows.size() == 4;
    double worst_c = 0.0, worst_p = 0.0, worst_w = 0.0;
    for (std::size_t i = 0; ok && i < 4; ++i) {
        const double c = 1.0 / (1.0 - gammas[i]);
        worst_c = std::max({worst_c, std::abs(rows[i].c_upper - c), std::abs(rows[i].c_lower - c)});
        worst_w = std::max(worst_w, rows[i].c_upper - rows[i].c_lower);
        worst_p = std::max(worst_p, std::abs(rows[i].product_corner - expect[i]));
        if (i > 0 && !(rows[i].product_corner > rows[i - 1].product_corner)) ok = false;
        if (!(rows[i].product_corner <= -1.0)) ok = false;
    }
    const double t = clock.seconds();
    ok = ok && worst_w <= 1e-6 && worst_c <= 1e-6 && worst_p <= 1e-6 && t < 5.0;
    report(1, "scalar gamma sweep reproduces c = 1/(1-gamma) and ln(gamma)/(1-gamma)", ok,
           "max |c - 1/(1-gamma)| " + fmt("%.2e", worst_c) + ", max width " + fmt("%.2e", worst_w) +
               ", max product error " + fmt("%.2e", worst_p) + ", " + fmt("%.2f s", t));
}

std::vector<Certified> criterion2() {
    const Clock clock;
    std::vector<Certified> out;
    CertifyOptions opts;
    opts.corollary2 = false;
    bool ok = true;
    double worst_fav = -kInf, worst_exact = -kInf;
    int exact_count = 0;
    std::string bad;
    for (const auto& fam : corpus::stable()) {
        FamilyConfig cfg;
        cfg.spec = fam.spec;
        cfg.space = SpaceSpec::c0();
        auto cert = certify(cfg, opts);
        if (!cert.thm12_i) {
            ok = false;
            bad += " " + fam.name + "(no bracket)";
        } else if (cert.thm12_i->exact) {
            ++exact_count;
            worst_exact = std::max(worst_exact, cert.thm12_i->favorable);
            if (!(cert.thm12_i->favorable <= -1.0 + 1e-12)) {
                ok = false;
                bad += " " + fam.name;
            }
        } else {
            worst_fav = std::max(worst_fav, cert.thm12_i->favorable);
            if (!(cert.thm12_i->favorable <= -1.0 + 1e-9)) {
                ok = false;
                bad += " " + fam.name;
            }
        }
        out.push_back({fam, std::move(cert)});
    }
    const double t = clock.seconds();
    ok = ok && out.size() >= 50 && t < 60.0;
    report(2, "omega0 * c <= -1 on the stable corpus", ok,
           std::to_string(out.size()) + " families, " + std::to_string(exact_count) + " scalar-exact (max " +
               fmt("%.9f", worst_exact) + "), max favorable corner " + fmt("%.9f", worst_fav) + ", " + fmt("%.1f s", t) +
               (bad.empty() ? "" : ", failing:" + bad));
    return out;
}

void criterion3(const std::vector<Certified>& certs) {
    bool ok = true;
    double worst_dev = 0.0, worst_margin = kInf;
    int scalar = 0;
    std::string bad;
    for (const auto& c : certs) {
        if (!c.cert.thm12_ii) {
            ok = false;
            continue;
        }
        const auto& d = *c.cert.thm12_ii;
        if (!(d.margin >= -d.tol_bracket - 1e-12) || !d.verdict) {
            ok = false;
            bad += " " + c.family.name;
        }
        worst_margin = std::min(worst_margin, d.margin + d.tol_bracket);
        if (c.family.scalar_constant) {
            ++scalar;
            if (!d.exact || !(d.exact_deviation <= 1e-12)) {
                ok = false;
                bad += " " + c.family.name + "(exact)";
            }
            worst_dev = std::max(worst_dev, d.exact_deviation);
        }
    }
    report(3, "r(T(1)) <= 1 - 1/c, with equality on the scalar corpus", ok,
           std::to_string(scalar) + " scalar equalities, max |r - (1 - 1/c)| " + fmt("%.2e", worst_dev) +
               ", min margin + slack " + fmt("%.3e", worst_margin) + (bad.empty() ? "" : ", failing:" + bad));
}

void criterion4() {
    const UnimodularGrid grid(64);
    double worst = 0.0;
    std::uint64_t seed = 1;
    std::size_t checks = 0;
    for (const auto& fam_def : corpus::stable()) {
        const EvolutionFamily fam(fam_def.spec);
        const auto f = random_unit(SpaceSpec::lp(2.0), fam.dim(), 64, seed++);
        for (const Complex z : grid.points()) {
            worst = std::max(worst, rotation_identity_check(fam, z, f));
            ++checks;
        }
    }
    report(4, "rotation identity R(z) f = z^{-(n+1)} (U * g)(n)", worst <= 1e-10,
           std::to_string(checks) + " checks at N = 64, max deviation " + fmt("%.2e", worst));
}

void criterion5(const std::vector<Certified>& certs) {
    bool ok = true;
    double worst = -kInf;
    std::size_t points = 0;
    for (const auto& c : certs) {
        if (!c.cert.resolvent) {
            ok = false;
            continue;
        }
        const auto& r = *c.cert.resolvent;
        ok = ok && r.verdict;
        for (const auto& p : r.points) {
            worst = std::max(worst, p.estimate - r.c_upper);
            ++points;
        }
    }
    ok = ok && worst <= 1e-9;
    report(5, "resolvent estimates at |z| in {1, 1.25, 2, 10} stay below c_upper", ok,
           std::to_string(points) + " points, max (estimate - c_upper) " + fmt("%.3e", worst));
}

void criterion6() {
    bool ok = true;
    double worst = 0.0, widest = 0.0;
    std::string bad;
    for (const auto& fam_def : corpus::stable()) {
        const EvolutionFamily fam(fam_def.spec);
        const double w = growth_bound_oracle(fam).value;
        const auto b = semigroup_spectral_radius(fam);
        const double lo = b.lower > 0.0 ? std::log(b.lower) : -kInf;
        const double hi = b.upper > 0.0 ? std::log(b.upper) : -kInf;
        if (w == -kInf) {
            if (hi != -kInf) {
                ok = false;
                bad += " " + fam_def.name;
            }
            continue;
        }
        const double width = hi - lo;
        widest = std::max(widest, width);
        const double miss = std::max({0.0, lo - w, w - hi});
        worst = std::max(worst, miss);
        if (miss > 1e-6) {
            ok = false;
            bad += " " + fam_def.name;
        }
        if (fam_def.scalar_constant && !(lo == hi && std::abs(hi - w) <= 1e-15)) {
            ok = false;
            bad += " " + fam_def.name + "(collapse)";
        }
    }
    report(6, "ln of the Gelfand bracket on r(T(1)) contains omega0", ok,
           "max miss " + fmt("%.2e", worst) + ", widest log bracket " + fmt("%.2e", widest) +
               (bad.empty() ? "" : ", failing:" + bad));
}

void criterion7(const std::vector<Certified>& certs) {
    bool a_ok = true;
    std::size_t entries = 0;
    for (const auto& c : certs) {
        a_ok = a_ok && c.cert.datko.verdict;
        entries += c.cert.datko.entries.size();
    }

    bool b_ok = true;
    std::string b_detail;
    for (const auto& fam : corpus::unstable()) {
        FamilyConfig cfg;
        cfg.spec = fam.spec;
        const auto cert = certify(cfg);
        const bool this_ok = cert.verdict == Verdict::NotCertified && cert.datko.diverged;
        b_ok = b_ok && this_ok;
        b_detail += " " + fam.name + (this_ok ? ":diverged" : ":MISSED");
    }

    // chain constant against truncated lower bounds on l^p
    bool c_ok = true;
    double worst_ratio = 0.0;
    std::string worst_case;
    std::size_t pairs = 0;
    for (const auto& fam_def : corpus::stable()) {
        const EvolutionFamily fam(fam_def.spec);
        const auto growth = growth_bound_oracle(fam);
        const auto bounds = certified_negative_bounds(fam, growth);
        for (const double p : {1.0, 2.0, 4.0}) {
            double chain = kInf;
            for (const auto& b : bounds) chain = std::min(chain, lp_chain_constant(b, p));
            if (!std::isfinite(chain)) continue;  // nilpotent tails: only omega -> -inf
            const double lower = conv_norm_lower(fam, SpaceSpec::lp(p), 64, 42).value;
            ++pairs;
            const double ratio = lower / chain;
            if (ratio > worst_ratio) {
                worst_ratio = ratio;
                char buf[128];
                std::snprintf(buf, sizeof buf, "%s p=%g lower %.6g chain %.6g", fam_def.name.c_str(), p, lower, chain);
                worst_case = buf;
            }
            if (lower > chain * (1.0 + 1e-12)) c_ok = false;
        }
    }

    report(7, "Datko sums bounded, unstable corpus diverges, l^p chain constant dominates", a_ok && b_ok && c_ok,
           std::string("(a) ") + (a_ok ? "ok" : "FAIL") + " over " + std::to_string(entries) + " sums; (b) " +
               (b_ok ? "ok" : "FAIL") + b_detail + "; (c) " + (c_ok ? "ok" : "FAIL") + " over " + std::to_string(pairs) +
               " pairs, worst lower/chain " + fmt("%.4f", worst_ratio) + " at " + worst_case);
}

void criterion8() {
    bool ok = true;
    double worst = -kInf, worst_exact = -kInf;
    std::size_t members = 0;
    std::string bad;
    const double ps[] = {1.0, 2.0, 4.0};
    BracketOptions opt;
    opt.schedule = {16, 32, 64, 128};
    for (const auto& fam : corpus::stable()) {
        if (!fam.spec.is_autonomous()) continue;
        ++members;
        const auto rep = corollary2_report(fam.spec.tail.front(), ps, opt);
        if (!rep.verdict) {
            ok = false;
            bad += " " + fam.name;
        }
        if (fam.scalar_constant) {
            worst_exact = std::max(worst_exact, rep.product);
            if (!(rep.product <= -1.0 + 1e-12)) ok = false;
        } else {
            worst = std::max(worst, rep.product);
        }
    }
    report(8, "ln r(T) * u1(T) <= -1 and conv lower bounds stay below u1(T)", ok,
           std::to_string(members) + " autonomous members, max product " + fmt("%.6f", worst) + ", scalar max " +
               fmt("%.9f", worst_exact) + (bad.empty() ? "" : ", failing:" + bad));
}

void criterion9() {
    double worst = 0.0, worst_norm = 0.0;
    std::size_t count = 0;
    std::string worst_name;
    for (const auto& fam : corpus::stable()) {
        FamilyConfig cfg;
        cfg.spec = fam.spec;
        const std::size_t n = 256 / fam.spec.dim;
        const auto rep = oracle_check(cfg, n);
        ++count;
        const double core = std::max({rep.apply_deviation, rep.adjoint_deviation, rep.kernel_deviation});
        if (core > worst) {
            worst = core;
            worst_name = fam.name;
        }
        if (rep.l1_deviation) worst_norm = std::max({worst_norm, *rep.l1_deviation, *rep.linf_deviation});
    }
    report(9, "structured convolution matches the dense oracle", worst <= 1e-10 && worst_norm <= 1e-12,
           std::to_string(count) + " families at N d = 256, max deviation " + fmt("%.2e", worst) + " (" + worst_name +
               "), scalar l1/linf norm deviation " + fmt("%.2e", worst_norm));
}

void criterion10() {
    std::vector<double> grid(10000);
    for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = 1e-8 + (1.0 - 2e-8) * static_cast<double>(i) / (grid.size() - 1);
    const double m = elementary_inequality_check(grid);
    report(10, "1/(1-r) + 1/ln r >= 0 on a 10^4-point grid", m >= -1e-12, "min margin " + fmt("%.12f", m));
}

void criterion11() {
    const std::string args = std::string("certify ") + GROWTHCERT_TEST_DATA + "/jordan_half_l2.json --seed 11";
    json a, b;
    bool ok = true;
    try {
        a = json::parse(run_cli(args));
        b = json::parse(run_cli(args));
    } catch (const std::exception&) {
        ok = false;
    }
    if (ok) {
        a.erase("generated_at");
        b.erase("generated_at");
        ok = a.dump() == b.dump();
    }
    report(11, "two certify runs with the same config and seed agree", ok,
           ok ? std::to_string(a.dump().size()) + " bytes identical" : "reports differ");
}

}  // namespace

int main() {
    criterion1();
    const auto certs = criterion2();
    criterion3(certs);
    criterion4();
    criterion5(certs);
    criterion6();
    criterion7(certs);
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
