#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "growthcert/certify.hpp"

namespace gc = growthcert;

namespace {

enum Exit { kOk = 0, kNotCertified = 2, kViolation = 3, kConfigError = 4 };

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw gc::Error(gc::ErrorKind::ConfigError, path + ": cannot write");
    out << text;
}

int run_analyze(const std::string& config_path) {
    const auto cfg = gc::load_config(config_path);
    std::cout << gc::analyze(cfg).dump(2) << '\n';
    return kOk;
}

int run_certify(const std::string& config_path, const std::optional<std::string>& space,
                const std::optional<double>& tol, const std::optional<std::uint64_t>& seed, const std::string& out) {
    auto cfg = gc::load_config(config_path);
    if (space) {
        try {
            const auto state = cfg.space.state_norm;
            cfg.space = gc::SpaceSpec::parse(*space);
            cfg.space.state_norm = state;
        } catch (const gc::Error& e) {
            throw gc::Error(gc::ErrorKind::ConfigError, std::string("--space: ") + e.what());
        }
    }
    if (tol) cfg.tolerance = *tol;
    if (seed) cfg.seed = *seed;
    const auto cert = gc::certify(cfg);
    write_output(gc::to_json(cert).dump(2) + "\n", out);
    std::cerr << gc::to_string(cert.verdict) << '\n';
    return gc::exit_code(cert.verdict);
}

int run_sweep(double from, double to, int steps, const std::vector<double>& list, double tol, std::uint64_t seed,
              const std::string& out) {
    std::vector<double> gammas = list;
    if (gammas.empty()) {
        if (steps < 0) throw gc::Error(gc::ErrorKind::InvalidParameter, "--steps must be >= 0");
        for (int i = 0; i < steps; ++i) {
            gammas.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
        }
    }
    const auto rows = gc::sweep(gammas, tol, seed);
    write_output(gc::sweep_csv(rows), out);
    return kOk;
}

int run_oracle(const std::string& config_path, std::size_t n) {
    const auto cfg = gc::load_config(config_path);
    const auto report = gc::oracle_check(cfg, n);
    nlohmann::json j = {{"truncation", report.truncation},
                        {"apply_deviation", report.apply_deviation},
                        {"adjoint_deviation", report.adjoint_deviation},
                        {"kernel_deviation", report.kernel_deviation},
                        {"max_deviation", report.max_deviation()}};
    if (report.l1_deviation) j["l1_deviation"] = *report.l1_deviation;
    if (report.linf_deviation) j["linf_deviation"] = *report.linf_deviation;
    const bool ok = report.max_deviation() <= 1e-10;
    j["agree"] = ok;
    std::cout << j.dump(2) << '\n';
    return ok ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certify uniform exponential stability of discrete evolution families"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "family diagnostics (growth bound, spectra, exponential bounds)");
    std::string analyze_config;
    analyze->add_option("config", analyze_config, "config JSON")->required();

    auto* certify = app.add_subcommand("certify", "build a stability certificate");
    std::string certify_config, certify_out;
    std::optional<std::string> space;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    certify->add_option("config", certify_config, "config JSON")->required();
    certify->add_option("--space", space, "lp:<p> | linf | c0");
    certify->add_option("--tol", tol, "bracket tolerance");
    certify->add_option("--seed", seed, "seed for witnesses and restarts");
    certify->add_option("--out", certify_out, "report path (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "scalar gamma sweep on c0, written as CSV");
    double from = 0.5, to = 0.999, sweep_tol = 1e-6;
    int steps = 20;
    std::vector<double> gammas;
    std::uint64_t sweep_seed = 42;
    std::string sweep_out;
    sweep->add_option("--gamma-from", from);
    sweep->add_option("--gamma-to", to);
    sweep->add_option("--steps", steps);
    sweep->add_option("--gammas", gammas, "explicit grid (overrides from/to/steps)")->delimiter(',');
    sweep->add_option("--tol", sweep_tol);
    sweep->add_option("--seed", sweep_seed);
    sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

    auto* oracle = app.add_subcommand("oracle", "dense brute-force cross-check");
    std::string oracle_config;
    std::size_t n = 64;
    oracle->add_option("config", oracle_config, "config JSON")->required();
    oracle->add_option("--n", n, "truncation length N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_config);
        if (certify->parsed()) return run_certify(certify_config, space, tol, seed, certify_out);
        if (sweep->parsed()) return run_sweep(from, to, steps, gammas, sweep_tol, sweep_seed, sweep_out);
        if (oracle->parsed()) return run_oracle(oracle_config, n);
    } catch (const gc::Error& e) {
        std::cerr << e.what() << '\n';
        switch (e.kind()) {
            case gc::ErrorKind::ConfigError: return kConfigError;
            case gc::ErrorKind::NotStableCertified: return kNotCertified;
            case gc::ErrorKind::InvalidParameter: return kConfigError;
            default: return kViolation;
        }
    }
    return kOk;
}
