#include "qcheat/kernels/kernels.hpp"
#include "qcheat/reporting.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace qcheat;

namespace {

int do_run(const std::string& config_path, const std::optional<double>& alpha, const std::optional<int>& mx,
           const std::optional<std::string>& out_dir) {
    RunConfig cfg = load_config(config_path);
    if (alpha) apply_setting(cfg, "alpha", format_double(*alpha));
    if (mx) apply_setting(cfg, "m_x", std::to_string(*mx));
    if (out_dir) cfg.out_dir = *out_dir;
    finalize_config(cfg);
    std::cerr << "qcheat run: n=" << cfg.n << " m_x=" << cfg.m_x << " alpha=" << cfg.alpha
              << " kernels=" << kernels().name << " -> " << cfg.out_dir << "\n";
    const RunOutcome out = cmd_run(cfg);
    if (out.exit_code != 0) std::cerr << "invariant violated: " << out.diagnostic << "\n";
    else std::cerr << "ok, theorem gate: " << (out.verdict.records.empty() ? "not evaluated" : out.verdict.gate()) << "\n";
    return out.exit_code;
}

int do_verify(const std::string& suite, std::uint64_t seed, const std::optional<int>& mx,
              const std::optional<double>& alpha, const std::optional<std::string>& report) {
    SuiteOptions o;
    o.seed = seed;
    o.m_x = mx;
    std::vector<SuiteReport> reps;
    if (alpha) {
        check_alpha(*alpha);
        if (suite != "theorem") throw std::invalid_argument("--alpha applies to the theorem suite only");
        reps.push_back(suite_theorem(o, *alpha));
    } else {
        reps = run_suite(suite, o);
    }
    const std::string json = suite_json(reps, o);
    if (report) {
        std::ofstream os(*report, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + *report);
        os << json;
    } else {
        std::cout << json;
    }
    bool ok = true;
    for (const SuiteReport& r : reps) {
        for (const Check& c : r.checks)
            std::cerr << (c.informational ? "INFO" : c.pass ? "PASS" : "FAIL") << "  " << r.suite << ": " << c.name
                      << " = " << c.value << (c.detail.empty() ? "" : "  (" + c.detail + ")") << "\n";
        std::cerr << r.suite << (r.passed() ? " passed" : " FAILED") << " in " << r.seconds << " s\n";
        ok = ok && r.passed();
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Heat flow and energy monotonicity lab on the quaternionic Heisenberg nilmanifold"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "evolve the heat equation and monitor the energy");
    std::string config_path;
    std::optional<double> run_alpha;
    std::optional<int> run_mx;
    std::optional<std::string> out_dir;
    run->add_option("--config", config_path, "key=value configuration file")->required()->check(CLI::ExistingFile);
    run->add_option("--alpha", run_alpha, "exponent alpha (not 0 or 1/2)");
    run->add_option("--mx", run_mx, "grid points per axis");
    run->add_option("--out", out_dir, "output directory");

    auto* verify = app.add_subcommand("verify", "run an invariant suite and print a JSON report");
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::optional<int> ver_mx;
    std::optional<double> ver_alpha;
    std::optional<std::string> report;
    verify->add_option("--suite", suite, "algebra, geometry, calculus, flow, lemma, theorem or all")
        ->check(CLI::IsMember(suite_names()));
    verify->add_option("--seed", seed, "seed for random suites");
    verify->add_option("--mx", ver_mx, "fine grid resolution");
    verify->add_option("--alpha", ver_alpha, "exponent for the theorem suite");
    verify->add_option("--report", report, "write the JSON report to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return do_run(config_path, run_alpha, run_mx, out_dir);
        return do_verify(suite, seed, ver_mx, ver_alpha, report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
