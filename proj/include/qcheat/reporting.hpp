#pragma once

#include "qcheat/energy_monitor.hpp"
#include "qcheat/heat_flow.hpp"
#include "qcheat/heisenberg_model.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qcheat {

inline constexpr const char* kFormatVersion = "qcheat-report-1";

struct RunConfig {
    int n = 1;
    int m_x = 8;
    double alpha = -0.05;
    double cfl_safety = 1.0;
    std::optional<double> dt;
    double t_end = 0.01;
    int record_every = 2;
    Integrator integrator = Integrator::euler;
    BumpParams bump = default_bump(1);
    bool bump_center_set = false;
    std::string suite = "all";
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    bool snapshots = false;

    FlowConfig flow() const;
    // Ordered key/value echo including derived grid parameters.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

// Applies one key=value setting; throws std::invalid_argument on unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);
// Cross-field checks (alpha, bump vs grid); called after overrides.
void finalize_config(RunConfig& cfg);

std::string format_double(double v);

struct Check {
    std::string name;
    bool pass = true;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
    bool informational = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    double seconds = 0.0;

    bool passed() const;
    void add(Check c) { checks.push_back(std::move(c)); }
};

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::optional<int> m_x;  // fine resolution override
};

// One suite per acceptance area.
SuiteReport suite_algebra(const SuiteOptions& o);    // tensor algebra identities
SuiteReport suite_roots(const SuiteOptions& o);      // admissible exponent interval
SuiteReport suite_geometry(const SuiteOptions& o);   // exact discrete geometry at m_x = 3
SuiteReport suite_calculus(const SuiteOptions& o);   // convergence orders m_x/2 -> m_x
SuiteReport suite_flow(const SuiteOptions& o);       // flow invariants
SuiteReport suite_lemma(const SuiteOptions& o);      // energy derivative formula gate
SuiteReport suite_theorem(const SuiteOptions& o, std::optional<double> alpha = std::nullopt);

std::vector<std::string> suite_names();
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& o);

std::string suite_json(const std::vector<SuiteReport>& reports, const SuiteOptions& o);
std::string identity_report_json(const IdentityReport& r);

// Energy CSV with a leading '#' comment block carrying the config echo.
void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& rows, const RunConfig& cfg);

struct TrajectoryRow {
    long step;
    double time, mass, min_u, max_u;
};
void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows, const RunConfig& cfg);

struct RunOutcome {
    int exit_code = 0;
    std::string diagnostic;  // first violated invariant, empty if none
    MonotonicityVerdict verdict;
};

std::string verdict_json(const RunConfig& cfg, const RunOutcome& out, std::size_t records);

// evolve + energy monitor; writes energy.csv, trajectory.csv, verdict.json and optional snapshots.
RunOutcome cmd_run(const RunConfig& cfg);

}  // namespace qcheat
