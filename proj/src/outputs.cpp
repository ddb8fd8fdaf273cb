#include "qcheat/reporting.hpp"

#include <json.hpp>

#include <cmath>
#include <ostream>

namespace qcheat {

namespace {

using ojson = nlohmann::ordered_json;

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

void write_echo(std::ostream& os, const RunConfig& cfg) {
    for (const auto& [k, v] : cfg.echo()) os << "# " << k << '=' << v << '\n';
}

ojson echo_json(const RunConfig& cfg) {
    ojson j = ojson::object();
    for (const auto& [k, v] : cfg.echo()) j[k] = v;
    return j;
}

}  // namespace

bool SuiteReport::passed() const {
    for (const Check& c : checks)
        if (!c.informational && !c.pass) return false;
    return true;
}

std::string identity_report_json(const IdentityReport& r) {
    ojson j;
    j["name"] = r.name;
    j["lhs"] = num(r.lhs);
    j["rhs"] = num(r.rhs);
    j["residual"] = num(r.residual);
    j["norm_scale"] = num(r.norm_scale);
    j["relative_residual"] = num(r.relative_residual());
    j["n"] = r.n;
    j["m_x"] = r.m_x;
    j["h_x"] = num(r.h_x);
    j["h_t"] = num(r.h_t);
    ojson terms = ojson::object();
    for (const auto& [k, v] : r.terms) terms[k] = num(v);
    j["terms"] = terms;
    if (r.min_pF) j["min_pF"] = num(*r.min_pF);
    return j.dump(2);
}

std::string suite_json(const std::vector<SuiteReport>& reports, const SuiteOptions& o) {
    ojson j;
    j["format"] = kFormatVersion;
    j["seed"] = o.seed;
    if (o.m_x) j["m_x"] = *o.m_x;
    bool all = true;
    ojson suites = ojson::array();
    for (const SuiteReport& s : reports) {
        ojson js;
        js["suite"] = s.suite;
        js["pass"] = s.passed();
        all = all && s.passed();
        ojson checks = ojson::array();
        for (const Check& c : s.checks) {
            ojson jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            jc["value"] = num(c.value);
            jc["threshold"] = num(c.threshold);
            if (c.informational) jc["informational"] = true;
            if (!c.detail.empty()) jc["detail"] = c.detail;
            checks.push_back(jc);
        }
        js["checks"] = checks;
        suites.push_back(js);
    }
    j["pass"] = all;
    j["suites"] = suites;
    return j.dump(2) + "\n";
}

void write_energy_csv(std::ostream& os, const std::vector<EnergyReport>& rows, const RunConfig& cfg) {
    write_echo(os, cfg);
    os << "time,energy,dF_dt_numeric,dF_dt_analytic,term_laplacian,term_quartic,term_pfunctional,term_L,term_p,"
          "p_functional,min_pF\n";
    for (const EnergyReport& r : rows) {
        os << format_double(r.time) << ',' << format_double(r.energy) << ','
           << (r.dF_dt_numeric ? format_double(*r.dF_dt_numeric) : std::string()) << ','
           << format_double(r.dF_dt_analytic) << ',' << format_double(r.term_laplacian) << ','
           << format_double(r.term_quartic) << ',' << format_double(r.term_pfunctional) << ','
           << format_double(r.term_L) << ',' << format_double(r.term_p) << ',' << format_double(r.p_functional_value)
           << ',' << format_double(r.min_pF) << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const std::vector<TrajectoryRow>& rows, const RunConfig& cfg) {
    write_echo(os, cfg);
    os << "step,time,mass,min_u,max_u\n";
    for (const TrajectoryRow& r : rows)
        os << r.step << ',' << format_double(r.time) << ',' << format_double(r.mass) << ','
           << format_double(r.min_u) << ',' << format_double(r.max_u) << '\n';
}

std::string verdict_json(const RunConfig& cfg, const RunOutcome& out, std::size_t records) {
    const MonotonicityVerdict& v = out.verdict;
    ojson j;
    j["format"] = kFormatVersion;
    j["config"] = echo_json(cfg);
    const auto iv = alpha_interval(cfg.n);
    j["alpha"] = num(cfg.alpha);
    j["alpha_interval"] = ojson::array({num(iv.first), num(iv.second)});
    j["records"] = records;
    if (records >= 3) {
        j["alpha_admissible"] = v.alpha_admissible;
        j["L_nonneg"] = v.L_nonneg;
        j["k0"] = num(v.k0);
        j["p_function_nonneg"] = v.p_function_nonneg;
        j["energy_monotone"] = v.energy_monotone;
        j["terms_nonpositive"] = v.terms_nonpositive;
        j["eps_mono"] = num(v.eps_mono);
        j["counterexample_time"] = v.counterexample_time ? num(*v.counterexample_time) : ojson(nullptr);
        j["hypotheses_met"] = v.hypotheses_met();
        j["gate"] = v.gate();
    } else {
        j["gate"] = "not evaluated";
    }
    j["exit_code"] = out.exit_code;
    j["diagnostic"] = out.diagnostic;
    return j.dump(2) + "\n";
}

}  // namespace qcheat
