#include "qcheat/identities.hpp"
#include "qcheat/reporting.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcheat {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + " expects a number, got '" + v + "'");
    }
    if (pos != v.size() || !std::isfinite(x))
        throw std::invalid_argument("config: " + key + " expects a finite number, got '" + v + "'");
    return x;
}

long parse_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config: " + key + " expects an integer, got '" + v + "'");
    }
    if (pos != v.size()) throw std::invalid_argument("config: " + key + " expects an integer, got '" + v + "'");
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("config: " + key + " expects true/false, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw std::invalid_argument("config: " + key + " expects a comma-separated list");
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

FlowConfig RunConfig::flow() const {
    FlowConfig f;
    f.alpha = alpha;
    f.dt = dt;
    f.cfl_safety = cfl_safety;
    f.t_end = t_end;
    f.record_every = record_every;
    f.initial = bump;
    f.integrator = integrator;
    return f;
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    const LatticeGrid g(n, m_x);
    long steps = 0;
    const double dt_eff = effective_timestep(g, flow(), &steps);
    std::vector<std::pair<std::string, std::string>> e = {
        {"format", kFormatVersion},
        {"n", std::to_string(n)},
        {"m_x", std::to_string(m_x)},
        {"m_t", std::to_string(g.m_t())},
        {"h_x", format_double(g.h_x())},
        {"h_t", format_double(g.h_t())},
        {"L_t", format_double(g.L_t())},
        {"alpha", format_double(alpha)},
        {"cfl_safety", format_double(cfl_safety)},
        {"dt", format_double(dt_eff)},
        {"steps", std::to_string(steps)},
        {"t_end", format_double(t_end)},
        {"record_every", std::to_string(record_every)},
        {"integrator", to_string(integrator)},
        {"bump_center_x", join(bump.center_x)},
        {"bump_center_t", join({bump.center_t[0], bump.center_t[1], bump.center_t[2]})},
        {"bump_width", format_double(bump.width)},
        {"bump_vertical_width", format_double(bump.vertical_width)},
        {"bump_amplitude", format_double(bump.amplitude)},
        {"bump_offset", format_double(bump.offset)},
        {"seed", std::to_string(seed)},
        {"snapshots", snapshots ? "true" : "false"},
    };
    return e;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "n") {
        const long n = parse_int(key, v);
        if (n < 1 || n > 3) throw std::invalid_argument("config: n must be 1, 2 or 3");
        cfg.n = static_cast<int>(n);
    } else if (key == "m_x" || key == "mx") {
        const long m = parse_int(key, v);
        if (m < 3) throw std::invalid_argument("config: m_x must be >= 3");
        cfg.m_x = static_cast<int>(m);
    } else if (key == "alpha") {
        cfg.alpha = parse_double(key, v);
        check_alpha(cfg.alpha);
    } else if (key == "cfl_safety") {
        cfg.cfl_safety = parse_double(key, v);
        if (!(cfg.cfl_safety > 0.0) || cfg.cfl_safety > 1.0)
            throw std::invalid_argument("config: cfl_safety must lie in (0, 1]");
    } else if (key == "dt") {
        cfg.dt = parse_double(key, v);
        if (!(*cfg.dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    } else if (key == "t_end") {
        cfg.t_end = parse_double(key, v);
        if (cfg.t_end < 0.0) throw std::invalid_argument("config: t_end must be >= 0");
    } else if (key == "record_every") {
        const long r = parse_int(key, v);
        if (r < 1) throw std::invalid_argument("config: record_every must be >= 1");
        cfg.record_every = static_cast<int>(r);
    } else if (key == "integrator") {
        cfg.integrator = integrator_from_string(v);
    } else if (key == "bump_center_x") {
        cfg.bump.center_x = parse_list(key, v);
        cfg.bump_center_set = true;
    } else if (key == "bump_center_t") {
        const auto c = parse_list(key, v);
        if (c.size() != 3) throw std::invalid_argument("config: bump_center_t needs 3 values");
        cfg.bump.center_t = {c[0], c[1], c[2]};
    } else if (key == "bump_width") {
        cfg.bump.width = parse_double(key, v);
    } else if (key == "bump_vertical_width") {
        cfg.bump.vertical_width = parse_double(key, v);
    } else if (key == "bump_amplitude") {
        cfg.bump.amplitude = parse_double(key, v);
    } else if (key == "bump_offset") {
        cfg.bump.offset = parse_double(key, v);
    } else if (key == "suite") {
        cfg.suite = v;
    } else if (key == "out_dir" || key == "out") {
        cfg.out_dir = v;
    } else if (key == "seed") {
        const long s = parse_int(key, v);
        if (s < 0) throw std::invalid_argument("config: seed must be >= 0");
        cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "snapshots") {
        cfg.snapshots = parse_bool(key, v);
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
        apply_setting(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void finalize_config(RunConfig& cfg) {
    check_alpha(cfg.alpha);
    if (!cfg.bump_center_set) cfg.bump.center_x.assign(4 * cfg.n, 0.5);
    if (cfg.bump.center_x.size() != static_cast<std::size_t>(4 * cfg.n))
        throw std::invalid_argument("config: bump_center_x needs 4n = " + std::to_string(4 * cfg.n) + " values");
    if (!(cfg.bump.offset > cfg.bump.amplitude)) throw std::invalid_argument("config: bump_offset must exceed bump_amplitude");
    const LatticeGrid g(cfg.n, cfg.m_x);
    validate_bump(cfg.bump, g);
    effective_timestep(g, cfg.flow());
}

}  // namespace qcheat
