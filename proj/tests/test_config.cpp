#include "qcheat/reporting.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qcheat;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string lookup(const RunConfig& c, const std::string& key) {
    for (const auto& [k, v] : c.echo())
        if (k == key) return v;
    return "<missing>";
}

}  // namespace

TEST_CASE("config parsing") {
    const RunConfig c = parse_config_text(
        "# comment\n"
        "n = 1\n"
        "m_x = 4   # trailing\n"
        "alpha = -0.07\n"
        "t_end = 0.005\n"
        "record_every = 3\n"
        "integrator = heun\n"
        "bump_center_x = 0.1, 0.2, 0.3, 0.4\n"
        "bump_amplitude = 0.3\n"
        "\n");
    CHECK(c.m_x == 4);
    CHECK(c.alpha == -0.07);
    CHECK(c.record_every == 3);
    CHECK(c.integrator == Integrator::heun);
    CHECK(c.bump_center_set);
    CHECK(c.bump.center_x == std::vector<double>{0.1, 0.2, 0.3, 0.4});
    CHECK(c.bump.amplitude == 0.3);

    CHECK_THROWS_AS(parse_config_text("colour = blue\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("m_x 4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("alpha = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("alpha = 0.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("m_x = 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("cfl_safety = 1.5\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("integrator = rk4\n"), std::invalid_argument);

    RunConfig bad = parse_config_text("bump_amplitude = 1.2\n");
    CHECK_THROWS_AS(finalize_config(bad), std::invalid_argument);
    RunConfig wrong_dim = parse_config_text("n = 2\nm_x = 3\nbump_center_x = 0.5, 0.5, 0.5, 0.5\n");
    CHECK_THROWS_AS(finalize_config(wrong_dim), std::invalid_argument);
}

TEST_CASE("config echo carries derived grid parameters") {
    RunConfig c = parse_config_text("m_x = 8\nt_end = 0.01\n");
    finalize_config(c);
    CHECK(lookup(c, "format") == kFormatVersion);
    CHECK(lookup(c, "m_t") == "8");
    CHECK(std::stod(lookup(c, "h_t")) == 2.0 / 64.0);
    CHECK(std::stod(lookup(c, "L_t")) == 0.25);
    CHECK(std::stod(lookup(c, "dt")) <= 1.0 / 1024.0);
    CHECK(std::stol(lookup(c, "steps")) == 11);
    CHECK(lookup(c, "bump_center_x") != "<missing>");
}

TEST_CASE("run writes deterministic artifacts") {
    const fs::path base = fs::temp_directory_path() / "qcheat_run_test";
    fs::remove_all(base);
    RunConfig c = parse_config_text("m_x = 4\nt_end = 0.02\nrecord_every = 1\n");
    c.out_dir = (base / "a").string();
    const RunOutcome a = cmd_run(c);
    CHECK(a.exit_code == 0);
    CHECK(a.diagnostic.empty());
    c.out_dir = (base / "b").string();
    const RunOutcome b = cmd_run(c);
    CHECK(b.exit_code == 0);
    for (const char* f : {"energy.csv", "trajectory.csv", "verdict.json"}) {
        CAPTURE(f);
        REQUIRE(fs::exists(base / "a" / f));
        CHECK(slurp(base / "a" / f) == slurp(base / "b" / f));
    }
    const std::string csv = slurp(base / "a" / "energy.csv");
    CHECK(csv.rfind("# format=", 0) == 0);
    CHECK(csv.find("time,energy,dF_dt_numeric,dF_dt_analytic") != std::string::npos);

    const auto v = nlohmann::json::parse(slurp(base / "a" / "verdict.json"));
    CHECK(v["format"] == kFormatVersion);
    CHECK(v["gate"] == "pass");
    CHECK(v["exit_code"] == 0);
    CHECK(v["hypotheses_met"] == true);

    RunConfig bad = c;
    bad.alpha = 0.5;
    CHECK_THROWS_AS(cmd_run(bad), std::invalid_argument);
    fs::remove_all(base);
}
