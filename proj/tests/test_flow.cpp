#include "qcheat/heat_flow.hpp"
#include "qcheat/qc_calculus.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cstring>

using namespace qcheat;
using qtest::Torus;

namespace {

double dev_from(const ScalarField& u, double mean) {
    double d = 0.0;
    for (double v : u.values) d = std::max(d, std::abs(v - mean));
    return d;
}

FlowConfig short_flow(double t_end, int record_every = 1) {
    FlowConfig c;
    c.t_end = t_end;
    c.record_every = record_every;
    c.initial = default_bump(1);
    return c;
}

}  // namespace

TEST_CASE("CFL timestep") {
    const LatticeGrid g8(1, 8), g4(1, 4);
    CHECK(cfl_timestep(g8, 1.0) == doctest::Approx(1.0 / 1024.0).epsilon(1e-15));
    CHECK(cfl_timestep(g4, 1.0) == doctest::Approx(4.0 * cfl_timestep(g8, 1.0)).epsilon(1e-15));
    CHECK(cfl_timestep(LatticeGrid(2, 3), 0.5) == doctest::Approx(0.5 / 9.0 / 32.0));
    CHECK_THROWS_AS(cfl_timestep(g8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cfl_timestep(g8, 1.5), std::invalid_argument);
}

TEST_CASE("heat step") {
    GridPtr g = make_grid(1, 4);
    const double dt = cfl_timestep(*g, 1.0);
    const ScalarField c(g, 0.7);
    const ScalarField c1 = heat_step(c, dt);
    CHECK(std::memcmp(c1.data(), c.data(), c.size() * sizeof(double)) == 0);
    CHECK_THROWS_AS(heat_step(c, 1.01 * dt), std::invalid_argument);
    CHECK_THROWS_AS(heat_step(c, 0.0), std::invalid_argument);
    ScalarField neg = c;
    neg[3] = 0.0;
    CHECK_THROWS_AS(heat_step(neg, dt), std::domain_error);

    const ScalarField u = periodized_bump(g, default_bump(1));
    const double mass = integrate(u), mean = mass / g->total_volume();
    const ScalarField v = heat_step(u, dt);
    CHECK(dev_from(v, mean) < dev_from(u, mean));
    CHECK(std::abs(integrate(v) - mass) <= 1e-12 * mass);
    CHECK(v.min() >= u.min());
    CHECK(v.max() <= u.max());

    const ScalarField w = heun_step(u, dt);
    CHECK(std::abs(integrate(w) - mass) <= 1e-12 * mass);
    CHECK(w.min() >= u.min() - 1e-12);
    CHECK(w.max() <= u.max() + 1e-12);

    // One step is u - dt * Delta u.
    const ScalarField lap = sub_laplacian(u);
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::abs(v[i] - (u[i] - dt * lap[i])));
    CHECK(e < 1e-14);
}

TEST_CASE("evolve records and determinism") {
    GridPtr g = make_grid(1, 4);
    FlowConfig none = short_flow(0.0);
    const auto one = evolve(g, none);
    REQUIRE(one.size() == 1);
    CHECK(one[0].step == 0);
    CHECK(qtest::max_diff(one[0].u, periodized_bump(g, none.initial)) == 0.0);

    const double dt = cfl_timestep(*g, 1.0);
    FlowConfig cfg = short_flow(12 * dt, 3);
    const auto a = evolve(g, cfg), b = evolve(g, cfg);
    REQUIRE(a.size() == 5);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].step == static_cast<long>(3 * k));
        CHECK(a[k].time == doctest::Approx(3 * k * dt));
        CHECK(std::memcmp(a[k].u.data(), b[k].u.data(), a[k].u.size() * sizeof(double)) == 0);
    }

    FlowConfig bad = short_flow(dt);
    bad.initial.amplitude = 1.0;
    CHECK_THROWS_AS(evolve(g, bad), std::invalid_argument);
    FlowConfig bad_alpha = short_flow(dt);
    bad_alpha.alpha = 0.5;
    CHECK_THROWS_AS(evolve(g, bad_alpha), std::invalid_argument);
    FlowConfig bad_dt = short_flow(dt);
    bad_dt.dt = 2.0 * dt;
    CHECK_THROWS_AS(evolve(g, bad_dt), std::invalid_argument);
    FlowConfig bad_rec = short_flow(dt, 0);
    CHECK_THROWS_AS(evolve(g, bad_rec), std::invalid_argument);
}

TEST_CASE("effective timestep divides t_end") {
    const LatticeGrid g(1, 4);
    FlowConfig c;
    c.t_end = 0.01;
    long steps = 0;
    const double dt = effective_timestep(g, c, &steps);
    CHECK(dt <= cfl_timestep(g, 1.0));
    CHECK(steps * dt == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("long run decays to the mean on odd grids") {
    GridPtr g = make_grid(1, 5);
    const ScalarField u0 = periodized_bump(g, default_bump(1));
    const double mean = integrate(u0) / g->total_volume();
    const FlowConfig cfg = short_flow(1.0);
    ScalarField u = u0;
    evolve(u0, cfg, [&](const FlowState& s) { u = s.u; });
    CHECK(dev_from(u, mean) / mean < 1e-3);
    CHECK(std::abs(integrate(u) - integrate(u0)) <= 1e-12 * integrate(u0));
}

TEST_CASE("flow is affine in the initial data") {
    GridPtr g = make_grid(1, 4);
    const ScalarField u0 = periodized_bump(g, default_bump(1));
    ScalarField v0(g, 0.0);
    for (std::size_t i = 0; i < u0.size(); ++i) v0[i] = 2.0 * u0[i] + 0.5;
    FlowConfig cfg = short_flow(20 * cfl_timestep(*g, 1.0), 20);
    const auto a = evolve(u0, cfg), b = evolve(v0, cfg);
    double e = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) e = std::max(e, std::abs(b.back().u[i] - (2.0 * a.back().u[i] + 0.5)));
    CHECK(e < 1e-12);
}

TEST_CASE("variable transforms") {
    GridPtr g = make_grid(1, 3);
    const ScalarField one(g, 1.0);
    CHECK(qtest::max_abs(phi_of(one).values) == 0.0);
    CHECK(F_of(one, -0.05).min() == 1.0);
    CHECK(F_of(one, -0.05).max() == 1.0);

    const ScalarField u = periodized_bump(g, default_bump(1));
    const ScalarField back1 = u_from_phi(phi_of(u)), back2 = u_from_F(F_of(u, -0.05), -0.05);
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(std::abs(back1[i] - u[i]) <= 1e-12 * u[i]);
        CHECK(std::abs(back2[i] - u[i]) <= 1e-12 * u[i]);
    }
    ScalarField bad = u;
    bad[0] = -1.0;
    CHECK_THROWS_AS(phi_of(bad), std::domain_error);
    CHECK_THROWS_AS(F_of(u, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(F_of(u, 0.5), std::invalid_argument);
}

// Torus residuals of |grad phi|^2 = a^-2 F^-2 |grad F|^2 and
// Delta phi + a^-1 (F^-2 |grad F|^2 + F^-1 Delta F) = 0 for x-only data.
TEST_CASE("transform identities converge") {
    const double alpha = -0.05;
    auto residuals = [&](const Torus& T, const std::vector<double>& u) {
        std::vector<double> phi(u.size()), F(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            phi[i] = -std::log(u[i]);
            F[i] = std::pow(u[i], alpha);
        }
        std::vector<double> gp(u.size(), 0.0), gF(u.size(), 0.0), lp(u.size(), 0.0), lF(u.size(), 0.0);
        for (int a = 0; a < T.d; ++a) {
            const auto dp = T.D(phi, a), dF = T.D(F, a), ddp = T.D(dp, a), ddF = T.D(dF, a);
            for (std::size_t i = 0; i < u.size(); ++i) {
                gp[i] += dp[i] * dp[i];
                gF[i] += dF[i] * dF[i];
                lp[i] -= ddp[i];
                lF[i] -= ddF[i];
            }
        }
        double r1 = 0, s1 = 0, r2 = 0, s2 = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            r1 = std::max(r1, std::abs(gp[i] - gF[i] / (alpha * alpha * F[i] * F[i])));
            s1 = std::max(s1, gp[i]);
            r2 = std::max(r2, std::abs(lp[i] + (gF[i] / (F[i] * F[i]) + lF[i] / F[i]) / alpha));
            s2 = std::max(s2, std::abs(lp[i]));
        }
        return std::pair{r1 / s1, r2 / s2};
    };

    // The lattice operators on x-only data are the torus ones.
    GridPtr g = make_grid(1, 4);
    const ScalarField u = qtest::sample_x(g, qtest::trig_x);
    const ScalarField phi = phi_of(u), F = F_of(u, alpha);
    const ScalarField gp = squared_norm(grad_h(phi)), gF = squared_norm(grad_h(F));
    const Torus T4{4, 4, 0.25};
    const auto ut = T4.sample(qtest::trig_x);
    double r1 = 0, s1 = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        r1 = std::max(r1, std::abs(gp[i] - gF[i] / (alpha * alpha * F[i] * F[i])));
        s1 = std::max(s1, gp[i]);
    }
    CHECK(r1 / s1 == doctest::Approx(residuals(T4, ut).first).epsilon(1e-8));

    std::pair<double, double> prev{0, 0};
    for (int m : {8, 16, 32}) {
        const Torus T{4, m, 1.0 / m};
        const auto r = residuals(T, T.sample(qtest::trig_x));
        MESSAGE("m=" << m << " gradient identity " << r.first << ", laplacian identity " << r.second);
        if (prev.first > 0) {
            CHECK(prev.first / r.first >= 3.0);
            CHECK(prev.first / r.first <= 5.0);
            CHECK(prev.second / r.second > 1.8);
        }
        prev = r;
    }
}
