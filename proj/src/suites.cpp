#include "qcheat/identities.hpp"
#include "qcheat/qc_calculus.hpp"
#include "qcheat/reporting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qcheat {

namespace {

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Check le(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value <= threshold, value, threshold, std::move(detail), false};
}

Check ge(std::string name, double value, double threshold, std::string detail = {}) {
    return {std::move(name), value >= threshold, value, threshold, std::move(detail), false};
}

Check info(std::string name, double value, std::string detail = {}) {
    return {std::move(name), true, value, 0.0, std::move(detail), true};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int fine_mx(const SuiteOptions& o) {
    const int m = o.m_x.value_or(8);
    if (m < 4 || m % 2) throw std::invalid_argument("fine resolution must be even and >= 4");
    return m;
}

// Commutation sign pattern: +1 commutes, -1 anticommutes.
double pattern_residual(const Mat& P, const QuaternionicStructure& q, std::array<int, 3> sign) {
    double r = 0.0;
    for (int s = 0; s < 3; ++s) r = std::max(r, max_abs(q.I[s] * P - sign[s] * P * q.I[s]));
    return r;
}

}  // namespace

SuiteReport suite_algebra(const SuiteOptions& o) {
    Timer t;
    SuiteReport rep{"algebra", {}, 0.0};
    std::mt19937_64 rng(o.seed);
    constexpr int N = 500;
    double cas_sum = 0, cas_eig = 0, cas_idem = 0, four_sum = 0, four_pat = 0, four_link = 0;
    double propt = 0, condm = 0, represtor = 0, need1 = 0;
    for (int i = 0; i < N; ++i) {
        const auto q = make_quaternionic_structure(1 + i % 3);
        const int d = q.dim();
        const Mat psi = random_matrix(d, rng);
        const double sc = std::max(1.0, max_abs(psi));

        const CasimirParts cp = casimir_decompose(psi, q);
        cas_sum = std::max(cas_sum, max_abs(cp.three + cp.minus_one - psi) / sc);
        cas_eig = std::max({cas_eig, max_abs(casimir_apply(cp.three, q) - 3.0 * cp.three) / sc,
                            max_abs(casimir_apply(cp.minus_one, q) + cp.minus_one) / sc});
        const CasimirParts again = casimir_decompose(cp.three, q);
        cas_idem = std::max({cas_idem, max_abs(again.three - cp.three) / sc, max_abs(again.minus_one) / sc});

        const FourParts fp = four_part_decompose(psi, q);
        four_sum = std::max(four_sum, max_abs(fp.ppp + fp.pmm + fp.mpm + fp.mmp - psi) / sc);
        four_pat = std::max({four_pat, pattern_residual(fp.ppp, q, {1, 1, 1}) / sc,
                             pattern_residual(fp.pmm, q, {1, -1, -1}) / sc,
                             pattern_residual(fp.mpm, q, {-1, 1, -1}) / sc,
                             pattern_residual(fp.mmp, q, {-1, -1, 1}) / sc});
        four_link = std::max({four_link, max_abs(fp.ppp - cp.three) / sc,
                              max_abs(fp.pmm + fp.mpm + fp.mmp - cp.minus_one) / sc});

        const TorsionData td = random_torsion(q, rng);
        const double ts = std::max({1.0, max_abs(td.T0), max_abs(td.U), std::abs(td.S)});
        Mat four = td.T0;
        for (int s = 0; s < 3; ++s) four += q.I[s].transpose() * td.T0 * q.I[s];
        double p = max_abs(four);
        for (int s = 0; s < 3; ++s) p = std::max(p, max_abs(q.I[s].transpose() * td.U * q.I[s] - td.U));
        p = std::max({p, std::abs(td.T0.trace()), std::abs(td.U.trace())});
        if (q.n == 1) p = std::max(p, max_abs(td.U));
        propt = std::max(propt, p / ts);

        const Vec X = random_vector(d, rng), Y = random_vector(d, rng);
        const double vs = ts * std::max(1.0, X.squaredNorm() + Y.squaredNorm());
        const SidePair sp = represtor_combination(td, q, X);
        represtor = std::max(represtor, std::abs(sp.lhs - sp.rhs) / vs);

        for (int s = 0; s < 3; ++s) {
            // T(xi_s, I_s X, Y) = g(T_{xi_s} I_s X, Y) with T_{xi_s} = T0_{xi_s} + I_s U.
            const double oracle = Y.dot(((*td.T0_xi)[s] + q.I[s] * td.U) * (q.I[s] * X));
            need1 = std::max(need1, std::abs(torsion_contraction(td, q, s, X, Y) - oracle) / vs);
        }

        const auto q2 = make_quaternionic_structure(2 + i % 2);
        const TorsionData td2 = random_torsion(q2, rng);
        const Vec Z = random_vector(q2.dim(), rng);
        const double ts2 = std::max({1.0, max_abs(td2.T0), max_abs(td2.U), std::abs(td2.S)});
        const Mat L2 = lichnerowicz_matrix_via_ricci(td2, q2);
        condm = std::max({condm, max_abs(lichnerowicz_matrix(td2, q2) - L2) / ts2,
                          std::abs(lichnerowicz_form(td2, q2, Z) - Z.dot(L2 * Z)) / (ts2 * std::max(1.0, Z.squaredNorm()))});
    }
    const double tol = 1e-12;
    const std::string per = std::to_string(N) + " seeded instances";
    rep.add(le("casimir reassembly", cas_sum, tol, per));
    rep.add(le("casimir eigenvalues 3 and -1", cas_eig, tol, per));
    rep.add(le("casimir projector idempotency", cas_idem, tol, per));
    rep.add(le("four-part reassembly", four_sum, tol, per));
    rep.add(le("four-part commutation patterns", four_pat, tol, per));
    rep.add(le("four-part vs casimir parts", four_link, tol, per));
    rep.add(le("torsion symmetry properties", propt, tol, per));
    rep.add(le("lichnerowicz closed form vs ricci form (n=2,3)", condm, tol, per));
    rep.add(le("torsion representation lhs = rhs", represtor, tol, per));
    rep.add(le("torsion contraction vs per-Reeb oracle", need1, tol, per));
    rep.seconds = t.seconds();
    return rep;
}

SuiteReport suite_roots(const SuiteOptions& o) {
    Timer t;
    SuiteReport rep{"roots", {}, 0.0};
    double lo = -1.0, hi = 0.0;
    if (!(h_polynomial(1, lo) > 0.0 && h_polynomial(1, hi) < 0.0)) throw std::logic_error("bisection bracket");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h_polynomial(1, mid) > 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double closed = (13.0 - std::sqrt(313.0)) / 48.0;
    const double lower = alpha_interval(1).first;
    rep.add(le("interval endpoint vs bisection", std::abs(lower - root), 1e-10, "root " + fmt(root)));
    rep.add(le("interval endpoint vs closed form", std::abs(lower - closed), 1e-10));
    std::mt19937_64 rng(o.seed);
    for (int n = 1; n <= 3; ++n) {
        const auto iv = alpha_interval(n);
        std::uniform_real_distribution<double> u(iv.first, iv.second);
        double worst = -1e300;
        for (int k = 0; k < 1000; ++k) worst = std::max(worst, h_polynomial(n, u(rng)));
        rep.add(le("h_n <= 0 on interval samples, n=" + std::to_string(n), worst, 0.0, "1000 samples"));
    }
    rep.seconds = t.seconds();
    return rep;
}

SuiteReport suite_geometry(const SuiteOptions& o) {
    Timer t;
    SuiteReport rep{"geometry", {}, 0.0};
    GridPtr grid = make_grid(1, 3);
    const LatticeGrid& g = *grid;
    const int d = g.x_axes();
    const std::size_t N = g.size();

    // Real group product followed by lattice reduction must land on the indexed target.
    double off_grid = 0.0;
    long mismatches = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const auto idx = g.multi_index(i);
        const GroupPoint p = g.point(i);
        for (int a = 0; a < d; ++a)
            for (int dir : {1, -1}) {
                GroupPoint step = group_identity(1);
                step.x[a] = dir * g.h_x();
                GroupPoint r = group_multiply(p, step, 1);
                GroupPoint k = group_identity(1);
                for (int b = 0; b < d; ++b) k.x[b] = -std::floor(r.x[b] + 1e-12);
                r = group_multiply(k, r, 1);
                std::vector<int> expect(d + 3);
                for (int b = 0; b < d; ++b) {
                    const double v = r.x[b] / g.h_x();
                    off_grid = std::max(off_grid, std::abs(v - std::nearbyint(v)));
                    expect[b] = static_cast<int>(std::nearbyint(v)) % g.m_x();
                }
                for (int s = 0; s < 3; ++s) {
                    const double tt = r.t[s] - g.L_t() * std::floor(r.t[s] / g.L_t());
                    const double v = tt / g.h_t();
                    off_grid = std::max(off_grid, std::abs(v - std::nearbyint(v)));
                    expect[d + s] = static_cast<int>(std::nearbyint(v)) % g.m_t();
                }
                if (expect != g.horizontal_step_index(idx, a, dir)) ++mismatches;
            }
    }
    rep.add(le("steps land on grid points", off_grid, 1e-9, "max distance in index units"));
    rep.add(le("step table matches group product", static_cast<double>(mismatches), 0.0));

    long not_bijective = 0, no_roundtrip = 0;
    for (int a = 0; a < d; ++a) {
        std::vector<char> hit(N, 0);
        for (std::size_t i = 0; i < N; ++i) {
            const auto idx = g.multi_index(i);
            const auto fwd = g.horizontal_step_index(idx, a, 1);
            const std::size_t j = g.flat_index(fwd);
            if (hit[j]++) ++not_bijective;
            if (g.horizontal_step_index(fwd, a, -1) != idx) ++no_roundtrip;
        }
    }
    rep.add(le("step maps are bijective", static_cast<double>(not_bijective), 0.0));
    rep.add(le("forward then backward step is identity", static_cast<double>(no_roundtrip), 0.0));

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double div_worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        HorizontalField sigma(grid);
        double l1 = 0.0;
        for (auto& c : sigma.comp)
            for (double& v : c.values) {
                v = u(rng);
                l1 += std::abs(v);
            }
        l1 *= g.cell_volume();
        div_worst = std::max(div_worst, std::abs(integrate(divergence(sigma))) / l1);
    }
    rep.add(le("divergence integrates to zero", div_worst, 1e-12, "100 random fields, relative to L1 norm"));

    double sa_worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        ScalarField a(grid), b(grid);
        for (double& v : a.values) v = u(rng);
        for (double& v : b.values) v = u(rng);
        const ScalarField la = sub_laplacian(a), lb = sub_laplacian(b);
        const double scale = l2_norm(la) * l2_norm(b) + l2_norm(a) * l2_norm(lb);
        sa_worst = std::max(sa_worst, std::abs(integrate_product(la, b) - integrate_product(a, lb)) / scale);
    }
    rep.add(le("sub-Laplacian self-adjoint", sa_worst, 1e-12, "20 random pairs"));
    rep.seconds = t.seconds();
    return rep;
}

namespace {

struct CalculusLevel {
    double ricci2, contraction, bochner, gr4, intform, min_pF, eps;
};

CalculusLevel calculus_level(int m, double vertical_width, double alpha) {
    GridPtr grid = make_grid(1, m);
    BumpParams b = default_bump(1);
    b.vertical_width = vertical_width;
    const ScalarField u = periodized_bump(grid, b);
    CalculusLevel c{};
    c.ricci2 = ricci2_report(u).relative_residual();
    c.contraction = ricci_contraction_report(u).relative_residual();
    c.bochner = bochner_residual(u).relative_residual();
    c.gr4 = gr4_report(u).relative_residual();
    c.intform = intform_report(u).relative_residual();
    const PowerIntegrals pi = power_integrals(u, alpha);
    c.min_pF = pi.min_pF;
    c.eps = grid->h_x() * grid->h_x() * pi.max_hess2;
    return c;
}

}  // namespace

SuiteReport suite_calculus(const SuiteOptions& o) {
    Timer t;
    SuiteReport rep{"calculus", {}, 0.0};
    const int mf = fine_mx(o), mc = mf / 2;
    const double alpha = -0.05;
    const CalculusLevel c = calculus_level(mc, 0.3, alpha);
    const CalculusLevel f = calculus_level(mf, 0.3, alpha);
    const std::string lv = "m_x " + std::to_string(mc) + " -> " + std::to_string(mf);
    auto ratio = [](double a, double b) { return b > 0.0 ? a / b : (a > 0.0 ? INFINITY : 1.0); };
    auto pair = [](double a, double b) { return "relative residuals " + fmt(a) + " -> " + fmt(b); };

    {
        const double r = ratio(c.ricci2, f.ricci2);
        rep.add({"ricci identity order-2 ratio", r >= 3.0 && r <= 5.0, r, 3.0, lv + ", target [3,5], " + pair(c.ricci2, f.ricci2)});
    }
    {
        const double r = ratio(c.contraction, f.contraction);
        rep.add({"omega contraction ratio", r >= 3.0 && r <= 5.0, r, 3.0,
                 lv + ", target [3,5], " + pair(c.contraction, f.contraction)});
    }
    rep.add(ge("bochner ratio", ratio(c.bochner, f.bochner), 2.0, lv + ", " + pair(c.bochner, f.bochner)));
    {
        const double r = ratio(c.gr4, f.gr4);
        rep.add({"gr4 decreasing, ratio", f.gr4 < c.gr4 && r >= 2.0, r, 2.0, lv + ", " + pair(c.gr4, f.gr4)});
    }
    {
        const double r = ratio(c.intform, f.intform);
        rep.add({"intform decreasing, ratio", f.intform < c.intform && r >= 2.0, r, 2.0, lv + ", " + pair(c.intform, f.intform)});
    }
    rep.add(ge("min p(F) >= -eps, coarse", c.min_pF, -c.eps, "eps = h_x^2 max|H|^2"));
    rep.add(ge("min p(F) >= -eps, fine", f.min_pF, -f.eps, "eps = h_x^2 max|H|^2"));
    rep.add(ge("eps shrink factor", ratio(c.eps, f.eps), 2.0, "eps " + fmt(c.eps) + " -> " + fmt(f.eps)));

    // Same identities on vertically constant data, where the grid is in the asymptotic regime.
    const CalculusLevel xc = calculus_level(mc, 0.0, alpha);
    const CalculusLevel xf = calculus_level(mf, 0.0, alpha);
    rep.add(info("x-only bochner ratio", ratio(xc.bochner, xf.bochner), pair(xc.bochner, xf.bochner)));
    rep.add(info("x-only ricci2 residual", xf.ricci2));
    rep.add(info("x-only gr4 residual", xf.gr4));
    rep.add(info("x-only intform residual", xf.intform));
    rep.seconds = t.seconds();
    return rep;
}

SuiteReport suite_flow(const SuiteOptions& o) {
    Timer t;
    SuiteReport rep{"flow", {}, 0.0};
    const int m = o.m_x.value_or(8);
    GridPtr grid = make_grid(1, m);
    BumpParams b = default_bump(1);
    const ScalarField u0 = periodized_bump(grid, b);
    FlowConfig cfg;
    cfg.alpha = -0.05;
    cfg.cfl_safety = 1.0;
    const double dt = cfl_timestep(*grid, 1.0);
    cfg.dt = dt;
    cfg.t_end = 200 * dt;
    cfg.record_every = 1;

    const double mass0 = integrate(u0);
    double drift = 0.0;
    long expansions = 0, records = 0;
    double lo = u0.min(), hi = u0.max();
    ScalarField last;
    evolve(u0, cfg, [&](const FlowState& st) {
        ++records;
        drift = std::max(drift, std::abs(integrate(st.u) - mass0) / std::abs(mass0));
        const double l = st.u.min(), h = st.u.max();
        if (l < lo || h > hi) ++expansions;
        lo = l;
        hi = h;
        last = st.u;
    });
    rep.add(le("mass drift", drift, 1e-12, std::to_string(records - 1) + " Euler steps at m_x " + std::to_string(m)));
    rep.add(le("range expansions", static_cast<double>(expansions), 0.0, "checked after every step"));

    const double A = 2.0, B = 0.5;
    ScalarField v0(grid);
    for (std::size_t i = 0; i < v0.size(); ++i) v0[i] = A * u0[i] + B;
    ScalarField vlast;
    evolve(v0, cfg, [&](const FlowState& st) { vlast = st.u; });
    double lin = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < v0.size(); ++i) {
        lin = std::max(lin, std::abs(vlast[i] - (A * last[i] + B)));
        scale = std::max(scale, std::abs(A * last[i] + B));
    }
    rep.add(le("linearity", lin / scale, 1e-12, "evolve(2u+0.5) vs 2 evolve(u)+0.5"));

    ScalarField again;
    evolve(u0, cfg, [&](const FlowState& st) { again = st.u; });
    const bool same = std::memcmp(again.data(), last.data(), last.size() * sizeof(double)) == 0;
    double diff = 0.0;
    for (std::size_t i = 0; i < last.size(); ++i) diff = std::max(diff, std::abs(again[i] - last[i]));
    rep.add({"determinism (bit-identical)", same, diff, 0.0, "repeat run, max difference"});
    rep.seconds = t.seconds();
    return rep;
}

namespace {

constexpr double kLemmaTEnd = 3.0 / 256.0;
constexpr double kLemmaT = 2.0 / 256.0;

FlowConfig lemma_flow(double alpha) {
    FlowConfig cfg;
    cfg.alpha = alpha;
    cfg.integrator = Integrator::heun;
    cfg.cfl_safety = 0.5;
    cfg.t_end = kLemmaTEnd;
    cfg.record_every = 2;
    cfg.initial = default_bump(1);
    return cfg;
}

std::size_t record_at(const std::vector<FlowState>& traj, double t) {
    for (std::size_t k = 0; k < traj.size(); ++k)
        if (std::abs(traj[k].time - t) < 1e-12) return k;
    throw std::logic_error("no record at the lemma evaluation time");
}

}  // namespace

SuiteReport suite_lemma(const SuiteOptions& o) {
    Timer t;
    SuiteReport rep{"lemma", {}, 0.0};
    const int mf = fine_mx(o), mc = mf / 2;
    const double alpha = -0.05;
    const FlowConfig cfg = lemma_flow(alpha);

    const auto coarse = evolve(make_grid(1, mc), cfg);
    const IdentityReport rc = lemma_residual(coarse, record_at(coarse, kLemmaT), alpha);
    const auto fine = evolve(make_grid(1, mf), cfg);
    const std::size_t kf = record_at(fine, kLemmaT);
    const IdentityReport rf = lemma_residual(fine, kf, alpha);

    rep.add(le("lemma relative residual, fine", rf.relative_residual(), 2e-2,
               "m_x " + std::to_string(mf) + ", t = " + fmt(kLemmaT)));
    rep.add({"lemma residual decreases under refinement", rf.relative_residual() < rc.relative_residual(),
             rc.relative_residual() / rf.relative_residual(), 1.0,
             "relative residuals " + fmt(rc.relative_residual()) + " -> " + fmt(rf.relative_residual())});

    const DerfCoefficients base = derf_coefficients(1, alpha);
    const std::pair<const char*, double DerfCoefficients::*> coefs[] = {
        {"laplacian", &DerfCoefficients::laplacian}, {"quartic", &DerfCoefficients::quartic},
        {"pfunctional", &DerfCoefficients::pfunctional}, {"L", &DerfCoefficients::L}, {"p", &DerfCoefficients::p}};
    for (const auto& [name, field] : coefs) {
        DerfCoefficients c = base;
        c.*field *= 1.01;
        const double inflation = lemma_residual(fine, kf, alpha, c).relative_residual() / rf.relative_residual();
        rep.add(ge(std::string("mutation +1% ") + name + " coefficient inflation", inflation, 10.0));
    }
    rep.seconds = t.seconds();
    return rep;
}

namespace {

BumpParams theorem_bump(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto in = [&](double a, double b) { return a + (b - a) * u01(rng); };
    BumpParams b = default_bump(1);
    for (double& c : b.center_x) c = u01(rng);
    for (double& c : b.center_t) c = in(-0.5, 0.5);
    b.width = in(0.35, 0.48);
    b.vertical_width = in(0.2, 0.5);
    b.amplitude = in(0.2, 0.6);
    b.offset = 1.0;
    return b;
}

}  // namespace

SuiteReport suite_theorem(const SuiteOptions& o, std::optional<double> alpha_opt) {
    Timer t;
    SuiteReport rep{"theorem", {}, 0.0};
    const int m = o.m_x.value_or(8);
    const double alpha = alpha_opt.value_or(-0.05);
    check_alpha(alpha);
    GridPtr grid = make_grid(1, m);
    int pass = 0, fail = 0, not_met = 0, not_applicable = 0;
    for (std::uint64_t k = 0; k < 5; ++k) {
        FlowConfig cfg;
        cfg.alpha = alpha;
        cfg.cfl_safety = 1.0;
        cfg.t_end = 0.02;
        long steps = 0;
        effective_timestep(*grid, cfg, &steps);
        // Every 4 steps, but keep at least 3 records on coarse grids.
        cfg.record_every = static_cast<int>(std::clamp(steps / 2, 1L, 4L));
        cfg.initial = theorem_bump(o.seed + k);
        const MonotonicityVerdict v = monotonicity_verdict(evolve(grid, cfg), alpha);
        const std::string gate = v.gate();
        double worst = -INFINITY;
        for (const auto& r : v.records) worst = std::max(worst, *r.dF_dt_numeric);
        std::string detail = "gate " + gate + ", max dF/dt " + fmt(worst) + ", eps " + fmt(v.eps_mono) +
                             (v.p_function_nonneg ? "" : ", P-functional positive") +
                             (v.terms_nonpositive ? "" : ", a term is positive");
        if (gate == "pass") ++pass;
        else if (gate == "fail") ++fail;
        else if (gate == "hypothesis not met") ++not_met;
        else ++not_applicable;
        rep.add({"run seed " + std::to_string(o.seed + k), gate != "fail", worst, v.eps_mono, detail, gate != "pass" && gate != "fail"});
    }
    if (not_applicable == 5) {
        rep.add(info("theorem gate not applicable", alpha, "alpha outside the admissible interval"));
    } else {
        rep.add(le("hypothesis-met runs that fail", fail, 0.0));
        rep.add(ge("hypothesis-met monotone runs", pass, 3.0, std::to_string(not_met) + " runs with hypothesis not met"));
    }
    rep.seconds = t.seconds();
    return rep;
}

std::vector<std::string> suite_names() { return {"algebra", "geometry", "calculus", "flow", "lemma", "theorem", "all"}; }

std::vector<SuiteReport> run_suite(const std::string& name, const SuiteOptions& o) {
    std::vector<SuiteReport> out;
    const bool all = name == "all";
    if (all || name == "algebra") {
        out.push_back(suite_algebra(o));
        out.push_back(suite_roots(o));
    }
    if (all || name == "geometry") out.push_back(suite_geometry(o));
    if (all || name == "calculus") out.push_back(suite_calculus(o));
    if (all || name == "flow") out.push_back(suite_flow(o));
    if (all || name == "lemma") out.push_back(suite_lemma(o));
    if (all || name == "theorem") out.push_back(suite_theorem(o));
    if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
    return out;
}

}  // namespace qcheat
