#include "qcheat/energy_monitor.hpp"

#include "qcheat/qc_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcheat {

double energy(const ScalarField& u) {
    check_positive(u);
    const ScalarField phi = phi_of(u);
    return integrate_product(squared_norm(grad_h(phi)), u);
}

// E(u) = sum_a int (X_a psi)^2 u with psi = -ln u; derivative in direction v = -Delta u:
// sum_a int [2 u X_a psi X_a(Delta u / u) - (X_a psi)^2 Delta u].
double energy_flow_derivative(const ScalarField& u) {
    check_positive(u);
    const ScalarField phi = phi_of(u);
    const ScalarField lap = sub_laplacian(u);
    ScalarField ratio(u.grid, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) ratio[i] = lap[i] / u[i];
    const HorizontalField gp = grad_h(phi);
    const HorizontalField gr = grad_h(ratio);
    ScalarField integrand(u.grid, 0.0);
    for (std::size_t a = 0; a < gp.comp.size(); ++a)
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double p = gp.comp[a][i];
            integrand[i] += 2.0 * u[i] * p * gr.comp[a][i] - p * p * lap[i];
        }
    return integrate(integrand);
}

DerfCoefficients derf_coefficients(int n, double alpha) {
    check_alpha(alpha);
    const double a = alpha, nn = n;
    const double om = 1.0 - 2.0 * a;
    DerfCoefficients c;
    c.laplacian = 4.0 * a / (3.0 * om);
    c.quartic = h_polynomial(n, a) / (12.0 * (2.0 * nn + 1.0) * a * a);
    c.pfunctional = 4.0 * (3.0 - 4.0 * a) * a * a / ((2.0 * nn + 1.0) * om);
    c.L = -2.0 * nn * (3.0 - 4.0 * a) / (3.0 * (nn + 2.0) * om);
    c.p = -4.0 * nn * (3.0 - 4.0 * a) / (3.0 * (2.0 * nn + 1.0) * om);
    return c;
}

EnergyReport derf_from_integrals(const PowerIntegrals& pi, double alpha, const DerfCoefficients& c) {
    EnergyReport r;
    r.term_laplacian = c.laplacian * pi.a_lap2;
    r.term_quartic = c.quartic * pi.c_g4;
    r.term_pfunctional = c.pfunctional * pi.pair_f;
    r.term_L = c.L * pi.a_L;
    r.term_p = c.p * pi.a_p;
    r.dF_dt_analytic = r.terms_sum() / (alpha * alpha);
    r.p_functional_value = pi.pair_f;
    r.p_functional_tolerance = 1e-10 * pi.f_lap2;
    r.min_pF = pi.min_pF;
    return r;
}

EnergyReport derf_rhs(const ScalarField& u, double alpha, const TorsionData& td, const DerfCoefficients& c) {
    const PowerIntegrals pi = power_integrals(u, alpha, td);
    EnergyReport r = derf_from_integrals(pi, alpha, c);
    r.energy = energy(u);
    r.dF_dt_exact = energy_flow_derivative(u);
    return r;
}

EnergyReport derf_rhs(const ScalarField& u, double alpha) {
    return derf_rhs(u, alpha, model_torsion(*u.grid), derf_coefficients(u.grid->n(), alpha));
}

IdentityReport lemma_residual(const std::vector<FlowState>& traj, std::size_t k, double alpha) {
    if (traj.empty()) throw std::out_of_range("empty trajectory");
    return lemma_residual(traj, k, alpha, derf_coefficients(traj.front().u.grid->n(), alpha));
}

IdentityReport lemma_residual(const std::vector<FlowState>& traj, std::size_t k, double alpha,
                              const DerfCoefficients& c) {
    if (traj.size() < 3 || k < 1 || k + 1 >= traj.size())
        throw std::out_of_range("lemma residual needs records k-1, k, k+1");
    const FlowState& a = traj[k - 1];
    const FlowState& b = traj[k + 1];
    const LatticeGrid& grid = *traj[k].u.grid;
    const double slope = (energy(b.u) - energy(a.u)) / (b.time - a.time);
    const PowerIntegrals pi = power_integrals(traj[k].u, alpha);
    const EnergyReport er = derf_from_integrals(pi, alpha, c);
    IdentityReport r;
    r.name = "lemma";
    r.lhs = alpha * alpha * slope;
    r.rhs = er.terms_sum();
    r.terms = {{"laplacian", er.term_laplacian},
               {"quartic", er.term_quartic},
               {"pfunctional", er.term_pfunctional},
               {"L", er.term_L},
               {"p", er.term_p}};
    finalize_report(r, grid);
    r.min_pF = pi.min_pF;
    return r;
}

std::string MonotonicityVerdict::gate() const {
    if (!alpha_admissible) return "not applicable";
    if (!(L_nonneg && p_function_nonneg)) return "hypothesis not met";
    return energy_monotone && terms_nonpositive ? "pass" : "fail";
}

MonotonicityVerdict monotonicity_verdict(const std::vector<FlowState>& traj, double alpha) {
    if (traj.size() < 3) throw std::invalid_argument("monotonicity verdict needs at least 3 records");
    check_alpha(alpha);
    const LatticeGrid& grid = *traj.front().u.grid;
    const TorsionData td = model_torsion(grid);
    const DerfCoefficients c = derf_coefficients(grid.n(), alpha);
    std::vector<EnergyReport> records;
    for (const FlowState& st : traj) {
        EnergyReport r = derf_rhs(st.u, alpha, td, c);
        r.time = st.time;
        records.push_back(r);
    }
    return verdict_from_reports(std::move(records), alpha, grid.n());
}

MonotonicityVerdict verdict_from_reports(std::vector<EnergyReport> records, double alpha, int n) {
    if (records.size() < 3) throw std::invalid_argument("monotonicity verdict needs at least 3 records");
    check_alpha(alpha);
    MonotonicityVerdict v;
    v.alpha = alpha;
    const auto iv = alpha_interval(n);
    v.alpha_admissible = alpha >= iv.first && alpha < iv.second;

    const TorsionData td = zero_torsion(n);
    const auto q = make_quaternionic_structure(n);
    // L is frame-constant on the model: non-negative iff its matrix is positive semidefinite.
    const Eigen::SelfAdjointEigenSolver<Mat> es(lichnerowicz_matrix(td, q));
    v.k0 = 0.0;
    v.L_nonneg = es.eigenvalues().minCoeff() >= -1e-12;

    v.records = std::move(records);
    const std::size_t N = v.records.size();
    for (std::size_t k = 0; k < N; ++k) {
        const std::size_t lo = k == 0 ? 0 : k - 1, hi = k + 1 == N ? k : k + 1;
        v.records[k].dF_dt_numeric =
            (v.records[hi].energy - v.records[lo].energy) / (v.records[hi].time - v.records[lo].time);
    }
    v.eps_mono = std::max(1e-10, 1e-6 * std::abs(v.records.front().energy));
    v.p_function_nonneg = true;
    v.energy_monotone = true;
    v.terms_nonpositive = true;
    for (const EnergyReport& r : v.records) {
        if (r.p_functional_value > r.p_functional_tolerance) v.p_function_nonneg = false;
        if (*r.dF_dt_numeric > v.eps_mono) {
            if (v.energy_monotone) v.counterexample_time = r.time;
            v.energy_monotone = false;
        }
        for (double t : {r.term_laplacian, r.term_quartic, r.term_pfunctional, r.term_L, r.term_p})
            if (t > v.eps_mono) v.terms_nonpositive = false;
    }
    return v;
}

}  // namespace qcheat
