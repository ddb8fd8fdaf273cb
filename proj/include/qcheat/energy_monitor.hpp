#pragma once

#include "qcheat/heat_flow.hpp"
#include "qcheat/identities.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcheat {

// int |grad phi|^2 u with phi = -ln u.
double energy(const ScalarField& u);
// Exact derivative of the discrete energy along du/dt = -Delta u.
double energy_flow_derivative(const ScalarField& u);

struct DerfCoefficients {
    double laplacian = 0, quartic = 0, pfunctional = 0, L = 0, p = 0;
};
DerfCoefficients derf_coefficients(int n, double alpha);

struct EnergyReport {
    double time = 0.0;
    double energy = 0.0;
    std::optional<double> dF_dt_numeric;
    double dF_dt_analytic = 0.0;
    double term_laplacian = 0, term_quartic = 0, term_pfunctional = 0, term_L = 0, term_p = 0;
    double p_functional_value = 0.0;
    double p_functional_tolerance = 0.0;
    double min_pF = 0.0;
    double dF_dt_exact = 0.0;  // semi-discrete derivative, diagnostic

    double terms_sum() const { return term_laplacian + term_quartic + term_pfunctional + term_L + term_p; }
};

EnergyReport derf_rhs(const ScalarField& u, double alpha, const TorsionData& td, const DerfCoefficients& c);
EnergyReport derf_rhs(const ScalarField& u, double alpha);
EnergyReport derf_from_integrals(const PowerIntegrals& pi, double alpha, const DerfCoefficients& c);

// Centred energy difference across records k-1, k+1 against the derf right-hand side at k.
IdentityReport lemma_residual(const std::vector<FlowState>& traj, std::size_t k, double alpha);
IdentityReport lemma_residual(const std::vector<FlowState>& traj, std::size_t k, double alpha,
                              const DerfCoefficients& c);

struct MonotonicityVerdict {
    double alpha = 0.0;
    bool alpha_admissible = false;
    bool L_nonneg = false;
    double k0 = 0.0;
    bool p_function_nonneg = false;
    bool energy_monotone = false;
    bool terms_nonpositive = false;
    double eps_mono = 0.0;
    std::optional<double> counterexample_time;
    std::vector<EnergyReport> records;

    bool hypotheses_met() const { return alpha_admissible && L_nonneg && p_function_nonneg; }
    // "pass", "fail", "not applicable" (alpha outside the interval) or "hypothesis not met".
    std::string gate() const;
};

MonotonicityVerdict monotonicity_verdict(const std::vector<FlowState>& traj, double alpha);
// Same verdict from per-record reports (time, energy and terms filled in).
MonotonicityVerdict verdict_from_reports(std::vector<EnergyReport> records, double alpha, int n);

}  // namespace qcheat
