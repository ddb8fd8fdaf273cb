#pragma once

#include "qcheat/heisenberg_model.hpp"
#include "qcheat/invariant_algebra.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcheat {

enum class IdentityName {
    ricci2,
    ricci_mixed,
    bochner,
    gr4,
    intform,
    deriv2,
    deriv3,
    firstt,
    secondt,
    deriv5,
    intform1,
    deriv6,
    reprtor,
    lastrep,
    derf,
    hesrep_contraction,
};

const std::vector<IdentityName>& all_identities();
std::string to_string(IdentityName name);
IdentityName identity_from_string(const std::string& s);
// Tags whose input is u (with F = u^alpha); the others take the test function f itself.
bool identity_uses_alpha(IdentityName name);

struct IdentityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double norm_scale = 1e-30;
    int n = 0;
    int m_x = 0;
    double h_x = 0.0;
    double h_t = 0.0;
    std::vector<std::pair<std::string, double>> terms;
    std::optional<double> min_pF;

    double relative_residual() const { return residual / norm_scale; }
};

// Fills residual and norm_scale from lhs, rhs and the listed terms.
void finalize_report(IdentityReport& r, const LatticeGrid& grid);

// Integrals in F = u^alpha, f = u^{1/2}, with A = F^{1/a-2}, B = F^{1/a-3}, C = F^{1/a-4}.
struct PowerIntegrals {
    double alpha = 0.0;
    int n = 0;
    double a_lap2 = 0;      // A (Delta F)^2
    double b_lap_g2 = 0;    // B Delta F |grad F|^2
    double c_g4 = 0;        // C |grad F|^4
    double a_gradlap = 0;   // A g(grad Delta F, grad F)
    double a_lapg2 = 0;     // A Delta |grad F|^2
    double a_mixed = 0;     // A sum_s grad^2 F(xi_s, I_s grad F)
    double a_xi2 = 0;       // A sum_s (xi_s F)^2
    double a_tors = 0;      // A sum_s T(xi_s, I_s grad F, grad F)
    double a_hess2 = 0;     // A |grad^2 F|^2
    double a_S = 0;         // A S |grad F|^2
    double a_T0 = 0;        // A T0(grad F, grad F)
    double a_U = 0;         // A U(grad F, grad F)
    double a_Q2 = 0;        // A sum_s g(grad^2 F, omega_s)^2
    double a_p = 0;         // A p(F)
    double a_L = 0;         // A L(grad F, grad F)
    double pair_f = 0;      // P_f(grad f), f = u^{1/2}
    double f_lap2 = 0;      // (Delta f)^2
    double phi_bracket = 0; // u [-2 (Delta phi)^2 - 3 Delta phi |grad phi|^2 - |grad phi|^4]
    double min_pF = 0;
    double max_hess2 = 0;   // sup |grad^2 F|^2
};

PowerIntegrals power_integrals(const ScalarField& u, double alpha, const TorsionData& td);
PowerIntegrals power_integrals(const ScalarField& u, double alpha);

void check_alpha(double alpha);
void check_positive(const ScalarField& u);

IdentityReport identity_residual(IdentityName name, const ScalarField& f_or_u, double alpha = -0.05);
IdentityReport identity_from_integrals(IdentityName name, const PowerIntegrals& pi, const LatticeGrid& grid,
                                       double energy_derivative);

// Pointwise identities on a test function f.
IdentityReport ricci2_report(const ScalarField& f);
IdentityReport ricci_contraction_report(const ScalarField& f);
IdentityReport ricci_mixed_report(const ScalarField& f);
IdentityReport bochner_residual(const ScalarField& f);
IdentityReport gr4_report(const ScalarField& f);
IdentityReport intform_report(const ScalarField& f);

}  // namespace qcheat
