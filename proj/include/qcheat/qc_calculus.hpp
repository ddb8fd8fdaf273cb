#pragma once

#include "qcheat/heisenberg_model.hpp"
#include "qcheat/invariant_algebra.hpp"

#include <array>
#include <vector>

namespace qcheat {

// Centred group difference along e_a: [f(g*(h e_a)) - f(g*(-h e_a))] / (2h).
ScalarField frame_derivative(const ScalarField& f, int a);
HorizontalField grad_h(const ScalarField& f);
// Entries (a, b) = X_a X_b f stored at index a * 4n + b. Memory heavy; prefer hessian_summary.
std::vector<ScalarField> hessian_h(const ScalarField& f);
// Positive sub-Laplacian -sum_a X_a X_a f (composed centred differences).
ScalarField sub_laplacian(const ScalarField& f);
// xi_s f, s = 0..2.
ScalarField reeb_derivative(const ScalarField& f, int s);

// Pointwise Hessian invariants without materialising all entries.
struct HessianSummary {
    ScalarField norm2;                     // |H|^2
    ScalarField trace;                     // sum_a H_aa = -Delta f
    std::array<ScalarField, 3> omega_pair; // g(H, omega_s)
};
HessianSummary hessian_summary(const ScalarField& f);

// p(F) = |H|^2 - (tr H)^2/(4n) - sum_s g(H, omega_s)^2/(4n).
ScalarField p_function_field(const HessianSummary& hs, int n);

struct ThirdContractions {
    HorizontalField c1;  // sum_b X_a X_b X_b f
    HorizontalField c2;  // sum_t sum_b (I_t e_a)(e_b)(I_t e_b) f
};
ThirdContractions third_contractions(const ScalarField& f);

// Frame-constant torsion data; the lattice model carries the zero instance.
HorizontalField p_form(const ScalarField& f, const TorsionData& td);
HorizontalField p_form(const ScalarField& f);
double p_pairing(const HorizontalField& P, const HorizontalField& grad);
double p_functional(const ScalarField& f);
ScalarField c_operator(const ScalarField& f);

// -sum_a X_a sigma_a; integrates to zero.
ScalarField divergence(const HorizontalField& sigma);

// sum_s grad^2 f(xi_s, I_s grad f) computed as sum_s sum_c (I_s grad f)_c xi_s(X_c f).
ScalarField mixed_reeb_term(const ScalarField& f, const HorizontalField& grad);

// Pointwise helpers.
ScalarField squared_norm(const HorizontalField& v);
ScalarField inner(const HorizontalField& v, const HorizontalField& w);
// sum_ab v_a K_ab w_b for a constant matrix K.
ScalarField bilinear(const HorizontalField& v, const Mat& K, const HorizontalField& w);
double l2_norm(const ScalarField& f);

}  // namespace qcheat
