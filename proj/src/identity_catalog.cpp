#include "qcheat/identities.hpp"

#include "qcheat/energy_monitor.hpp"
#include "qcheat/heat_flow.hpp"
#include "qcheat/qc_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcheat {

namespace {

struct TagName {
    IdentityName id;
    const char* name;
    bool alpha;
};

const TagName kTags[] = {
    {IdentityName::ricci2, "ricci2", false},
    {IdentityName::ricci_mixed, "ricci_mixed", false},
    {IdentityName::bochner, "bochner", false},
    {IdentityName::gr4, "gr4", false},
    {IdentityName::intform, "intform", false},
    {IdentityName::deriv2, "deriv2", true},
    {IdentityName::deriv3, "deriv3", true},
    {IdentityName::firstt, "firstt", true},
    {IdentityName::secondt, "secondt", true},
    {IdentityName::deriv5, "deriv5", true},
    {IdentityName::intform1, "intform1", true},
    {IdentityName::deriv6, "deriv6", true},
    {IdentityName::reprtor, "reprtor", true},
    {IdentityName::lastrep, "lastrep", true},
    {IdentityName::derf, "derf", true},
    {IdentityName::hesrep_contraction, "hesrep_contraction", true},
};

ScalarField pointwise(const ScalarField& u, double (*fn)(double, double), double arg) {
    ScalarField out(u.grid, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = fn(u[i], arg);
    return out;
}

double weighted(const ScalarField& w, const ScalarField& f) { return integrate_product(w, f); }

ScalarField product(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

IdentityReport base_report(const std::string& name, const LatticeGrid& g) {
    IdentityReport r;
    r.name = name;
    r.n = g.n();
    r.m_x = g.m_x();
    r.h_x = g.h_x();
    r.h_t = g.h_t();
    return r;
}

// L2 comparison of two pointwise expressions.
IdentityReport field_report(const std::string& name, const std::vector<ScalarField>& lhs,
                            const std::vector<ScalarField>& rhs) {
    const LatticeGrid& g = *lhs.front().grid;
    IdentityReport r = base_report(name, g);
    double l = 0, rr = 0, d = 0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        ScalarField diff(lhs[k].grid, 0.0);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = lhs[k][i] - rhs[k][i];
        l += integrate_product(lhs[k], lhs[k]);
        rr += integrate_product(rhs[k], rhs[k]);
        d += integrate_product(diff, diff);
    }
    r.lhs = std::sqrt(std::max(l, 0.0));
    r.rhs = std::sqrt(std::max(rr, 0.0));
    r.residual = std::sqrt(std::max(d, 0.0));
    r.norm_scale = std::max({r.lhs, r.rhs, 1e-30});
    return r;
}

}  // namespace

const std::vector<IdentityName>& all_identities() {
    static const std::vector<IdentityName> v = [] {
        std::vector<IdentityName> out;
        for (const auto& t : kTags) out.push_back(t.id);
        return out;
    }();
    return v;
}

std::string to_string(IdentityName name) {
    for (const auto& t : kTags)
        if (t.id == name) return t.name;
    throw std::invalid_argument("unknown identity");
}

IdentityName identity_from_string(const std::string& s) {
    for (const auto& t : kTags)
        if (s == t.name) return t.id;
    throw std::invalid_argument("unknown identity tag: " + s);
}

bool identity_uses_alpha(IdentityName name) {
    for (const auto& t : kTags)
        if (t.id == name) return t.alpha;
    return false;
}

void finalize_report(IdentityReport& r, const LatticeGrid& grid) {
    r.n = grid.n();
    r.m_x = grid.m_x();
    r.h_x = grid.h_x();
    r.h_t = grid.h_t();
    r.residual = std::abs(r.lhs - r.rhs);
    double terms = 0.0;
    for (const auto& t : r.terms) terms += std::abs(t.second);
    r.norm_scale = std::max({std::abs(r.lhs), std::abs(r.rhs), terms, 1e-30});
}

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha == 0.0 || alpha == 0.5)
        throw std::invalid_argument("alpha must be finite and differ from 0 and 1/2");
}

void check_positive(const ScalarField& u) {
    for (double v : u.values)
        if (!(v > 0.0)) throw std::domain_error("field must be strictly positive");
}

PowerIntegrals power_integrals(const ScalarField& u, double alpha) {
    return power_integrals(u, alpha, model_torsion(*u.grid));
}

PowerIntegrals power_integrals(const ScalarField& u, double alpha, const TorsionData& td) {
    check_alpha(alpha);
    check_positive(u);
    const LatticeGrid& g = *u.grid;
    const int n = g.n();
    const auto q = make_quaternionic_structure(n);
    PowerIntegrals pi;
    pi.alpha = alpha;
    pi.n = n;

    const auto pw = [](double x, double e) { return std::pow(x, e); };
    const ScalarField F = F_of(u, alpha);
    const ScalarField A = pointwise(u, pw, 1.0 - 2.0 * alpha);
    const ScalarField B = pointwise(u, pw, 1.0 - 3.0 * alpha);
    const ScalarField C = pointwise(u, pw, 1.0 - 4.0 * alpha);

    const HorizontalField gF = grad_h(F);
    const ScalarField lapF = sub_laplacian(F);
    const ScalarField g2 = squared_norm(gF);

    pi.a_lap2 = weighted(A, product(lapF, lapF));
    pi.b_lap_g2 = weighted(B, product(lapF, g2));
    pi.c_g4 = weighted(C, product(g2, g2));
    pi.a_gradlap = weighted(A, inner(grad_h(lapF), gF));
    pi.a_lapg2 = weighted(A, sub_laplacian(g2));
    pi.a_mixed = weighted(A, mixed_reeb_term(F, gF));
    {
        ScalarField xi2(u.grid, 0.0);
        for (int s = 0; s < 3; ++s) {
            const ScalarField x = reeb_derivative(F, s);
            for (std::size_t i = 0; i < xi2.size(); ++i) xi2[i] += x[i] * x[i];
        }
        pi.a_xi2 = weighted(A, xi2);
    }
    {
        Mat K = Mat::Zero(q.dim(), q.dim());
        for (int s = 0; s < 3; ++s) K += torsion_contraction_matrix(td, q, s);
        pi.a_tors = weighted(A, bilinear(gF, K, gF));
    }
    pi.a_S = td.S * weighted(A, g2);
    pi.a_T0 = weighted(A, bilinear(gF, td.T0, gF));
    pi.a_U = weighted(A, bilinear(gF, td.U, gF));
    pi.a_L = weighted(A, bilinear(gF, lichnerowicz_matrix(td, q), gF));
    {
        const HessianSummary hs = hessian_summary(F);
        pi.a_hess2 = weighted(A, hs.norm2);
        ScalarField q2(u.grid, 0.0);
        for (int s = 0; s < 3; ++s)
            for (std::size_t i = 0; i < q2.size(); ++i) q2[i] += hs.omega_pair[s][i] * hs.omega_pair[s][i];
        pi.a_Q2 = weighted(A, q2);
        const ScalarField p = p_function_field(hs, n);
        pi.a_p = weighted(A, p);
        pi.min_pF = p.min();
        pi.max_hess2 = hs.norm2.max();
    }
    {
        ScalarField f = pointwise(u, pw, 0.5);
        pi.pair_f = p_pairing(p_form(f, td), grad_h(f));
        const ScalarField lf = sub_laplacian(f);
        pi.f_lap2 = integrate_product(lf, lf);
    }
    {
        const ScalarField phi = phi_of(u);
        const ScalarField lphi = sub_laplacian(phi);
        const ScalarField gp2 = squared_norm(grad_h(phi));
        ScalarField br(u.grid, 0.0);
        for (std::size_t i = 0; i < br.size(); ++i)
            br[i] = -2.0 * lphi[i] * lphi[i] - 3.0 * lphi[i] * gp2[i] - gp2[i] * gp2[i];
        pi.phi_bracket = weighted(u, br);
    }
    return pi;
}

IdentityReport identity_from_integrals(IdentityName name, const PowerIntegrals& pi, const LatticeGrid& grid,
                                       double energy_derivative) {
    const double a = pi.alpha;
    const double n = pi.n;
    const bool big = pi.n > 1;
    const double k1 = 1.0 / a - 2.0, k2 = 1.0 / a - 3.0, kh = 1.0 / (2.0 * a) - 1.0;
    IdentityReport r = base_report(to_string(name), grid);
    auto term = [&](const char* label, double v) {
        r.terms.emplace_back(label, v);
        return v;
    };
    switch (name) {
        case IdentityName::deriv2:
            r.lhs = term("alpha^2 * phi bracket", a * a * pi.phi_bracket);
            r.rhs = term("-2 A(DF)^2", -2.0 * pi.a_lap2) + term("B DF|gF|^2", (3.0 - 4.0 * a) / a * pi.b_lap_g2) +
                    term("C|gF|^4", (-1.0 + 3.0 * a - 2.0 * a * a) / (a * a) * pi.c_g4);
            break;
        case IdentityName::deriv3:
            r.lhs = term("A g(grad DF, gF)", pi.a_gradlap) + term("B DF|gF|^2", k1 * pi.b_lap_g2);
            r.rhs = term("A(DF)^2", pi.a_lap2);
            break;
        case IdentityName::firstt:
            r.lhs = term("A D|gF|^2", pi.a_lapg2);
            r.rhs = term("B DF|gF|^2", k1 * pi.b_lap_g2) + term("C|gF|^4", -k1 * k2 * pi.c_g4);
            break;
        case IdentityName::secondt:
            r.lhs = term("A mixed", pi.a_mixed);
            r.rhs = term("A xi^2", -4.0 * n * pi.a_xi2) + term("A torsion", -pi.a_tors);
            break;
        case IdentityName::deriv5: {
            r.lhs = term("B DF|gF|^2", 1.5 * k1 * pi.b_lap_g2);
            double rhs = term("C|gF|^4", 0.5 * k1 * k2 * pi.c_g4);
            rhs -= term("A|H|^2", pi.a_hess2);
            rhs -= term("A S", 2.0 * (n + 2) * pi.a_S);
            rhs -= term("A T0", 2.0 * n * pi.a_T0);
            rhs -= term("A U", 4.0 * (n + 4) * pi.a_U);
            rhs += term("A xi^2", 16.0 * n * pi.a_xi2);
            rhs += term("A(DF)^2", pi.a_lap2);
            r.rhs = rhs;
            break;
        }
        case IdentityName::intform1: {
            r.lhs = term("A xi^2", -4.0 * n * pi.a_xi2);
            double rhs = term("P pairing", -a * a / n * pi.pair_f);
            rhs += term("A(DF)^2", -pi.a_lap2 / (4.0 * n));
            rhs += term("B DF|gF|^2", kh / (2.0 * n) * pi.b_lap_g2);
            rhs += term("C|gF|^4", -kh * kh / (4.0 * n) * pi.c_g4);
            rhs += term("A torsion", -(pi.a_S - pi.a_T0 + (big ? 2.0 * (n - 2) / (n - 1) * pi.a_U : 0.0)));
            r.rhs = rhs;
            break;
        }
        case IdentityName::deriv6: {
            const double c = 2.0 * n * a / ((3.0 * n + 2.0) * (1.0 - 2.0 * a));
            r.lhs = term("B DF|gF|^2", pi.b_lap_g2);
            double rhs = term("P pairing", 8.0 * a * a * a / ((3.0 * n + 2.0) * (1.0 - 2.0 * a)) * pi.pair_f);
            rhs += term("C|gF|^4", (2.0 * n + 1.0 - 2.0 * (3.0 * n + 1.0) * a) / (2.0 * (3.0 * n + 2.0) * a) * pi.c_g4);
            rhs += term("A(DF)^2", (3.0 + 4.0 * n) * a / (2.0 * (3.0 * n + 2.0) * (1.0 - 2.0 * a)) * pi.a_lap2);
            rhs += term("A torsion", -c * (2.0 * n * pi.a_S + 2.0 * (n + 2) * pi.a_T0 +
                                          (big ? 4.0 * n * (n + 1) / (n - 1) * pi.a_U : 0.0)));
            rhs += term("A omega^2 + p", -c * (pi.a_Q2 / (4.0 * n) + pi.a_p));
            r.rhs = rhs;
            break;
        }
        case IdentityName::reprtor: {
            r.lhs = term("A torsion", -pi.a_S + pi.a_T0 - (big ? 2.0 * (n - 2) / (n - 1) * pi.a_U : 0.0));
            double rhs = term("A(DF)^2", pi.a_lap2 / (4.0 * n));
            rhs += term("B DF|gF|^2", -2.0 * kh * pi.b_lap_g2 / (4.0 * n));
            rhs += term("C|gF|^4", kh * kh * pi.c_g4 / (4.0 * n));
            rhs += term("P pairing", a * a / n * pi.pair_f);
            rhs += term("A omega^2", -pi.a_Q2 / (4.0 * n));
            r.rhs = rhs;
            break;
        }
        case IdentityName::lastrep: {
            const double om = 1.0 - 2.0 * a;
            r.lhs = term("B DF|gF|^2", 1.5 * (2.0 * n + 1.0) * pi.b_lap_g2);
            double rhs = term("C|gF|^4", (8.0 * n + 3.0 - 6.0 * (4.0 * n + 1.0) * a) / (8.0 * a) * pi.c_g4);
            rhs += term("A(DF)^2", (2.0 * n + 1.0) * a / om * pi.a_lap2);
            rhs += term("P pairing", 6.0 * a * a * a / om * pi.pair_f);
            rhs += term("A p", -2.0 * n * a / om * pi.a_p);
            rhs += term("A L", -n * (2.0 * n + 1.0) * a / ((n + 2.0) * om) * pi.a_L);
            r.rhs = rhs;
            break;
        }
        case IdentityName::derf: {
            const DerfCoefficients c = derf_coefficients(pi.n, a);
            r.lhs = term("alpha^2 dE/dt", a * a * energy_derivative);
            r.rhs = term("laplacian", c.laplacian * pi.a_lap2) + term("quartic", c.quartic * pi.c_g4) +
                    term("pfunctional", c.pfunctional * pi.pair_f) + term("L", c.L * pi.a_L) +
                    term("p", c.p * pi.a_p);
            break;
        }
        case IdentityName::hesrep_contraction: {
            finalize_report(r, grid);
            r.lhs = pi.min_pF;
            r.rhs = 0.0;
            r.residual = std::max(0.0, -pi.min_pF);
            r.norm_scale = std::max(pi.max_hess2, 1e-30);
            r.min_pF = pi.min_pF;
            return r;
        }
        default:
            throw std::invalid_argument("identity " + to_string(name) + " takes a test function, not u");
    }
    finalize_report(r, grid);
    r.min_pF = pi.min_pF;
    return r;
}

IdentityReport ricci2_report(const ScalarField& f) {
    const int d = f.grid->x_axes();
    const FrameData fd = frame_data(*f.grid);
    const auto H = hessian_h(f);
    std::array<ScalarField, 3> xi{reeb_derivative(f, 0), reeb_derivative(f, 1), reeb_derivative(f, 2)};
    std::vector<ScalarField> lhs, rhs;
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            ScalarField l(f.grid, 0.0), r(f.grid, 0.0);
            for (std::size_t i = 0; i < l.size(); ++i) {
                l[i] = H[a * d + b][i] - H[b * d + a][i];
                double v = 0.0;
                for (int s = 0; s < 3; ++s) v += fd.omega[s](a, b) * xi[s][i];
                r[i] = -2.0 * v;
            }
            lhs.push_back(std::move(l));
            rhs.push_back(std::move(r));
        }
    return field_report("ricci2", lhs, rhs);
}

IdentityReport ricci_contraction_report(const ScalarField& f) {
    const int n = f.grid->n();
    const HessianSummary hs = hessian_summary(f);
    std::vector<ScalarField> lhs, rhs;
    for (int s = 0; s < 3; ++s) {
        ScalarField r = reeb_derivative(f, s);
        for (double& v : r.values) v *= -4.0 * n;
        lhs.push_back(hs.omega_pair[s]);
        rhs.push_back(std::move(r));
    }
    return field_report("ricci2_contraction", lhs, rhs);
}

IdentityReport ricci_mixed_report(const ScalarField& f) {
    const int d = f.grid->x_axes();
    const HorizontalField gr = grad_h(f);
    std::vector<ScalarField> lhs, rhs;
    for (int s = 0; s < 3; ++s) {
        const ScalarField xs = reeb_derivative(f, s);
        for (int a = 0; a < d; ++a) {
            lhs.push_back(frame_derivative(xs, a));       // X_a (xi_s f)
            rhs.push_back(reeb_derivative(gr.comp[a], s)); // xi_s (X_a f), torsion zero on the model
        }
    }
    return field_report("ricci_mixed", lhs, rhs);
}

IdentityReport bochner_residual(const ScalarField& f) {
    const int n = f.grid->n();
    const auto q = make_quaternionic_structure(n);
    const TorsionData td = model_torsion(*f.grid);
    const HorizontalField gr = grad_h(f);
    const ScalarField g2 = squared_norm(gr);
    // -1/2 Delta |grad f|^2 with the positive sub-Laplacian.
    ScalarField lhs = sub_laplacian(g2);
    for (double& v : lhs.values) v *= -0.5;

    const HessianSummary hs = hessian_summary(f);
    const ScalarField lap = sub_laplacian(f);
    const ScalarField glg = inner(grad_h(lap), gr);
    const ScalarField mixed = mixed_reeb_term(f, gr);
    const ScalarField tors =
        bilinear(gr, 2.0 * (n + 2) * td.T0 + 2.0 * (2 * n + 2) * td.U + 2.0 * (n + 2) * td.S * q.g, gr);
    ScalarField rhs(f.grid, 0.0);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = hs.norm2[i] - glg[i] + tors[i] + 4.0 * mixed[i];
    return field_report("bochner", {lhs}, {rhs});
}

namespace {

struct Gr4Parts {
    double mixed, pairing, lap2, S, U, xi2, tors;
};

Gr4Parts gr4_parts(const ScalarField& f) {
    const int n = f.grid->n();
    const auto q = make_quaternionic_structure(n);
    const TorsionData td = model_torsion(*f.grid);
    const HorizontalField gr = grad_h(f);
    Gr4Parts p{};
    p.mixed = integrate(mixed_reeb_term(f, gr));
    p.pairing = p_pairing(p_form(f, td), gr);
    const ScalarField lap = sub_laplacian(f);
    p.lap2 = integrate_product(lap, lap);
    p.S = td.S * integrate(squared_norm(gr));
    p.U = integrate(bilinear(gr, td.U, gr));
    p.xi2 = 0.0;
    for (int s = 0; s < 3; ++s) {
        const ScalarField x = reeb_derivative(f, s);
        p.xi2 += integrate_product(x, x);
    }
    Mat K = Mat::Zero(q.dim(), q.dim());
    for (int s = 0; s < 3; ++s) K += torsion_contraction_matrix(td, q, s);
    p.tors = integrate(bilinear(gr, K, gr));
    return p;
}

}  // namespace

IdentityReport gr4_report(const ScalarField& f) {
    const int n = f.grid->n();
    const Gr4Parts p = gr4_parts(f);
    IdentityReport r = base_report("gr4", *f.grid);
    r.lhs = p.mixed;
    r.terms = {{"mixed", p.mixed},
               {"P pairing", -p.pairing / (4.0 * n)},
               {"(Df)^2", -p.lap2 / (4.0 * n)},
               {"S", -p.S}};
    r.rhs = -p.pairing / (4.0 * n) - p.lap2 / (4.0 * n) - p.S;
    if (n > 1) {
        r.rhs += (n + 1.0) / (n - 1.0) * p.U;
        r.terms.emplace_back("U", (n + 1.0) / (n - 1.0) * p.U);
    }
    finalize_report(r, *f.grid);
    return r;
}

IdentityReport intform_report(const ScalarField& f) {
    const int n = f.grid->n();
    const Gr4Parts p = gr4_parts(f);
    IdentityReport r = base_report("intform", *f.grid);
    r.lhs = p.mixed;
    r.rhs = -(4.0 * n * p.xi2 + p.tors);
    r.terms = {{"mixed", p.mixed}, {"xi^2", -4.0 * n * p.xi2}, {"torsion", -p.tors}};
    finalize_report(r, *f.grid);
    return r;
}

IdentityReport identity_residual(IdentityName name, const ScalarField& f_or_u, double alpha) {
    switch (name) {
        case IdentityName::ricci2: return ricci2_report(f_or_u);
        case IdentityName::ricci_mixed: return ricci_mixed_report(f_or_u);
        case IdentityName::bochner: return bochner_residual(f_or_u);
        case IdentityName::gr4: return gr4_report(f_or_u);
        case IdentityName::intform: return intform_report(f_or_u);
        default: break;
    }
    const PowerIntegrals pi = power_integrals(f_or_u, alpha);
    const double de = name == IdentityName::derf ? energy_flow_derivative(f_or_u) : 0.0;
    return identity_from_integrals(name, pi, *f_or_u.grid, de);
}

}  // namespace qcheat
