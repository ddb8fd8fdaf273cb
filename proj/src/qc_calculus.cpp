#include "qcheat/qc_calculus.hpp"

#include "qcheat/kernels/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qcheat {

namespace {

const double* slab_ptr(const ScalarField& f, std::size_t slab) { return f.data() + slab * f.grid->slab_size(); }

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid != b.grid && (a.grid->n() != b.grid->n() || a.grid->m_x() != b.grid->m_x()))
        throw std::invalid_argument("fields live on different grids");
}

// out += w * f
void axpy(ScalarField& out, double w, const ScalarField& f) {
    double* o = out.data();
    const double* x = f.data();
    for (std::size_t i = 0, n = out.size(); i < n; ++i) o[i] += w * x[i];
}

Mat complex_structure(int n, int s) { return make_quaternionic_structure(n).I[s]; }

}  // namespace

ScalarField frame_derivative(const ScalarField& f, int a) {
    const LatticeGrid& g = *f.grid;
    if (a < 0 || a >= g.x_axes()) throw std::out_of_range("horizontal direction out of range");
    ScalarField out(f.grid, 0.0);
    const KernelTable& k = kernels();
    const double scale = 1.0 / (2.0 * g.h_x());
    const std::size_t S = g.slab_size();
    for (std::size_t slab = 0; slab < g.num_slabs(); ++slab) {
        const StepTarget& p = g.step(slab, a, 1, 1);
        const StepTarget& q = g.step(slab, a, -1, 1);
        k.shift_diff(out.data() + slab * S, slab_ptr(f, p.slab), p.shift, slab_ptr(f, q.slab), q.shift, g.m_t(), scale);
    }
    return out;
}

HorizontalField grad_h(const ScalarField& f) {
    HorizontalField v;
    v.grid = f.grid;
    for (int a = 0; a < f.grid->x_axes(); ++a) v.comp.push_back(frame_derivative(f, a));
    return v;
}

std::vector<ScalarField> hessian_h(const ScalarField& f) {
    const int d = f.grid->x_axes();
    HorizontalField gr = grad_h(f);
    std::vector<ScalarField> H;
    H.reserve(d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) H.push_back(frame_derivative(gr.comp[b], a));
    return H;
}

ScalarField sub_laplacian(const ScalarField& f) {
    const LatticeGrid& g = *f.grid;
    const int d = g.x_axes();
    ScalarField out(f.grid, 0.0);
    const KernelTable& k = kernels();
    const double scale = -1.0 / (4.0 * g.h_x() * g.h_x());
    const std::size_t S = g.slab_size();
    std::vector<NeighborRef> nb(2 * d);
    for (std::size_t slab = 0; slab < g.num_slabs(); ++slab) {
        for (int a = 0; a < d; ++a)
            for (int di = 0; di < 2; ++di) {
                const StepTarget& st = g.step(slab, a, di == 0 ? 1 : -1, 2);
                nb[2 * a + di] = {slab_ptr(f, st.slab), st.shift};
            }
        k.neighbor_sum(out.data() + slab * S, slab_ptr(f, slab), nb.data(), 2 * d, g.m_t(), 0.0, scale);
    }
    return out;
}

ScalarField reeb_derivative(const ScalarField& f, int s) {
    const LatticeGrid& g = *f.grid;
    if (s < 0 || s > 2) throw std::out_of_range("Reeb index must be 0..2");
    ScalarField out(f.grid, 0.0);
    const KernelTable& k = kernels();
    const double scale = frame_data(g).xi_scale / (2.0 * g.h_t());
    Shift3 plus, minus;
    plus.s[s] = 1;
    minus.s[s] = g.m_t() - 1;
    const std::size_t S = g.slab_size();
    for (std::size_t slab = 0; slab < g.num_slabs(); ++slab)
        k.shift_diff(out.data() + slab * S, slab_ptr(f, slab), plus, slab_ptr(f, slab), minus, g.m_t(), scale);
    return out;
}

HessianSummary hessian_summary(const ScalarField& f) {
    const int d = f.grid->x_axes();
    const FrameData fd = frame_data(*f.grid);
    HorizontalField gr = grad_h(f);
    HessianSummary hs{ScalarField(f.grid, 0.0), ScalarField(f.grid, 0.0),
                      {ScalarField(f.grid, 0.0), ScalarField(f.grid, 0.0), ScalarField(f.grid, 0.0)}};
    for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a) {
            const ScalarField h = frame_derivative(gr.comp[b], a);
            double* n2 = hs.norm2.data();
            const double* hv = h.data();
            for (std::size_t i = 0, N = h.size(); i < N; ++i) n2[i] += hv[i] * hv[i];
            if (a == b) axpy(hs.trace, 1.0, h);
            for (int s = 0; s < 3; ++s) {
                const double w = fd.omega[s](a, b);
                if (w != 0.0) axpy(hs.omega_pair[s], w, h);
            }
        }
    return hs;
}

ScalarField p_function_field(const HessianSummary& hs, int n) {
    ScalarField p(hs.norm2.grid, 0.0);
    const double inv = 1.0 / (4.0 * n);
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double tr = hs.trace[i];
        double om = 0.0;
        for (int s = 0; s < 3; ++s) om += hs.omega_pair[s][i] * hs.omega_pair[s][i];
        p[i] = hs.norm2[i] - inv * tr * tr - inv * om;
    }
    return p;
}

ThirdContractions third_contractions(const ScalarField& f) {
    const int d = f.grid->x_axes();
    const int n = f.grid->n();
    ThirdContractions tc;
    const ScalarField lap = sub_laplacian(f);
    tc.c1.grid = f.grid;
    for (int a = 0; a < d; ++a) {
        ScalarField c = frame_derivative(lap, a);
        for (double& v : c.values) v = -v;
        tc.c1.comp.push_back(std::move(c));
    }
    const HessianSummary hs = hessian_summary(f);
    tc.c2 = HorizontalField(f.grid);
    for (int t = 0; t < 3; ++t) {
        const Mat I = complex_structure(n, t);
        for (int dd = 0; dd < d; ++dd) {
            bool used = false;
            for (int a = 0; a < d; ++a) used = used || I(dd, a) != 0.0;
            if (!used) continue;
            const ScalarField dq = frame_derivative(hs.omega_pair[t], dd);
            for (int a = 0; a < d; ++a)
                if (I(dd, a) != 0.0) axpy(tc.c2.comp[a], I(dd, a), dq);
        }
    }
    return tc;
}

HorizontalField p_form(const ScalarField& f, const TorsionData& td) {
    const int n = f.grid->n();
    const int d = f.grid->x_axes();
    if (td.n != n) throw std::invalid_argument("torsion data dimension does not match grid");
    ThirdContractions tc = third_contractions(f);
    HorizontalField gr = grad_h(f);
    HorizontalField P(f.grid);
    const double cu = n > 1 ? -8.0 * n * (n - 2) / (n - 1.0) : 0.0;
    for (int a = 0; a < d; ++a) {
        ScalarField& pa = P.comp[a];
        axpy(pa, 1.0, tc.c1.comp[a]);
        axpy(pa, 1.0, tc.c2.comp[a]);
        if (td.S != 0.0) axpy(pa, -4.0 * n * td.S, gr.comp[a]);
        for (int b = 0; b < d; ++b) {
            const double w = 4.0 * n * td.T0(a, b) + (n > 1 ? cu * td.U(a, b) : 0.0);
            if (w != 0.0) axpy(pa, w, gr.comp[b]);
        }
    }
    return P;
}

HorizontalField p_form(const ScalarField& f) { return p_form(f, model_torsion(*f.grid)); }

double p_pairing(const HorizontalField& P, const HorizontalField& grad) {
    double s = 0.0;
    for (std::size_t a = 0; a < P.comp.size(); ++a) s += integrate_product(P.comp[a], grad.comp[a]);
    return s;
}

double p_functional(const ScalarField& f) { return p_pairing(p_form(f), grad_h(f)); }

ScalarField divergence(const HorizontalField& sigma) {
    ScalarField out(sigma.grid, 0.0);
    for (int a = 0; a < sigma.grid->x_axes(); ++a) axpy(out, -1.0, frame_derivative(sigma.comp[a], a));
    return out;
}

ScalarField c_operator(const ScalarField& f) {
    ScalarField c = divergence(p_form(f));
    for (double& v : c.values) v = -v;
    return c;
}

ScalarField mixed_reeb_term(const ScalarField& f, const HorizontalField& grad) {
    const int n = f.grid->n();
    const int d = f.grid->x_axes();
    const auto q = make_quaternionic_structure(n);
    ScalarField out(f.grid, 0.0);
    for (int s = 0; s < 3; ++s) {
        // (I_s grad f)_c = sum_e I_s(c, e) X_e f
        for (int c = 0; c < d; ++c) {
            const ScalarField xc = reeb_derivative(grad.comp[c], s);
            for (int e = 0; e < d; ++e) {
                const double w = q.I[s](c, e);
                if (w == 0.0) continue;
                double* o = out.data();
                const double* gx = grad.comp[e].data();
                const double* xv = xc.data();
                for (std::size_t i = 0, N = out.size(); i < N; ++i) o[i] += w * gx[i] * xv[i];
            }
        }
    }
    return out;
}

ScalarField squared_norm(const HorizontalField& v) { return inner(v, v); }

ScalarField inner(const HorizontalField& v, const HorizontalField& w) {
    ScalarField out(v.grid, 0.0);
    for (std::size_t a = 0; a < v.comp.size(); ++a) {
        require_same_grid(v.comp[a], w.comp[a]);
        double* o = out.data();
        const double* x = v.comp[a].data();
        const double* y = w.comp[a].data();
        for (std::size_t i = 0, N = out.size(); i < N; ++i) o[i] += x[i] * y[i];
    }
    return out;
}

ScalarField bilinear(const HorizontalField& v, const Mat& K, const HorizontalField& w) {
    ScalarField out(v.grid, 0.0);
    const int d = static_cast<int>(v.comp.size());
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            const double k = K(a, b);
            if (k == 0.0) continue;
            double* o = out.data();
            const double* x = v.comp[a].data();
            const double* y = w.comp[b].data();
            for (std::size_t i = 0, N = out.size(); i < N; ++i) o[i] += k * x[i] * y[i];
        }
    return out;
}

double l2_norm(const ScalarField& f) {
    const double v = integrate_product(f, f);
    return std::sqrt(std::max(v, 0.0));
}

}  // namespace qcheat
