#include "qcheat/heat_flow.hpp"

#include "qcheat/identities.hpp"
#include "qcheat/kernels/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace qcheat {

namespace {

// out = u + w * sum over 2-step neighbours of (nb - u), w = dt / (4 h^2).
void euler_into(const ScalarField& u, double dt, ScalarField& out) {
    const LatticeGrid& g = *u.grid;
    const int d = g.x_axes();
    const KernelTable& k = kernels();
    const double w = dt / (4.0 * g.h_x() * g.h_x());
    const std::size_t S = g.slab_size();
    std::vector<NeighborRef> nb(2 * d);
    for (std::size_t slab = 0; slab < g.num_slabs(); ++slab) {
        for (int a = 0; a < d; ++a)
            for (int di = 0; di < 2; ++di) {
                const StepTarget& st = g.step(slab, a, di == 0 ? 1 : -1, 2);
                nb[2 * a + di] = {u.data() + st.slab * S, st.shift};
            }
        k.neighbor_sum(out.data() + slab * S, u.data() + slab * S, nb.data(), 2 * d, g.m_t(), 1.0, w);
    }
}

void check_step(const ScalarField& u, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    const double bound = cfl_timestep(*u.grid, 1.0);
    if (dt > bound * (1.0 + 1e-12))
        throw std::invalid_argument("CFL violation: dt=" + std::to_string(dt) + " exceeds " + std::to_string(bound));
    check_positive(u);
}

}  // namespace

std::string to_string(Integrator i) { return i == Integrator::heun ? "heun" : "euler"; }

Integrator integrator_from_string(const std::string& s) {
    if (s == "euler") return Integrator::euler;
    if (s == "heun") return Integrator::heun;
    throw std::invalid_argument("unknown integrator: " + s);
}

double cfl_timestep(const LatticeGrid& grid, double safety) {
    if (!(safety > 0.0) || safety > 1.0) throw std::invalid_argument("CFL safety must lie in (0, 1]");
    return safety * grid.h_x() * grid.h_x() / (16.0 * grid.n());
}

ScalarField heat_step(const ScalarField& u, double dt) {
    check_step(u, dt);
    ScalarField out(u.grid, 0.0);
    euler_into(u, dt, out);
    return out;
}

ScalarField heun_step(const ScalarField& u, double dt) {
    check_step(u, dt);
    ScalarField u1(u.grid, 0.0), u2(u.grid, 0.0);
    euler_into(u, dt, u1);
    euler_into(u1, dt, u2);
    for (std::size_t i = 0; i < u1.size(); ++i) u1[i] = 0.5 * (u[i] + u2[i]);
    return u1;
}

double effective_timestep(const LatticeGrid& grid, const FlowConfig& cfg, long* steps) {
    const double cap = cfl_timestep(grid, cfg.cfl_safety);
    double dt = cfg.dt ? *cfg.dt : cap;
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (dt > cfl_timestep(grid, 1.0) * (1.0 + 1e-12)) throw std::invalid_argument("requested dt violates the CFL bound");
    if (!(cfg.t_end >= 0.0)) throw std::invalid_argument("t_end must be >= 0");
    long nsteps = cfg.t_end == 0.0 ? 0 : static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9));
    if (steps) *steps = nsteps;
    return nsteps == 0 ? dt : cfg.t_end / nsteps;
}

void evolve(const ScalarField& u0, const FlowConfig& cfg, const std::function<void(const FlowState&)>& on_record) {
    if (cfg.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
    check_alpha(cfg.alpha);
    check_positive(u0);
    long nsteps = 0;
    const double dt = effective_timestep(*u0.grid, cfg, &nsteps);
    FlowState st{u0, 0.0, 0};
    on_record(st);
    for (long k = 1; k <= nsteps; ++k) {
        st.u = cfg.integrator == Integrator::heun ? heun_step(st.u, dt) : heat_step(st.u, dt);
        st.step = k;
        st.time = k * dt;
        if (!(st.u.min() > 0.0))
            throw std::runtime_error("positivity lost at step " + std::to_string(k) + "; check CFL and initial data");
        if (k % cfg.record_every == 0) on_record(st);
    }
}

std::vector<FlowState> evolve(const ScalarField& u0, const FlowConfig& cfg) {
    std::vector<FlowState> out;
    evolve(u0, cfg, [&](const FlowState& s) { out.push_back(s); });
    return out;
}

std::vector<FlowState> evolve(GridPtr grid, const FlowConfig& cfg) {
    if (!(cfg.initial.offset > cfg.initial.amplitude) || cfg.initial.amplitude < 0.0)
        throw std::invalid_argument("initial data needs offset > amplitude >= 0");
    return evolve(periodized_bump(std::move(grid), cfg.initial), cfg);
}

ScalarField phi_of(const ScalarField& u) {
    check_positive(u);
    ScalarField out(u.grid, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = -std::log(u[i]);
    return out;
}

ScalarField F_of(const ScalarField& u, double alpha) {
    check_alpha(alpha);
    check_positive(u);
    ScalarField out(u.grid, 0.0);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::pow(u[i], alpha);
    return out;
}

ScalarField u_from_phi(const ScalarField& phi) {
    ScalarField out(phi.grid, 0.0);
    for (std::size_t i = 0; i < phi.size(); ++i) out[i] = std::exp(-phi[i]);
    return out;
}

ScalarField u_from_F(const ScalarField& F, double alpha) {
    check_alpha(alpha);
    check_positive(F);
    ScalarField out(F.grid, 0.0);
    for (std::size_t i = 0; i < F.size(); ++i) out[i] = std::pow(F[i], 1.0 / alpha);
    return out;
}

}  // namespace qcheat
