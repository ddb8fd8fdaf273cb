#pragma once

#include "qcheat/heisenberg_model.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qcheat {

enum class Integrator { euler, heun };
std::string to_string(Integrator i);
Integrator integrator_from_string(const std::string& s);

struct FlowConfig {
    double alpha = -0.05;
    std::optional<double> dt;  // unset: CFL step
    double cfl_safety = 1.0;
    double t_end = 0.0;
    int record_every = 1;
    BumpParams initial;
    Integrator integrator = Integrator::euler;
};

struct FlowState {
    ScalarField u;
    double time = 0.0;
    long step = 0;
};

// safety * h_x^2 / (16 n)
double cfl_timestep(const LatticeGrid& grid, double safety);

// One explicit Euler step u - dt * Delta u.
ScalarField heat_step(const ScalarField& u, double dt);
// Heun (explicit trapezoid); each stage is an Euler step so the range still cannot grow.
ScalarField heun_step(const ScalarField& u, double dt);

// Step size actually used: t_end split into whole steps no larger than the requested dt.
double effective_timestep(const LatticeGrid& grid, const FlowConfig& cfg, long* steps = nullptr);

void evolve(const ScalarField& u0, const FlowConfig& cfg, const std::function<void(const FlowState&)>& on_record);
std::vector<FlowState> evolve(const ScalarField& u0, const FlowConfig& cfg);
std::vector<FlowState> evolve(GridPtr grid, const FlowConfig& cfg);

ScalarField phi_of(const ScalarField& u);
ScalarField F_of(const ScalarField& u, double alpha);
ScalarField u_from_phi(const ScalarField& phi);
ScalarField u_from_F(const ScalarField& F, double alpha);

}  // namespace qcheat
