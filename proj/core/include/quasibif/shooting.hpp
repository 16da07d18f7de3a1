#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "quasibif/catalog.hpp"

namespace quasibif {

enum class Termination { hit_zero, blow_up_guard, step_limit };
std::string to_string(Termination t);

struct TrajectoryStep {
    double x = 0.0;
    double u = 0.0;
    double v = 0.0;  // phi(u')
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    double half_length = 0.0;  // x where u first reaches 0
    double max_energy_drift = 0.0;
    Termination terminated = Termination::step_limit;
    int rejected_steps = 0;
};

struct ShootOptions {
    double step_tol = 1e-10;
    int max_steps = 1000000;
    double guard = 1e-9;  // stop once |v| > (1 - guard) sup phi
};

// Integrates u' = phi^{-1}(v), v' = -lambda f(u) from (r, 0) until u = 0.
Trajectory shoot(const ProblemInstance& p, double r, double lambda, const ShootOptions& options = {});

// max over steps of |Phi(phi^{-1}(v)) + lambda F(u) - lambda F(r)| / (lambda F(r)).
double energy_residual(const Trajectory& traj, const ProblemInstance& p, double lambda, double r);

// u(0) recovered by integrating backward from (half_length, 0, v_end).
double backward_height(const Trajectory& traj, const ProblemInstance& p, double lambda,
                       const ShootOptions& options = {});

// CSV with columns x, u, uprime, energy_residual.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const ProblemInstance& p, double lambda, double r);

}  // namespace quasibif
