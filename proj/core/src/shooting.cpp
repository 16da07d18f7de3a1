#include "quasibif/shooting.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "quasibif/errors.hpp"

namespace quasibif {

namespace {

using State = std::array<double, 2>;  // (u, v)

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct System {
    const ProblemInstance& p;
    double lambda;

    double f_odd(double u) const { return u >= 0.0 ? p.f().eval(u) : -p.f().eval(-u); }

    State rhs(const State& y) const { return {p.phi().eval_inverse(y[1]), -lambda * f_odd(y[0])}; }

    // One step; returns the 5th-order state and the embedded error estimate.
    std::pair<State, State> step(const State& y, const State& k1, double h) const {
        auto add = [&](std::initializer_list<std::pair<double, const State*>> terms) {
            State out = y;
            for (const auto& [c, k] : terms) {
                out[0] += h * c * (*k)[0];
                out[1] += h * c * (*k)[1];
            }
            return out;
        };
        const State k2 = rhs(add({{a21, &k1}}));
        const State k3 = rhs(add({{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(add({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(add({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 = rhs(add({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y5 = add({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(y5);
        State err;
        for (int i = 0; i < 2; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        return {y5, err};
    }

    double energy(const State& y) const {
        return p.phi().capital_phi(p.phi().eval_inverse(y[1])) + lambda * p.f().capital_f(std::max(y[0], 0.0));
    }
};

double sup_phi(const ProblemInstance& p) {
    const auto& b = p.phi().phi_range_bound();
    return b.is_finite() ? b.value() : std::numeric_limits<double>::infinity();
}

// Terminal |v| from the energy relation at u = 0 (sup phi when the level reaches B).
double terminal_v(const ProblemInstance& p, double level) {
    const auto& b = p.phi().b_constant();
    if (b.is_finite() && level >= b.value()) return sup_phi(p);
    return p.phi().eval(p.phi().capital_phi_inv(level));
}

}  // namespace

std::string to_string(Termination t) {
    switch (t) {
        case Termination::hit_zero: return "hit_zero";
        case Termination::blow_up_guard: return "blow_up_guard";
        case Termination::step_limit: return "step_limit";
    }
    return "?";
}

Trajectory shoot(const ProblemInstance& p, double r, double lambda, const ShootOptions& opt) {
    if (!(r > 0.0) || (p.f().endpoint_a().is_finite() && r >= p.f().endpoint_a().value()))
        throw DomainError(fmt::format("shoot requires r in (0, A), got {}", r));
    if (!(lambda > 0.0)) throw DomainError("shoot requires lambda > 0");
    const System sys{p, lambda};
    const double level = lambda * p.f().capital_f(r);
    const double sup = sup_phi(p);
    const double v_scale = std::min(terminal_v(p, level), sup);
    const double tol = opt.step_tol;

    Trajectory tr;
    State y{r, 0.0};
    double x = 0.0;
    tr.steps.push_back({x, y[0], y[1]});
    State k1 = sys.rhs(y);
    // Initial step from u'' ~ -lambda f(r) / phi'(0): reach about 1% of r.
    double h = std::min(0.1, std::sqrt(0.02 * r * p.phi().deriv_at_zero() / std::max(lambda * p.f().eval(r), 1e-300)));
    double drift = 0.0;
    for (int n = 0; n < opt.max_steps; ++n) {
        auto [yn, err] = sys.step(y, k1, h);
        const double su = tol * std::max(std::abs(yn[0]), 1e-3 * r);
        const double sv = tol * std::max(std::abs(yn[1]), 1e-3 * v_scale);
        const double en = std::max(std::abs(err[0]) / su, std::abs(err[1]) / sv);
        const bool guard_hit = std::isfinite(sup) && std::abs(yn[1]) > (1.0 - opt.guard) * sup;
        const bool finite = std::isfinite(yn[0]) && std::isfinite(yn[1]) && std::isfinite(en);
        double new_drift = drift;
        if (finite && !guard_hit && yn[0] > 0.0) new_drift = std::abs(sys.energy(yn) - level) / level;
        const bool drift_ok = new_drift - drift <= 10.0 * tol;
        if (!finite || en > 1.0 || !drift_ok) {
            ++tr.rejected_steps;
            h *= finite && en > 1.0 ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.25;
            if (h < 1e-300) break;
            continue;
        }
        if (guard_hit) {
            tr.terminated = Termination::blow_up_guard;
            tr.half_length = x;
            tr.max_energy_drift = drift;
            return tr;
        }
        if (yn[0] <= 0.0) {
            // Bisect the step length for u = 0.
            double lo = 0.0, hi = h;
            State at = yn;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(x, 1e-300); ++it) {
                const double mid = 0.5 * (lo + hi);
                const State ym = sys.step(y, k1, mid).first;
                if (ym[0] > 0.0) lo = mid;
                else {
                    hi = mid;
                    at = ym;
                }
            }
            x += hi;
            at[0] = 0.0;
            tr.steps.push_back({x, at[0], at[1]});
            const double d_end = std::abs(sys.energy(at) - level) / level;
            tr.max_energy_drift = std::max(drift, d_end);
            tr.half_length = x;
            tr.terminated = Termination::hit_zero;
            return tr;
        }
        x += h;
        y = yn;
        drift = std::max(drift, new_drift);
        tr.steps.push_back({x, y[0], y[1]});
        k1 = sys.rhs(y);
        h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-10), -0.2)));
    }
    tr.terminated = Termination::step_limit;
    tr.half_length = x;
    tr.max_energy_drift = drift;
    return tr;
}

double energy_residual(const Trajectory& traj, const ProblemInstance& p, double lambda, double r) {
    const double level = lambda * p.f().capital_f(r);
    const System sys{p, lambda};
    double m = 0.0;
    for (const auto& s : traj.steps) m = std::max(m, std::abs(sys.energy({s.u, s.v}) - level) / level);
    return m;
}

double backward_height(const Trajectory& traj, const ProblemInstance& p, double lambda, const ShootOptions& opt) {
    if (traj.steps.empty() || traj.terminated != Termination::hit_zero)
        throw DomainError("backward_height requires a trajectory that reached u = 0");
    const System sys{p, lambda};
    State y{0.0, traj.steps.back().v};
    double remaining = traj.half_length;
    double h = remaining * 1e-3;
    const double r_ref = traj.steps.front().u;
    const double v_ref = std::abs(y[1]);
    for (int n = 0; n < opt.max_steps && remaining > 0.0; ++n) {
        const double hs = std::min(h, remaining);
        const State k1 = sys.rhs(y);
        auto [yn, err] = sys.step(y, k1, -hs);
        const double su = opt.step_tol * std::max(std::abs(yn[0]), 1e-3 * r_ref);
        const double sv = opt.step_tol * std::max(std::abs(yn[1]), 1e-3 * v_ref);
        const double en = std::max(std::abs(err[0]) / su, std::abs(err[1]) / sv);
        if (!std::isfinite(en) || en > 1.0) {
            h = hs * (std::isfinite(en) ? std::max(0.2, 0.9 * std::pow(en, -0.2)) : 0.25);
            continue;
        }
        y = yn;
        remaining -= hs;
        h = hs * std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-10), -0.2)));
    }
    return y[0];
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const ProblemInstance& p, double lambda, double r) {
    const double level = lambda * p.f().capital_f(r);
    const System sys{p, lambda};
    os << "x,u,uprime,energy_residual\n";
    for (const auto& s : traj.steps) {
        const double e = std::abs(sys.energy({s.u, s.v}) - level) / level;
        os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", s.x, s.u, p.phi().eval_inverse(s.v), e);
    }
}

}  // namespace quasibif
