#include "quasibif/catalog.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

#include "quasibif/errors.hpp"
#include "quasibif/quadrature.hpp"

namespace quasibif {

std::string to_string(CaseId c) {
    switch (c) {
        case CaseId::I: return "I";
        case CaseId::II: return "II";
        case CaseId::III: return "III";
        case CaseId::IV: return "IV";
        case CaseId::V: return "V";
        case CaseId::VI: return "VI";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::indeterminate: return "indeterminate";
        case Verdict::not_applicable: return "n/a";
    }
    return "?";
}

namespace {

class InequalityTally {
public:
    explicit InequalityTally(int exceptional) : exceptional_(exceptional) {}

    // Records lhs <= rhs at one grid point.
    void add(double lhs, double rhs) {
        ++check_.grid_points;
        if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
            ++check_.unevaluable_points;
            return;
        }
        const double margin = rhs - lhs;
        const double scale = std::abs(lhs) + std::abs(rhs);
        if (margin > 1e-9 * scale) return;
        if (margin >= -1e-9 * scale) {
            ++check_.equality_points;
        } else if (margin >= -1e-7 * scale) {
            ++undecided_;
        } else {
            ++check_.violations;
        }
    }

    ConditionCheck result() const {
        ConditionCheck c = check_;
        const int evaluated = c.grid_points - c.unevaluable_points;
        if (evaluated == 0) c.verdict = Verdict::indeterminate;
        else if (c.violations > 0) c.verdict = Verdict::fail;
        else if (undecided_ > 0) c.verdict = Verdict::indeterminate;
        else c.verdict = Verdict::pass;
        c.strict = c.verdict == Verdict::pass && c.equality_points <= exceptional_;
        return c;
    }

private:
    int exceptional_;
    int undecided_ = 0;
    ConditionCheck check_;
};

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    if (n < 2 || !(hi > lo)) return {lo};
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g.push_back(std::exp(a + (b - a) * i / (n - 1)));
    return g;
}

std::vector<double> u_grid(const NonlinearityFamily& f, const SamplingSpec& grid) {
    if (f.endpoint_a().is_finite()) {
        const double a = f.endpoint_a().value();
        auto g = log_grid(grid.u_min, 0.5 * a, grid.points / 2);
        for (int i = 1; i <= grid.points - grid.points / 2; ++i) {
            const double frac = 0.5 * std::pow(1e-9 / 0.5, static_cast<double>(i) / (grid.points - grid.points / 2));
            g.push_back(a * (1.0 - frac));
        }
        return g;
    }
    const double hi = std::min(grid.u_max, f.overflow_radius());
    return log_grid(grid.u_min, hi, grid.points);
}

ConditionCheck check_limit_condition(const PhiFamily& phi, const NonlinearityFamily& f, CaseId c) {
    ConditionCheck out;
    if (c != CaseId::I) {
        out.verdict = Verdict::not_applicable;
        return out;
    }
    const double tmax = f.capital_f(f.overflow_radius());
    bool decays = true, flat = true;
    for (double lambda : {1e-2, 1.0, 1e2}) {
        std::vector<double> ratios;
        for (double t = 1.0; t <= tmax && t < 1e300; t *= 10.0) {
            ++out.grid_points;
            const double z = phi.capital_phi_inv(lambda * t);
            double num;
            if (std::isfinite(z)) num = phi.eval(z);
            else if (phi.phi_range_bound().is_finite()) num = phi.phi_range_bound().value();
            else {
                ++out.unevaluable_points;
                break;
            }
            const double den = f.eval(f.capital_f_inv(t));
            if (!std::isfinite(num) || !(den > 0.0) || !std::isfinite(den)) {
                ++out.unevaluable_points;
                break;
            }
            ratios.push_back(num / den);
        }
        if (ratios.size() < 4) {
            decays = false;
            flat = false;
            continue;
        }
        const double first = ratios.front(), last = ratios.back();
        bool tail_monotone = true;
        for (std::size_t i = ratios.size() / 2; i + 1 < ratios.size(); ++i)
            if (ratios[i + 1] > ratios[i] * (1.0 + 1e-12)) tail_monotone = false;
        if (!(tail_monotone && last <= 0.1 * first)) decays = false;
        if (!(last >= first * (1.0 - 1e-9))) flat = false;
    }
    if (decays) out.verdict = Verdict::pass;
    else if (flat) out.verdict = Verdict::fail;
    else out.verdict = Verdict::indeterminate;
    out.strict = out.verdict == Verdict::pass;
    return out;
}

}  // namespace

CaseId classify_case(const PhiFamily& phi, const NonlinearityFamily& f) {
    const bool b = phi.b_constant().is_finite();
    const bool a = f.endpoint_a().is_finite();
    const bool c = f.c_constant().is_finite();
    if (!a && c) throw ParameterError(f.label() + ": inconsistent family, A = +inf but C < +inf");
    if (!b) {
        if (!a) return CaseId::I;
        return c ? CaseId::III : CaseId::II;
    }
    if (!a) return CaseId::IV;
    return c ? CaseId::VI : CaseId::V;
}

ConditionReport check_conditions(const PhiFamily& phi, const NonlinearityFamily& f, const SamplingSpec& grid) {
    if (grid.points < 100) throw ParameterError("check_conditions requires at least 100 grid points");
    ConditionReport rep;

    InequalityTally concavity(grid.exceptional_points);
    concavity.add(0.0, 0.0);
    for (double z : log_grid(grid.u_min, grid.z_max, grid.points / 2)) {
        concavity.add(z * phi.deriv2(z), 0.0);
        concavity.add(-z * phi.deriv2(-z), 0.0);
    }
    rep.phi_concavity = concavity.result();

    const auto us = u_grid(f, grid);
    InequalityTally superlinear(grid.exceptional_points);
    InequalityTally fcond(grid.exceptional_points);
    for (double u : us) {
        const double fu = f.eval(u), dfu = f.deriv(u), cap = f.capital_f(u);
        superlinear.add(fu, dfu * u);
        fcond.add(dfu * cap, fu * fu);
    }
    rep.superlinearity = superlinear.result();
    rep.f_condition = fcond.result();
    rep.strictness = (rep.phi_concavity.verdict == Verdict::pass && rep.superlinearity.verdict == Verdict::pass) &&
                     (rep.phi_concavity.strict || rep.superlinearity.strict);
    rep.limit_condition = check_limit_condition(phi, f, classify_case(phi, f));
    rep.sample_grid = fmt::format("z: +/-log[{:g},{:g}] x {}; u: {} points from {:g} to {}", grid.u_min, grid.z_max,
                                  grid.points / 2, us.size(), grid.u_min,
                                  us.empty() ? std::string("-") : fmt::format("{:.6g}", us.back()));
    return rep;
}

ProblemInstance::ProblemInstance(PhiFamily phi, NonlinearityFamily f, const SamplingSpec& grid)
    : phi_(std::move(phi)), f_(std::move(f)), case_id_(classify_case(phi_, f_)), conditions_(check_conditions(phi_, f_, grid)) {}

ExtendedReal ProblemInstance::b_over_c() const { return divide(phi_.b_constant(), f_.c_constant()); }

ExtendedReal k_integral(const PhiFamily& phi) {
    if (phi.b_constant().is_infinite()) throw DomainError("k_integral requires B < +inf (" + phi.label() + ")");
    const double b = phi.b_constant().value();
    const QuadratureOptions opt{1e-13, 0.0, 4000};
    // Near y = 0 through y = (B/2) s^2, near y = B through y = B - (B/2) s^2.
    auto lower = [&](double s) {
        const double y = 0.5 * b * s * s;
        return 2.0 * phi.reciprocal_capital_phi_inv(b - y, y) / s;
    };
    auto upper = [&](double s) {
        const double arg = 0.5 * b * s * s;
        const double y = b - arg;
        return phi.reciprocal_capital_phi_inv(arg, y) * b * s / y;
    };
    const auto lo = integrate(lower, 0.0, 1.0, opt);
    const auto hi = integrate(upper, 0.0, 1.0, opt);
    if (lo.converged && hi.converged) return ExtendedReal::finite(lo.value + hi.value);
    // Tail extrapolation: partial integrals over [delta, 1] as delta shrinks.
    std::vector<double> partial;
    for (int j = 2; j <= 14; j += 2) partial.push_back(integrate(lower, std::pow(10.0, -j), 1.0, opt).value);
    const std::size_t n = partial.size();
    const double i1 = partial[n - 1] - partial[n - 2], i2 = partial[n - 2] - partial[n - 3];
    if (i1 > 0.5 * i2) return ExtendedReal::infinity();
    return ExtendedReal::finite(partial.back() + hi.value);
}

}  // namespace quasibif
