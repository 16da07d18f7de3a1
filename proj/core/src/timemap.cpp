#include "quasibif/timemap.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "quasibif/errors.hpp"

namespace quasibif {

namespace {

constexpr double pi = std::numbers::pi;

// int_0^1 (1 - s^m)^{-1/2} ds.
double beta_integral(double m) {
    return std::tgamma(1.0 / m) * std::tgamma(0.5) / (m * std::tgamma(1.0 / m + 0.5));
}

double headroom_for(const ProblemInstance& p, double r, double lambda) {
    if (p.phi().b_constant().is_infinite()) return std::numeric_limits<double>::infinity();
    return std::max(0.0, p.phi().b_constant().value() - lambda * p.f().capital_f(r));
}

double checked_radius(const ProblemInstance& p, double r, double lambda) {
    if (!(r > 0.0)) throw DomainError(fmt::format("time map requires r > 0, got {}", r));
    if (!(lambda > 0.0)) throw DomainError(fmt::format("time map requires lambda > 0, got {}", lambda));
    const TimeMapDomain d = domain(p, lambda);
    if (d.contains(r)) return r;
    if (d.right_closed && d.right.is_finite() && r <= d.right.value() * (1.0 + 1e-12)) return d.right.value();
    throw DomainError(fmt::format("r = {} lies outside I = (0, {}{} for lambda = {}", r, d.right.to_string(),
                                  d.right_closed ? "]" : ")", lambda));
}

}  // namespace

bool TimeMapDomain::contains(double r) const {
    if (!(r > 0.0)) return false;
    if (right.is_infinite()) return true;
    return right_closed ? r <= right.value() : r < right.value();
}

TimeMapDomain domain(const ProblemInstance& p, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("domain requires lambda > 0");
    TimeMapDomain d;
    const auto& b = p.phi().b_constant();
    const auto& f = p.f();
    if (b.is_infinite()) {
        d.right = f.endpoint_a();
        d.right_closed = false;
        d.branch = Branch::whole;
        return d;
    }
    const ExtendedReal bc = p.b_over_c();
    if (f.c_constant().is_finite() && lambda <= bc.value()) {
        d.right = f.endpoint_a();
        d.right_closed = false;
        d.branch = Branch::whole;
        return d;
    }
    d.right = ExtendedReal::finite(f.capital_f_inv(b.value() / lambda));
    d.right_closed = true;
    d.branch = Branch::up_to_blowup;
    return d;
}

namespace detail {

double f_drop(const NonlinearityFamily& f, double r, double t2) { return f.capital_f_drop(r, r * t2); }

std::vector<double> layer_breaks(double lambda, double r, double fr) {
    // The integrand is concentrated in t <~ 1/sqrt(lambda r f(r)) when that is small.
    std::vector<double> b{0.0};
    const double ts = 1.0 / std::sqrt(std::max(lambda * r * fr, 1e-300));
    for (double t = ts; t < 0.05; t *= 8.0) b.push_back(t);
    b.push_back(1.0);
    return b;
}

QuadratureResult endpoint_integral(const PhiFamily& phi, const NonlinearityFamily& f, double r, double lambda,
                                   double headroom, double tol) {
    const bool bounded = phi.b_constant().is_finite();
    // u = r (1 - t^2) removes the (r - u)^{-1/2} singularity at u = r.
    auto integrand = [&](double t) {
        const double t2 = t * t;
        const double u = r * (1.0 - t2);
        const double y = lambda * f_drop(f, r, t2);
        const double deficit = bounded ? headroom + lambda * f.capital_f(u) : 0.0;
        return 2.0 * r * t * phi.reciprocal_capital_phi_inv(y, deficit);
    };
    return integrate_pieces(integrand, layer_breaks(lambda, r, f.eval(r)), {tol, 0.0, 2000});
}

}  // namespace detail

TimeMapSample time_map(const ProblemInstance& p, double r, double lambda, double tol) {
    r = checked_radius(p, r, lambda);
    TimeMapSample s{r, lambda, 0.0, 0.0, false};
    const auto& lo = p.f().left_order();
    if (r < 1e-8 && lo) {
        const double m = lo->alpha + 1.0;
        s.t_value = std::pow(r, 0.5 * (1.0 - lo->alpha)) *
                    std::sqrt(p.phi().deriv_at_zero() * m / (2.0 * lambda * lo->e)) * beta_integral(m);
        s.est_error = std::abs(s.t_value) * 1e-8;
        s.asymptotic = true;
        return s;
    }
    const auto q = detail::endpoint_integral(p.phi(), p.f(), r, lambda, headroom_for(p, r, lambda), tol);
    s.t_value = q.value;
    s.est_error = q.error;
    if (!q.converged) throw AccuracyError("time map quadrature did not converge", q.value, q.error);
    return s;
}

double time_map_derivative(const ProblemInstance& p, double r, double lambda, double tol) {
    r = checked_radius(p, r, lambda);
    const auto& phi = p.phi();
    const auto& f = p.f();
    const bool bounded = phi.b_constant().is_finite();
    const double headroom = headroom_for(p, r, lambda);
    const double fr = f.eval(r);
    // s = 1 - t^2; integrand H / (P^3 phi'(P)) with H = P^2 phi'(P) - lambda r [f(r) - s f(rs)].
    auto integrand = [&](double t) {
        const double t2 = t * t;
        const double s = 1.0 - t2;
        const double u = r * s;
        const double y = lambda * detail::f_drop(f, r, t2);
        const double deficit = bounded ? headroom + lambda * f.capital_f(u) : 0.0;
        const double recip = phi.reciprocal_capital_phi_inv(y, deficit);
        if (recip == 0.0) return 0.0;
        const double pv = 1.0 / recip;
        const double fu = f.eval(u);
        const double bracket = lambda * r * ((fr - fu) + t2 * fu);
        const double dphi = phi.deriv(pv);
        double value;
        if (pv > 1e30) {
            value = recip - bracket / (pv * pv * pv * dphi);
        } else {
            const double p2 = pv * pv;
            value = (p2 * dphi - bracket) / (p2 * pv * dphi);
        }
        return 2.0 * t * value;
    };
    const double scale = std::sqrt(phi.deriv_at_zero() * r / (lambda * fr)) / r;
    const auto q = integrate_pieces(integrand, detail::layer_breaks(lambda, r, fr), {tol, 0.1 * tol * scale, 2000});
    if (!q.converged) throw AccuracyError("time map derivative quadrature did not converge", q.value, q.error);
    return q.value;
}

ExtendedReal left_limit(const ProblemInstance& p, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("left_limit requires lambda > 0");
    const double dphi0 = p.phi().deriv_at_zero();
    if (const auto& lo = p.f().left_order()) {
        if (lo->alpha < 1.0) return ExtendedReal::finite(0.0);
        if (lo->alpha > 1.0) return ExtendedReal::infinity();
        return ExtendedReal::finite(0.5 * pi * std::sqrt(dphi0 / (lambda * lo->e)));
    }
    const auto& fp0 = p.f().f_prime_at_zero();
    if (fp0.is_finite() && fp0.value() > 0.0) return ExtendedReal::finite(0.5 * pi * std::sqrt(dphi0 / (lambda * fp0.value())));
    if (fp0.is_finite() && fp0.value() == 0.0 && p.conditions().superlinearity.verdict == Verdict::pass)
        return ExtendedReal::infinity();
    throw UnsupportedFamily("left limit unavailable: neither the left order nor f'(0) determines it for " + p.label());
}

double blow_up_radius(const ProblemInstance& p, double lambda) {
    const auto& b = p.phi().b_constant();
    if (b.is_infinite()) throw DomainError("blow-up radius requires B < +inf");
    const ExtendedReal bc = p.b_over_c();
    if (!(lambda > bc.value())) throw DomainError(fmt::format("blow-up radius requires lambda > B/C = {}", bc.to_string()));
    return p.f().capital_f_inv(b.value() / lambda);
}

}  // namespace quasibif
