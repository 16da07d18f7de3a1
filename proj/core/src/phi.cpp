#include "quasibif/phi.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "quasibif/errors.hpp"
#include "quasibif/quadrature.hpp"
#include "quasibif/roots.hpp"

namespace quasibif {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// Solves phi(s) = v for s >= 0 given a strictly increasing phi.
template <class Phi, class DPhi>
double invert_phi(const Phi& phi, const DPhi& dphi, double v) {
    if (v == 0.0) return 0.0;
    if (v < 0.0) return -invert_phi(phi, dphi, -v);
    double hi = std::max(1.0, v);
    while (phi(hi) < v) {
        hi *= 4.0;
        if (hi > 1e300) return inf;
    }
    return invert_increasing(phi, dphi, v, 0.0, hi);
}

// Decides whether the monotone limit lim_{z->inf} G(z) is finite by watching
// the decay of increments over decades.
template <class G>
bool tail_converges(const G& g) {
    double prev = g(10.0);
    double prev_inc = -1.0;
    int shrinking = 0;
    for (int j = 2; j <= 12; ++j) {
        const double cur = g(std::pow(10.0, j));
        const double inc = cur - prev;
        if (prev_inc > 0.0) {
            if (inc < 0.8 * prev_inc) ++shrinking;
            else shrinking = 0;
        }
        if (shrinking >= 3 && inc < 1e-6 * cur) return true;
        if (shrinking >= 5) return true;
        prev = cur;
        prev_inc = inc;
    }
    return false;
}

}  // namespace

PhiFamily::PhiFamily(std::string label, Functions fns, ExtendedReal b_constant, ExtendedReal range_bound)
    : label_(std::move(label)), fns_(std::move(fns)), b_(b_constant), range_(range_bound) {
    deriv0_ = fns_.deriv(0.0);
}

double PhiFamily::reciprocal_capital_phi_inv(double y, double deficit) const {
    if (b_.is_finite()) {
        if (deficit <= b_.value() * 1e-14) return 0.0;
        return fns_.reciprocal_capital_phi_inv(y, deficit);
    }
    return fns_.reciprocal_capital_phi_inv(y, inf);
}

PhiFamily make_phi_k(double k) {
    if (!(k >= 0.0) || !std::isfinite(k)) throw ParameterError(fmt::format("phi_k requires k >= 0, got {}", k));
    const double a = k - 2.0;
    PhiFamily::Functions fns;
    fns.deriv = [k](double t) { return std::exp(-0.5 * k * std::log1p(t * t)); };
    fns.deriv2 = [k](double t) { return -k * t * std::exp(-(0.5 * k + 1.0) * std::log1p(t * t)); };

    if (k == 0.0) {
        fns.eval = [](double s) { return s; };
        fns.eval_inverse = [](double v) { return v; };
    } else if (k == 1.0) {
        fns.eval = [](double s) { return std::asinh(s); };
        fns.eval_inverse = [](double v) { return std::sinh(v); };
    } else if (k == 2.0) {
        fns.eval = [](double s) { return std::atan(s); };
        fns.eval_inverse = [](double v) { return std::tan(v); };
    } else if (k == 3.0) {
        fns.eval = [](double s) { return s / std::sqrt(1.0 + s * s); };
        fns.eval_inverse = [](double v) { return v / std::sqrt((1.0 - v) * (1.0 + v)); };
    } else if (k == 4.0) {
        fns.eval = [](double s) { return 0.5 * (s / (1.0 + s * s) + std::atan(s)); };
    } else if (k == 5.0) {
        fns.eval = [](double s) {
            const double c = 1.0 + s * s;
            return s / std::sqrt(c) - s * s * s / (3.0 * c * std::sqrt(c));
        };
    } else {
        fns.eval = [k](double s) {
            const double theta = std::atan(std::abs(s));
            auto integrand = [k](double t) { return std::pow(std::cos(t), k - 2.0); };
            const double v = integrate(integrand, 0.0, theta, {1e-14, 0.0, 2000}).value;
            return s < 0 ? -v : v;
        };
    }
    if (!fns.eval_inverse) {
        auto phi = fns.eval;
        auto dphi = fns.deriv;
        fns.eval_inverse = [phi, dphi](double v) { return invert_phi(phi, dphi, v); };
    }

    if (a == 0.0) {
        fns.capital_phi = [](double z) { return 0.5 * std::log1p(z * z); };
        fns.capital_phi_inv = [](double y) { return std::sqrt(std::expm1(2.0 * y)); };
        fns.reciprocal_capital_phi_inv = [](double y, double) { return 1.0 / std::sqrt(std::expm1(2.0 * y)); };
    } else {
        fns.capital_phi = [a](double z) { return -std::expm1(-0.5 * a * std::log1p(z * z)) / a; };
        fns.capital_phi_inv = [a](double y) {
            if (a > 0.0 && a * y >= 1.0) return inf;
            return std::sqrt(std::expm1(-(2.0 / a) * std::log1p(-a * y)));
        };
        if (a < 0.0) {
            fns.reciprocal_capital_phi_inv = [a](double y, double) {
                return 1.0 / std::sqrt(std::expm1(-(2.0 / a) * std::log1p(-a * y)));
            };
        } else {
            // With w = a*(B - y): 1/Phi^{-1} = w^{1/a} / sqrt(1 - w^{2/a}).
            fns.reciprocal_capital_phi_inv = [a](double y, double deficit) {
                if (!(y > 0.0)) return inf;
                const double w = a * deficit;
                const double lw = (w < 0.5) ? std::log(w) : std::log1p(-a * y);
                return std::exp(lw / a) / std::sqrt(-std::expm1((2.0 / a) * lw));
            };
        }
    }

    const ExtendedReal b = a > 0.0 ? ExtendedReal::finite(1.0 / a) : ExtendedReal::infinity();
    ExtendedReal range = ExtendedReal::infinity();
    if (k > 1.0) {
        range = ExtendedReal::finite(std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (k - 1.0)) /
                                     (2.0 * std::tgamma(0.5 * k)));
    }
    return PhiFamily(fmt::format("phi_k(k={})", k), std::move(fns), b, range);
}

PhiFamily make_phi_numeric(std::string label, std::function<double(double)> deriv,
                           std::function<double(double)> deriv2) {
    const QuadratureOptions opt{1e-13, 0.0, 4000};
    auto phi = [deriv, opt](double s) {
        const double v = integrate(deriv, 0.0, std::abs(s), opt).value;
        return s < 0 ? -v : v;
    };
    auto cap = [deriv, opt](double z) {
        auto w = [&](double t) { return t * deriv(t); };
        return integrate(w, 0.0, std::abs(z), opt).value;
    };
    // int_z^inf h(t) dt through t = z + x/(1-x).
    auto tail_of = [opt](std::function<double(double)> h, double z) {
        auto w = [&](double x) {
            const double om = 1.0 - x;
            return h(z + x / om) / (om * om);
        };
        return integrate(w, 0.0, 1.0, opt).value;
    };
    auto t_dphi = [deriv](double t) { return t * deriv(t); };

    ExtendedReal b = ExtendedReal::infinity();
    if (tail_converges(cap)) b = ExtendedReal::finite(tail_of(t_dphi, 0.0));
    ExtendedReal range = ExtendedReal::infinity();
    if (tail_converges(phi)) range = ExtendedReal::finite(tail_of(deriv, 0.0));

    PhiFamily::Functions fns;
    fns.eval = phi;
    fns.deriv = deriv;
    fns.deriv2 = std::move(deriv2);
    fns.eval_inverse = [phi, deriv](double v) { return invert_phi(phi, deriv, v); };
    fns.capital_phi = cap;
    auto cap_inv = [cap, t_dphi, b](double y) {
        if (y <= 0.0) return 0.0;
        if (b.is_finite() && y >= b.value()) return inf;
        double hi = 1.0;
        while (cap(hi) < y) {
            hi *= 4.0;
            if (hi > 1e300) return inf;
        }
        return invert_increasing(cap, t_dphi, y, 0.0, hi);
    };
    fns.capital_phi_inv = cap_inv;
    fns.reciprocal_capital_phi_inv = [cap_inv, tail_of, t_dphi, b](double y, double deficit) {
        if (b.is_finite() && deficit < 1e-3 * b.value()) {
            // Solve tail(z) = deficit; tail is decreasing in z.
            auto neg_tail = [&](double z) { return -tail_of(t_dphi, z); };
            auto dneg = [&](double z) { return t_dphi(z); };
            double hi = 1.0;
            while (-neg_tail(hi) > deficit) {
                hi *= 4.0;
                if (hi > 1e300) return 0.0;
            }
            return 1.0 / invert_increasing(neg_tail, dneg, -deficit, 0.0, hi, 1e-14);
        }
        return 1.0 / cap_inv(y);
    };
    return PhiFamily(std::move(label), std::move(fns), b, range);
}

}  // namespace quasibif
