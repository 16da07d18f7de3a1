#pragma once

#include <cmath>
#include <limits>
#include <utility>

#include "quasibif/errors.hpp"

namespace quasibif {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Brent's method on a sign-changing bracket [a, b] with known endpoint values.
template <class F>
RootResult brent(F&& f, double a, double b, double fa, double fb, double xtol, double rtol = 4e-16,
                 int max_iter = 200) {
    RootResult res;
    if (fa == 0.0) return {a, 0.0, 0, true};
    if (fb == 0.0) return {b, 0.0, 0, true};
    if ((fa > 0) == (fb > 0))
        throw DomainError("brent: bracket [" + std::to_string(a) + ", " + std::to_string(b) + "] does not change sign (" +
                          std::to_string(fa) + ", " + std::to_string(fb) + ")");
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * rtol * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            res.x = b;
            res.fx = fb;
            res.converged = true;
            return res;
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc;
                r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    res.x = b;
    res.fx = fb;
    return res;
}

template <class F>
RootResult brent(F&& f, double a, double b, double xtol, double rtol = 4e-16, int max_iter = 200) {
    return brent(f, a, b, f(a), f(b), xtol, rtol, max_iter);
}

// Inverse of a strictly increasing function on the bracket (lo, hi), lo >= 0.
// Newton steps are accepted only while they stay inside the shrinking bracket;
// otherwise the bracket is bisected (geometrically when it spans decades).
template <class F, class DF>
double invert_increasing(F&& f, DF&& df, double target, double lo, double hi, double rel_tol = 1e-15,
                         int max_iter = 400) {
    auto bisect_point = [&] {
        if (lo <= 0.0) return hi * 0.125;
        return (hi / lo > 4.0) ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    };
    double x = bisect_point();
    for (int it = 0; it < max_iter; ++it) {
        const double fx = f(x) - target;
        if (fx == 0.0) return x;
        if (fx < 0.0) lo = x;
        else hi = x;
        const double d = df(x);
        double nx = (d > 0.0 && std::isfinite(d)) ? x - fx / d : std::numeric_limits<double>::quiet_NaN();
        if (!(nx > lo && nx < hi)) nx = bisect_point();
        if (std::abs(nx - x) <= rel_tol * std::abs(x) || hi - lo <= rel_tol * hi) return nx;
        x = nx;
    }
    return x;
}

struct ExtremumResult {
    double x = 0.0;
    double fx = 0.0;
};

// Golden-section search for a maximum of a unimodal function on [a, b].
template <class F>
ExtremumResult golden_section_max(F&& f, double a, double b, double xtol, int max_iter = 200) {
    constexpr double invphi = 0.6180339887498948482;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < max_iter && std::abs(b - a) > xtol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? ExtremumResult{c, fc} : ExtremumResult{d, fd};
}

template <class F>
ExtremumResult golden_section_min(F&& f, double a, double b, double xtol, int max_iter = 200) {
    auto neg = [&](double x) { return -f(x); };
    ExtremumResult r = golden_section_max(neg, a, b, xtol, max_iter);
    r.fx = -r.fx;
    return r;
}

}  // namespace quasibif
