#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace quasibif {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_subdivisions = 4000;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

// One 15-point Kronrod panel with the QUADPACK error heuristic.
template <class F>
Panel gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_k = fc * kronrod_weights[7];
    double res_g = fc * gauss_weights[3];
    double res_abs = std::abs(res_k);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kronrod_nodes[j];
        f1[j] = f(c - dx);
        f2[j] = f(c + dx);
        res_k += kronrod_weights[j] * (f1[j] + f2[j]);
        res_abs += kronrod_weights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) res_g += gauss_weights[j / 2] * (f1[j] + f2[j]);
    }
    const double mean = 0.5 * res_k;
    double res_asc = kronrod_weights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        res_asc += kronrod_weights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    res_k *= h;
    res_g *= h;
    res_abs *= std::abs(h);
    res_asc *= std::abs(h);
    double err = std::abs(res_k - res_g);
    if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
    return {a, b, res_k, err};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
// Endpoint singularities are tolerated as long as they are integrable and the
// integrand is never evaluated at the endpoints themselves.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<detail::Panel> heap;
    detail::Panel first = detail::gk15(f, a, b);
    out.evaluations = 15;
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int subdivisions = 0;
    while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (subdivisions >= opt.max_subdivisions || !std::isfinite(total)) {
            out.value = total;
            out.error = total_err;
            return out;
        }
        detail::Panel worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) break;
        heap.pop();
        detail::Panel left = detail::gk15(f, worst.a, mid);
        detail::Panel right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
        // Re-sum periodically so drift in the running totals cannot stall termination.
        if (subdivisions % 64 == 0) {
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
    }
    out.value = total;
    out.error = total_err;
    out.converged = total_err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total)) ||
                    total_err <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(total);
    return out;
}

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre_rule(int n);

// Fixed-order Gauss-Legendre quadrature, used where the integrand is smooth
// and short intervals make adaptivity wasteful.
template <class F>
double gauss_legendre(F&& f, double a, double b, const GaussLegendreRule& rule) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
    return h * s;
}

// Sum of integrate() over consecutive pieces [x_i, x_{i+1}]. With several pieces a coarse
// pass fixes an absolute tolerance so that negligible pieces do not chase relative accuracy.
template <class F>
QuadratureResult integrate_pieces(F&& f, const std::vector<double>& breaks, const QuadratureOptions& opt = {}) {
    QuadratureOptions fine = opt;
    if (breaks.size() > 2) {
        double estimate = 0.0;
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
            estimate += std::abs(integrate(f, breaks[i], breaks[i + 1], {1e-4, 0.0, 50}).value);
        fine.abs_tol = std::max(opt.abs_tol, 0.1 * opt.rel_tol * estimate / static_cast<double>(breaks.size() - 1));
    }
    QuadratureResult total;
    total.converged = true;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto q = integrate(f, breaks[i], breaks[i + 1], fine);
        total.value += q.value;
        total.error += q.error;
        total.evaluations += q.evaluations;
        total.converged = total.converged && q.converged;
    }
    return total;
}

}  // namespace quasibif
