#pragma once

#include "quasibif/catalog.hpp"
#include "quasibif/extended_real.hpp"
#include "quasibif/quadrature.hpp"

namespace quasibif {

enum class Branch { whole, up_to_blowup };

// The interval I = (0, r*) or (0, r*] of admissible initial heights.
struct TimeMapDomain {
    ExtendedReal right;
    bool right_closed = false;
    Branch branch = Branch::whole;

    bool contains(double r) const;
};

struct TimeMapSample {
    double r = 0.0;
    double lambda = 0.0;
    double t_value = 0.0;
    double est_error = 0.0;
    bool asymptotic = false;  // small-r expansion used instead of quadrature
};

TimeMapDomain domain(const ProblemInstance& p, double lambda);

// T(r, lambda) = int_0^r du / Phi^{-1}(lambda (F(r) - F(u))).
TimeMapSample time_map(const ProblemInstance& p, double r, double lambda, double tol = 1e-9);

// dT/dr from the single combined integrand (no difference of divergent integrals).
double time_map_derivative(const ProblemInstance& p, double r, double lambda, double tol = 1e-9);

// lim_{r -> 0+} T(r, lambda).
ExtendedReal left_limit(const ProblemInstance& p, double lambda);

// r(lambda) = F^{-1}(B/lambda), defined for lambda > B/C.
double blow_up_radius(const ProblemInstance& p, double lambda);

namespace detail {

// F(r) - F(r(1 - t2)).
double f_drop(const NonlinearityFamily& f, double r, double t2);

// Breakpoints in t resolving the boundary layer at t = 0.
std::vector<double> layer_breaks(double lambda, double r, double fr);

// int_0^r du / Phi^{-1}(lambda (F(r) - F(u))) where headroom = B - lambda F(r)
// (ignored for unbounded Phi). Shared by the time map and the g functions.
QuadratureResult endpoint_integral(const PhiFamily& phi, const NonlinearityFamily& f, double r, double lambda,
                                   double headroom, double tol);

}  // namespace detail

}  // namespace quasibif
