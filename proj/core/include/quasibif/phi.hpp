#pragma once

#include <functional>
#include <string>

#include "quasibif/extended_real.hpp"

namespace quasibif {

// Gradient-flux function phi: odd, phi' > 0, with its potential
// Phi(z) = int_0^z t phi'(t) dt and the constant B = sup Phi.
class PhiFamily {
public:
    struct Functions {
        std::function<double(double)> eval;
        std::function<double(double)> deriv;
        std::function<double(double)> deriv2;
        std::function<double(double)> eval_inverse;  // inverse of phi on its open range
        std::function<double(double)> capital_phi;
        std::function<double(double)> capital_phi_inv;
        // 1/Phi^{-1}(y) given y and deficit = B - y; the deficit argument lets
        // bounded families stay accurate as y approaches B. Ignored when B = +inf.
        std::function<double(double, double)> reciprocal_capital_phi_inv;
    };

    PhiFamily(std::string label, Functions fns, ExtendedReal b_constant, ExtendedReal range_bound);

    const std::string& label() const { return label_; }
    double eval(double s) const { return fns_.eval(s); }
    double deriv(double t) const { return fns_.deriv(t); }
    double deriv2(double t) const { return fns_.deriv2(t); }
    double eval_inverse(double v) const { return fns_.eval_inverse(v); }
    double capital_phi(double z) const { return fns_.capital_phi(z); }
    double capital_phi_inv(double y) const { return fns_.capital_phi_inv(y); }

    // 1/Phi^{-1}(y). Returns 0 once the deficit falls below B*1e-14, where the
    // exact value tends to 0 and Phi^{-1} would overflow.
    double reciprocal_capital_phi_inv(double y, double deficit) const;

    const ExtendedReal& b_constant() const { return b_; }
    const ExtendedReal& phi_range_bound() const { return range_; }
    double deriv_at_zero() const { return deriv0_; }

private:
    std::string label_;
    Functions fns_;
    ExtendedReal b_;
    ExtendedReal range_;
    double deriv0_;
};

// phi_k(s) = int_0^s (1 + t^2)^{-k/2} dt, k >= 0.
PhiFamily make_phi_k(double k);

// Builds a phi from phi' (and phi'') by quadrature and bracketed inversion.
// Slow; intended for cross-checking closed forms and for user-supplied fluxes.
PhiFamily make_phi_numeric(std::string label, std::function<double(double)> deriv,
                           std::function<double(double)> deriv2);

}  // namespace quasibif
