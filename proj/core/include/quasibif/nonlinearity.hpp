#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quasibif/extended_real.hpp"

namespace quasibif {

// Names a cataloged nonlinearity and its parameters, e.g.
// {kind = "power_exp_plus_power", p = 7, k = 12, q = 2} for u^7 e^{12u} + u^2.
// Kind "sum" combines primitive terms listed in `terms`.
struct FamilyDescriptor {
    std::string kind;
    std::map<std::string, double> params;
    std::vector<FamilyDescriptor> terms;

    double param(const std::string& key) const;
    double param_or(const std::string& key, double fallback) const;
    std::string to_string() const;
};

// Leading behaviour f(r) ~ e * r^alpha as r -> 0.
struct LeftOrder {
    double alpha = 1.0;
    double e = 1.0;
};

// Evaluation kernel behind a nonlinearity. Implementations must be immutable.
class NonlinearityModel {
public:
    virtual ~NonlinearityModel() = default;
    virtual double f(double u) const = 0;
    virtual double df(double u) const = 0;
    virtual double capital_f(double u) const = 0;
    // Closed-form inverse of F when one exists.
    virtual std::optional<double> capital_f_inv(double) const { return std::nullopt; }
};

struct NonlinearityTraits {
    std::string label;
    ExtendedReal endpoint_a = ExtendedReal::infinity();
    ExtendedReal c_constant = ExtendedReal::infinity();
    ExtendedReal f_prime_at_zero = ExtendedReal::finite(0.0);
    std::optional<LeftOrder> left_order;
    ExtendedReal d_limit = ExtendedReal::infinity();
    bool d_limit_approximate = false;
    std::vector<double> d_sequence;
};

// A nonlinearity f on [0, A) with F(u) = int_0^u f and the limits used by the
// classification. Evaluations clamp at A(1 - 1e-12) when A is finite.
class NonlinearityFamily {
public:
    NonlinearityFamily(std::shared_ptr<const NonlinearityModel> model, NonlinearityTraits traits);

    const std::string& label() const { return traits_.label; }
    double eval(double u) const { return model_->f(clamp(u)); }
    double deriv(double u) const { return model_->df(clamp(u)); }
    double capital_f(double u) const { return model_->capital_f(clamp(u)); }
    // F(r) - F(u) for 0 <= u <= r without cancellation when u is close to r.
    double capital_f_diff(double u, double r) const;
    // F(r) - F(r - h) with the drop h given directly.
    double capital_f_drop(double r, double h) const;
    // Inverse of F; returns the saturation point for y >= C.
    double capital_f_inv(double y) const;

    const ExtendedReal& endpoint_a() const { return traits_.endpoint_a; }
    const ExtendedReal& c_constant() const { return traits_.c_constant; }
    const ExtendedReal& f_prime_at_zero() const { return traits_.f_prime_at_zero; }
    const std::optional<LeftOrder>& left_order() const { return traits_.left_order; }
    const ExtendedReal& d_limit() const { return traits_.d_limit; }
    bool d_limit_approximate() const { return traits_.d_limit_approximate; }
    const std::vector<double>& d_sequence() const { return traits_.d_sequence; }

    // A(1 - 1e-12) for finite A, +inf otherwise.
    double saturation_point() const { return saturation_; }
    bool saturated(double u) const { return u >= saturation_; }
    // Largest u for which f, f' and F stay below 1e300.
    double overflow_radius() const { return overflow_radius_; }

private:
    double clamp(double u) const { return u < saturation_ ? u : saturation_; }

    std::shared_ptr<const NonlinearityModel> model_;
    NonlinearityTraits traits_;
    double saturation_;
    double overflow_radius_;
};

NonlinearityFamily make_f(const FamilyDescriptor& spec);

// User-supplied f, f' and endpoint A. F comes from a cumulative quadrature
// table and D from extrapolation (flagged approximate when it does not settle).
NonlinearityFamily make_f_numeric(std::string label, std::function<double(double)> f,
                                  std::function<double(double)> df, ExtendedReal endpoint_a);

// Descriptor kinds accepted by make_f.
std::vector<std::string> cataloged_kinds();

}  // namespace quasibif
