#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <quasibif/catalog.hpp>
#include <quasibif/errors.hpp>

#include "support.hpp"

using namespace quasibif;
using quasibif::test::fam;
using quasibif::test::instance;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, double(i) / (n - 1)));
    return g;
}

std::vector<FamilyDescriptor> cataloged_samples() {
    return {
        fam("power", {{"p", 2}}),
        fam("power_sum", {{"p", 1}, {"q", 6}}),
        fam("shifted_power", {{"p", 3}}),
        fam("exp_minus_one"),
        fam("exp_plus_power", {{"p", 8}}),
        fam("gauss_minus_one"),
        fam("gauss_plus_power", {{"p", 8}}),
        fam("gauss_plus_power_plus_linear", {{"p", 8}}),
        fam("exp_minus_linear"),
        fam("exp_quadratic"),
        fam("exp_minus_linear_plus_power", {{"p", 8}}),
        fam("power_exp_plus_power", {{"p", 7}, {"k", 12}, {"q", 2}}),
        fam("tan"),
        fam("tan_power", {{"q", 2}}),
        fam("singular_power", {{"p", 2}, {"q", 2}}),
        fam("singular_linear"),
        fam("singular_quadratic"),
        fam("inv_sqrt_linear"),
        fam("inv_sqrt_quadratic"),
    };
}

}  // namespace

TEST_CASE("phi_3 closed forms") {
    const PhiFamily phi = make_phi_k(3);
    CHECK(phi.b_constant().value() == doctest::Approx(1.0).epsilon(1e-15));
    for (double z : log_grid(1e-3, 1e3, 200)) {
        CHECK(phi.capital_phi(z) == doctest::Approx(1.0 - 1.0 / std::sqrt(1.0 + z * z)).epsilon(1e-12));
        CHECK(phi.eval(z) == doctest::Approx(z / std::sqrt(1.0 + z * z)).epsilon(1e-14));
    }
    for (double y : {1e-6, 0.1, 0.5, 0.9, 0.999}) {
        const double expected = std::sqrt(1.0 - (1.0 - y) * (1.0 - y)) / (1.0 - y);
        CHECK(phi.capital_phi_inv(y) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("phi_0 is the identity flux") {
    const PhiFamily phi = make_phi_k(0);
    CHECK(phi.b_constant().is_infinite());
    CHECK(phi.phi_range_bound().is_infinite());
    for (double z : {0.01, 0.5, 3.0, 40.0}) {
        CHECK(phi.eval(z) == doctest::Approx(z));
        CHECK(phi.capital_phi(z) == doctest::Approx(0.5 * z * z).epsilon(1e-14));
        CHECK(phi.capital_phi_inv(z) == doctest::Approx(std::sqrt(2.0 * z)).epsilon(1e-14));
    }
}

TEST_CASE("phi_5 potential at one") {
    const PhiFamily phi = make_phi_k(5);
    CHECK(phi.b_constant().value() == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(phi.capital_phi(1.0) == doctest::Approx(0.215482203135575413).epsilon(1e-12));
}

TEST_CASE("phi_k finiteness of B and sup phi") {
    for (double k : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 7.0}) {
        CAPTURE(k);
        const PhiFamily phi = make_phi_k(k);
        CHECK(phi.phi_range_bound().is_finite() == (k > 1.0));
        CHECK(phi.b_constant().is_finite() == (k > 2.0));
        if (k > 2.0) CHECK(phi.b_constant().value() == doctest::Approx(1.0 / (k - 2.0)).epsilon(1e-13));
    }
}

TEST_CASE("phi_k invariants: oddness, positive derivative, round trip") {
    for (double k : {0.0, 1.0, 2.0, 2.5, 3.0, 4.0, 5.0}) {
        CAPTURE(k);
        const PhiFamily phi = make_phi_k(k);
        CHECK(phi.eval(0.0) == 0.0);
        double prev = 0.0;
        for (double z : log_grid(1e-4, 1e4, 60)) {
            CHECK(phi.eval(-z) == -phi.eval(z));
            CHECK(phi.deriv(z) > 0.0);
            const double cp = phi.capital_phi(z);
            CHECK(cp > prev);
            prev = cp;
            // Phi^{-1} near B amplifies rounding of Phi(z) by Phi / (z^2 phi'(z)).
            const double condition = cp / (z * z * phi.deriv(z));
            if (condition < 1e4) CHECK(phi.capital_phi_inv(cp) == doctest::Approx(z).epsilon(1e-10));
        }
    }
}

TEST_CASE("phi_k closed form potential matches quadrature") {
    for (double k : {2.5, 3.0, 4.0, 5.0, 6.5}) {
        CAPTURE(k);
        const PhiFamily closed = make_phi_k(k);
        const PhiFamily numeric = make_phi_numeric(
            "numeric", [k](double t) { return std::pow(1.0 + t * t, -0.5 * k); },
            [k](double t) { return -k * t * std::pow(1.0 + t * t, -0.5 * k - 1.0); });
        for (double z : {0.01, 0.3, 1.0, 4.0, 30.0}) {
            const double expected = 1.0 / (k - 2.0) - std::pow(1.0 + z * z, -0.5 * (k - 2.0)) / (k - 2.0);
            CHECK(closed.capital_phi(z) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(numeric.capital_phi(z) == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("nonlinearity constants for e^u - 1") {
    const NonlinearityFamily f = make_f(fam("exp_minus_one"));
    CHECK(f.f_prime_at_zero().value() == doctest::Approx(1.0));
    CHECK(f.endpoint_a().is_infinite());
    CHECK(f.c_constant().is_infinite());
    CHECK(f.d_limit().value() == doctest::Approx(1.0));
    CHECK_FALSE(f.d_limit_approximate());
}

TEST_CASE("nonlinearity u^2") {
    const NonlinearityFamily f = make_f(fam("power", {{"p", 2}}));
    CHECK(f.f_prime_at_zero().value() == 0.0);
    CHECK(f.d_limit().is_infinite());
    for (double u : {0.1, 1.0, 7.0}) {
        CHECK(f.capital_f(u) == doctest::Approx(u * u * u / 3.0).epsilon(1e-14));
        CHECK(f.capital_f_inv(u) == doctest::Approx(std::cbrt(3.0 * u)).epsilon(1e-13));
    }
}

TEST_CASE("nonlinearity u^7 e^{12u} + u^2 has D = 1/12") {
    const NonlinearityFamily f = make_f(fam("power_exp_plus_power", {{"p", 7}, {"k", 12}, {"q", 2}}));
    CHECK(f.d_limit().value() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("nonlinearity D values across the catalog") {
    CHECK(make_f(fam("power_exp_plus_power", {{"p", 5}, {"k", 8}, {"q", 1}})).d_limit().value() ==
          doctest::Approx(1.0 / 8.0));
    CHECK(make_f(fam("gauss_minus_one")).d_limit().value() == 0.0);
    CHECK(make_f(fam("exp_plus_power", {{"p", 8}})).d_limit().value() == doctest::Approx(1.0));
    CHECK(make_f(fam("power_sum", {{"p", 2}, {"q", 7}})).d_limit().is_infinite());
    CHECK(make_f(fam("tan")).d_limit().value() == 0.0);
}

TEST_CASE("nonlinearity invariants on cataloged families") {
    for (const auto& d : cataloged_samples()) {
        const NonlinearityFamily f = make_f(d);
        CAPTURE(f.label());
        CHECK(f.eval(0.0) == 0.0);
        const double a = f.endpoint_a().value_or(30.0);
        const double top = std::min(0.999 * a, f.overflow_radius() * 0.9);
        for (double u : log_grid(1e-5, top, 40)) {
            CHECK(f.eval(u) > 0.0);
            const double y = f.capital_f(u);
            CHECK(f.capital_f_inv(y) == doctest::Approx(u).epsilon(1e-10));
        }
        if (f.endpoint_a().is_finite()) {
            const double A = f.endpoint_a().value();
            CHECK(f.eval(A * (1.0 - 1e-6)) > f.eval(A * (1.0 - 1e-3)));
            CHECK(f.eval(A * (1.0 - 1e-9)) > 1e3);
        }
    }
}

TEST_CASE("invalid nonlinearity parameters are rejected") {
    CHECK_THROWS_AS(make_f(fam("power", {{"p", 0}})), ParameterError);
    CHECK_THROWS_AS(make_f(fam("power", {{"p", -1}})), ParameterError);
    CHECK_THROWS_AS(make_f(fam("no_such_family")), ParameterError);
    CHECK_THROWS_AS(make_f(fam("power")), ParameterError);
}

TEST_CASE("user supplied nonlinearity") {
    const NonlinearityFamily f = make_f_numeric(
        "u + u^3", [](double u) { return u + u * u * u; }, [](double u) { return 1.0 + 3.0 * u * u; },
        ExtendedReal::infinity());
    CHECK(f.f_prime_at_zero().value() == doctest::Approx(1.0));
    for (double u : {0.2, 1.0, 3.0})
        CHECK(f.capital_f(u) == doctest::Approx(0.5 * u * u + 0.25 * u * u * u * u).epsilon(1e-10));
    CHECK(f.capital_f_inv(f.capital_f(1.7)) == doctest::Approx(1.7).epsilon(1e-10));
}

TEST_CASE("condition report for (phi_3, e^u - 1)") {
    const auto p = instance(3, fam("exp_minus_one"));
    const auto& c = p.conditions();
    CHECK(c.phi_concavity.verdict == Verdict::pass);
    CHECK(c.superlinearity.verdict == Verdict::pass);
    CHECK(c.f_condition.verdict == Verdict::pass);
    CHECK(c.strictness);
    CHECK(c.monotone_time_map());
}

TEST_CASE("condition report for the linear problem") {
    const auto p = instance(0, fam("power", {{"p", 1}}));
    const auto& c = p.conditions();
    CHECK(c.phi_concavity.verdict == Verdict::pass);
    CHECK_FALSE(c.phi_concavity.strict);
    CHECK(c.superlinearity.verdict == Verdict::pass);
    CHECK_FALSE(c.superlinearity.strict);
    CHECK_FALSE(c.strictness);
}

TEST_CASE("f-condition for u^5 + u^10 below the critical exponent") {
    const auto p = instance(3, fam("power_sum", {{"p", 5}, {"q", 10}}));
    CHECK(5.0 + 1.0 + 2.0 * std::sqrt(6.0) > 10.0);
    CHECK(p.conditions().f_condition.verdict == Verdict::pass);
}

TEST_CASE("strictness holds for strictly convex cataloged families") {
    for (const auto& d : {fam("power", {{"p", 2}}), fam("exp_minus_one"), fam("power_sum", {{"p", 2}, {"q", 7}}),
                          fam("gauss_minus_one"), fam("tan")}) {
        const auto p = instance(3, d);
        CAPTURE(p.label());
        CHECK(p.conditions().strictness);
    }
}

TEST_CASE("six-case classification") {
    CHECK(classify_case(instance(2, fam("tan"))) == CaseId::II);
    CHECK(classify_case(instance(3, fam("power", {{"p", 2}}))) == CaseId::IV);
    CHECK(classify_case(instance(3, fam("inv_sqrt_linear"))) == CaseId::VI);
    CHECK(classify_case(instance(2, fam("exp_minus_one"))) == CaseId::I);
    CHECK(classify_case(instance(3, fam("tan"))) == CaseId::V);
    CHECK(classify_case(instance(2, fam("inv_sqrt_linear"))) == CaseId::III);
}

TEST_CASE("classification is stable under re-parametrization") {
    for (double p : {1.0, 2.0, 5.0, 9.0}) CHECK(classify_case(instance(3, fam("power", {{"p", p}}))) == CaseId::IV);
    for (double k : {2.5, 3.0, 4.0, 6.0}) CHECK(classify_case(instance(k, fam("tan"))) == CaseId::V);
    for (double k : {0.0, 1.0, 2.0}) CHECK(classify_case(instance(k, fam("exp_minus_one"))) == CaseId::I);
}

TEST_CASE("K integral") {
    CHECK(k_integral(make_phi_k(3)).value() == doctest::Approx(pi / 2).epsilon(1e-8));
    // For k = 4 the integrand reduces to 1/sqrt(s(1 - s)) on (0, 1).
    CHECK(k_integral(make_phi_k(4)).value() == doctest::Approx(pi).epsilon(1e-8));
    CHECK_THROWS_AS(k_integral(make_phi_k(2)), DomainError);
}
