#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <quasibif/errors.hpp>
#include <quasibif/timemap.hpp>

#include "support.hpp"

using namespace quasibif;
using quasibif::test::fam;
using quasibif::test::instance;
using quasibif::test::rel_diff;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("domain: unbounded potential keeps the whole interval") {
    const auto d = domain(instance(2, fam("tan")), 1.0);
    CHECK(d.right.value() == doctest::Approx(pi / 2));
    CHECK_FALSE(d.right_closed);
    CHECK(d.branch == Branch::whole);
}

TEST_CASE("domain: bounded potential with C infinite stops at the blow-up radius") {
    const auto d = domain(instance(3, fam("power", {{"p", 1}})), 4.0);
    CHECK(d.right.value() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    CHECK(d.right_closed);
    CHECK(d.branch == Branch::up_to_blowup);
}

TEST_CASE("domain: both B and C finite") {
    const auto p = instance(3, fam("inv_sqrt_linear"));
    CHECK(p.f().c_constant().value() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(p.b_over_c().value() == doctest::Approx(1.0).epsilon(1e-13));
    const auto below = domain(p, 0.5);
    CHECK(below.right.value() == 1.0);
    CHECK_FALSE(below.right_closed);
    CHECK(below.branch == Branch::whole);
    const auto above = domain(p, 3.0);
    CHECK(above.right_closed);
    CHECK(above.right.value() < 1.0);
    CHECK(p.f().capital_f(above.right.value()) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("time map of the linear problem") {
    const auto p = instance(0, fam("power", {{"p", 1}}));
    CHECK(time_map(p, 0.5, 1.0).t_value == doctest::Approx(pi / 2).epsilon(1e-10));
    CHECK(time_map(p, 1.0, 4.0).t_value == doctest::Approx(pi / 4).epsilon(1e-10));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(-3.0, 2.0), ul(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double r = std::pow(10.0, ur(rng)), lambda = std::pow(10.0, ul(rng));
        CHECK(time_map(p, r, lambda).t_value == doctest::Approx(pi / (2.0 * std::sqrt(lambda))).epsilon(1e-8));
        CHECK(std::abs(time_map_derivative(p, r, lambda)) <= 1e-8);
    }
}

TEST_CASE("time map of (phi_3, u) at r = 0.5") {
    const auto p = instance(3, fam("power", {{"p", 1}}));
    const auto s = time_map(p, 0.5, 1.0);
    CHECK(s.t_value == doctest::Approx(1.49567229007914656).epsilon(1e-10));
    CHECK(s.est_error <= 1e-9);
    CHECK_FALSE(s.asymptotic);
}

TEST_CASE("time map at the closed right endpoint") {
    const auto p = instance(3, fam("power", {{"p", 1}}));
    CHECK(time_map(p, std::sqrt(2.0), 1.0).t_value == doctest::Approx(0.847213084793979087).epsilon(1e-9));
    CHECK(time_map(p, std::sqrt(0.5), 4.0).t_value == doctest::Approx(0.423606542396989543).epsilon(1e-9));
}

TEST_CASE("time map rejects points outside I") {
    const auto p = instance(3, fam("power", {{"p", 1}}));
    CHECK_THROWS_AS(time_map(p, 1.0, 4.0), DomainError);
    CHECK_THROWS_AS(time_map(p, -0.1, 1.0), DomainError);
    CHECK_THROWS_AS(time_map(p, 0.1, 0.0), DomainError);
    CHECK_THROWS_AS(time_map(instance(2, fam("tan")), 1.6, 1.0), DomainError);
}

TEST_CASE("time map derivative is negative for u^2") {
    const auto p = instance(3, fam("power", {{"p", 2}}));
    CHECK(time_map_derivative(p, 0.5, 1.0) < 0.0);
}

TEST_CASE("time map derivative matches central differences") {
    const auto p = instance(3, fam("exp_minus_one"));
    const double h = 1e-4, r = 1.0, lambda = 0.5;
    const double fd = (time_map(p, r + h, lambda, 1e-12).t_value - time_map(p, r - h, lambda, 1e-12).t_value) / (2 * h);
    CHECK(rel_diff(time_map_derivative(p, r, lambda), fd) <= 1e-4);
}

TEST_CASE("time map decreases in lambda") {
    for (const auto& d : {fam("exp_minus_one"), fam("power_sum", {{"p", 2}, {"q", 7}}), fam("tan")}) {
        const auto p = instance(3, d);
        CAPTURE(p.label());
        for (double r : {0.05, 0.2, 0.4}) {
            double prev = INFINITY;
            for (double lambda : {0.1, 0.3, 1.0, 2.0}) {
                if (!domain(p, lambda).contains(r)) break;
                const double t = time_map(p, r, lambda).t_value;
                CHECK(t < prev);
                prev = t;
            }
        }
    }
}

TEST_CASE("time map tends to zero as lambda grows when B is infinite") {
    const auto p = instance(1, fam("exp_minus_one"));
    double prev = INFINITY;
    for (int j = 0; j <= 6; ++j) {
        const double t = time_map(p, 0.5, std::pow(10.0, j)).t_value;
        CHECK(t < prev);
        prev = t;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("left limits") {
    CHECK(left_limit(instance(3, fam("exp_minus_one")), 1.0).value() == doctest::Approx(pi / 2));
    CHECK(left_limit(instance(3, fam("power", {{"p", 2}})), 1.0).is_infinite());
    CHECK(left_limit(instance(0, fam("power", {{"p", 0.5}})), 1.0).value() == 0.0);
    CHECK(left_limit(instance(3, fam("exp_minus_one")), 4.0).value() == doctest::Approx(pi / 4));
}

TEST_CASE("time map approaches the finite left limit") {
    const auto p = instance(3, fam("exp_minus_one"));
    const double limit = left_limit(p, 1.0).value();
    double prev_err = INFINITY;
    for (double r : {1e-3, 1e-4, 1e-5}) {
        const double err = std::abs(time_map(p, r, 1.0).t_value - limit);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err / limit < 1e-3);
}

TEST_CASE("small heights use the asymptotic expansion") {
    const auto p = instance(3, fam("power", {{"p", 2}}));
    const auto s = time_map(p, 1e-9, 1.0);
    CHECK(s.asymptotic);
    CHECK(s.t_value > time_map(p, 1e-4, 1.0).t_value);
}

TEST_CASE("blow-up radius") {
    CHECK(blow_up_radius(instance(3, fam("power", {{"p", 1}})), 2.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(blow_up_radius(instance(3, fam("exp_minus_one")), 1.0) ==
          doctest::Approx(1.14619322062058259).epsilon(1e-12));
    CHECK_THROWS_AS(blow_up_radius(instance(2, fam("exp_minus_one")), 1.0), DomainError);
    CHECK_THROWS_AS(blow_up_radius(instance(3, fam("inv_sqrt_linear")), 0.5), DomainError);
}

TEST_CASE("blow-up radius decreases and has the stated limits") {
    const auto p = instance(3, fam("inv_sqrt_linear"));
    double prev = 1.0;
    for (double lambda : {1.0001, 1.001, 1.1, 2.0, 10.0, 1e3, 1e6}) {
        const double r = blow_up_radius(p, lambda);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(blow_up_radius(p, 1.0001) > 0.99);
    CHECK(prev < 1e-2);
}
