#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include <quasibif/errors.hpp>
#include <quasibif/shooting.hpp>
#include <quasibif/timemap.hpp>

#include "support.hpp"

using namespace quasibif;
using quasibif::test::fam;
using quasibif::test::instance;
using quasibif::test::rel_diff;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("shooting the harmonic oscillator") {
    const auto p = instance(0, fam("power", {{"p", 1}}));
    const auto t = shoot(p, 0.3, 1.0);
    CHECK(t.terminated == Termination::hit_zero);
    CHECK(std::abs(t.half_length - pi / 2) <= 1e-6);
    CHECK(energy_residual(t, p, 1.0, 0.3) <= 1e-8);
    ShootOptions tight;
    tight.step_tol = 1e-12;
    const auto t2 = shoot(p, 0.3, 1.0, tight);
    CHECK(energy_residual(t2, p, 1.0, 0.3) <= 1e-12);
}

TEST_CASE("shooting agrees with the time map") {
    const auto p = instance(3, fam("power", {{"p", 1}}));
    const auto t = shoot(p, 0.5, 1.0);
    CHECK(rel_diff(t.half_length, time_map(p, 0.5, 1.0).t_value) <= 1e-5);
    CHECK(std::abs(backward_height(t, p, 1.0) / 0.5 - 1.0) <= 1e-6);
}

TEST_CASE("trajectory invariants") {
    const auto p = instance(3, fam("exp_minus_one"));
    const auto t = shoot(p, 0.8, 1.0);
    REQUIRE(t.steps.size() > 2);
    CHECK(t.steps.front().u == 0.8);
    CHECK(t.steps.front().v == 0.0);
    for (std::size_t i = 1; i < t.steps.size(); ++i) {
        CHECK(t.steps[i].u < t.steps[i - 1].u);
        CHECK(t.steps[i].v < 0.0);
        CHECK(t.steps[i].v > -1.0);
    }
    CHECK(t.max_energy_drift <= 1e-8 * p.f().capital_f(0.8));
}

TEST_CASE("shooting just below the blow-up radius") {
    const auto p = instance(3, fam("exp_minus_one"));
    const double r = blow_up_radius(p, 1.0) * (1 - 1e-3);
    const auto t = shoot(p, r, 1.0);
    CHECK(t.terminated == Termination::hit_zero);
    const double slope = p.phi().eval_inverse(t.steps.back().v);
    CHECK(std::isfinite(slope));
    CHECK(std::abs(slope) > 50.0);
    CHECK(energy_residual(t, p, 1.0, r) <= 1e-8);
}

TEST_CASE("shooting beyond the blow-up radius hits the guard") {
    const auto p = instance(3, fam("exp_minus_one"));
    const auto t = shoot(p, blow_up_radius(p, 1.0) * (1 + 1e-3), 1.0);
    CHECK(t.terminated == Termination::blow_up_guard);
    CHECK_FALSE(t.steps.empty());
}

TEST_CASE("shooting preconditions") {
    const auto p = instance(3, fam("tan"));
    CHECK_THROWS_AS(shoot(p, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(shoot(p, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(shoot(p, 0.5, -1.0), DomainError);
}

TEST_CASE("trajectory CSV") {
    const auto p = instance(0, fam("power", {{"p", 1}}));
    const auto t = shoot(p, 0.3, 1.0);
    std::ostringstream os;
    write_trajectory_csv(os, t, p, 1.0, 0.3);
    std::istringstream is(os.str());
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,u,uprime,energy_residual");
    std::size_t rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == t.steps.size());
}
