#include <doctest.h>

#include <cmath>
#include <numbers>

#include <quasibif/bifurcation.hpp>
#include <quasibif/errors.hpp>
#include <quasibif/patterns.hpp>
#include <quasibif/regression.hpp>
#include <quasibif/shooting.hpp>
#include <quasibif/timemap.hpp>

#include "support.hpp"

using namespace quasibif;
using quasibif::test::fam;
using quasibif::test::instance;

namespace {

constexpr double pi = std::numbers::pi;

std::vector<LambdaInterval> occupied(const BifurcationDiagram& d) {
    std::vector<LambdaInterval> out;
    for (const auto& iv : d.intervals)
        if (iv.count == 1) out.push_back(iv);
    return out;
}

LambdaGrid coarse() {
    LambdaGrid g;
    g.per_decade = 64;
    return g;
}

}  // namespace

TEST_CASE("lambda_1") {
    const auto p = instance(3, fam("exp_minus_one"));
    CHECK(lambda_one(p, 1.0).value() == doctest::Approx(pi * pi / 4));
    CHECK(lambda_one(p, 2.0).value() == doctest::Approx(pi * pi / 16));
    CHECK_FALSE(lambda_one(instance(3, fam("power", {{"p", 2}})), 1.0).has_value());
    CHECK(make_diagram_spec(p, 1.0).lambda1.has_value());
}

TEST_CASE("solve_r reports the linear problem as degenerate") {
    const auto p = instance(0, fam("power", {{"p", 1}}));
    const double L = 0.8;
    const double lambda = std::pow(pi / (2 * L), 2);
    const auto s = solve_r(p, lambda, L);
    CHECK(s.status == SolveStatus::degenerate);
    CHECK_FALSE(s.r.has_value());
    CHECK(solve_r(p, 2 * lambda, L).status == SolveStatus::none);
}

TEST_CASE("solve_r refuses a non-monotone time map unless forced") {
    const auto p = instance(3, fam("power", {{"p", 0.5}}));
    REQUIRE_FALSE(p.conditions().monotone_time_map());
    CHECK_THROWS_AS(solve_r(p, 1.0, 0.5), ParameterError);
}

TEST_CASE("solve_r for (phi_3, e^u - 1) at L = 1, lambda = 1 is confirmed by shooting") {
    const auto p = instance(3, fam("exp_minus_one"));
    const auto s = solve_r(p, 1.0, 1.0);
    REQUIRE(s.status == SolveStatus::unique);
    const double r = *s.r;
    CHECK(time_map(p, r, 1.0).t_value == doctest::Approx(1.0).epsilon(1e-9));
    const auto traj = shoot(p, r, 1.0);
    CHECK(traj.terminated == Termination::hit_zero);
    CHECK(std::abs(traj.half_length - 1.0) <= 1e-5);
}

TEST_CASE("solve_r for u^2 above lambda_*") {
    const auto p = instance(3, fam("power", {{"p", 2}}));
    const double L = 1.0;
    const auto prof = g_profile(p);
    const auto th = thresholds_for_L(p, prof, L);
    const double lambda_star = th.lambdas.at("lambda_star");
    CHECK(g_eval(p, lambda_star).value() == doctest::Approx(L).epsilon(1e-7));
    const auto s = solve_r(p, 2 * lambda_star, L);
    REQUIRE(s.status == SolveStatus::unique);
    CHECK(time_map(p, *s.r, 2 * lambda_star).t_value == doctest::Approx(L).epsilon(1e-8));
    CHECK(solve_r(p, 0.5 * lambda_star, L).status == SolveStatus::none);
}

TEST_CASE("thresholds: alpha0 has a single lambda_*") {
    const auto p = instance(3, fam("power", {{"p", 3}}));
    const auto th = thresholds_for_L(p, g_profile(p), 0.7);
    CHECK(th.named);
    REQUIRE(th.roots.size() == 1);
    CHECK(th.roots[0].name == "lambda_star");
}

TEST_CASE("thresholds: beta0 below the maximum has two roots") {
    const auto p = instance(3, fam("gauss_minus_one"));
    const auto th = thresholds_for_L(p, g_profile(p), 0.3);
    CHECK(th.regime == "L<L^*");
    REQUIRE(th.roots.size() == 2);
    CHECK(th.lambdas.at("lambda_star") < th.lambdas.at("lambda_upstar"));
}

TEST_CASE("thresholds: gamma0 between the extreme values has three roots") {
    const auto p = instance(3, fam("power_sum", {{"p", 2}, {"q", 7}}));
    const auto th = thresholds_for_L(p, g_profile(p), 0.346);
    CHECK(th.regime == "L_*<L<L^*");
    REQUIRE(th.roots.size() == 3);
    CHECK(th.lambdas.at("lambda_star") < th.lambdas.at("lambda_dblstar"));
    CHECK(th.lambdas.at("lambda_dblstar") < th.lambdas.at("lambda_upstar"));
}

TEST_CASE("diagram: Case I with u^2 has one solution for every lambda") {
    const auto d = build_diagram(make_diagram_spec(instance(2, fam("power", {{"p", 2}})), 1.0), coarse());
    for (const auto& iv : d.intervals) CHECK(iv.count == 1);
    CHECK(verify_pattern(d).verdict == Verdict::pass);
}

TEST_CASE("diagram: (phi_3, e^u - 1) with L below the limit of g") {
    const auto d = build_diagram(make_diagram_spec(instance(3, fam("exp_minus_one")), 1.0), coarse());
    CHECK(d.regime == "L<L^*");
    const auto occ = occupied(d);
    REQUIRE(occ.size() == 1);
    CHECK(occ[0].lo_name == "lambda_star");
    CHECK(occ[0].hi_name == "lambda1");
    CHECK(occ[0].hi == doctest::Approx(pi * pi / 4));
    CHECK(verify_pattern(d).verdict == Verdict::pass);
}

TEST_CASE("diagram: (phi_3, u + u^6) with L between the extreme values") {
    const auto d = build_diagram(make_diagram_spec(instance(3, fam("power_sum", {{"p", 1}, {"q", 6}})), 0.46), coarse());
    CHECK(d.regime == "L_*<L<L^*");
    const auto occ = occupied(d);
    REQUIRE(occ.size() == 2);
    CHECK(occ[0].lo_name == "lambda_star");
    CHECK(occ[0].hi_name == "lambda_dblstar");
    CHECK(occ[1].lo_name == "lambda_upstar");
    CHECK(occ[1].hi_name == "lambda1");
    CHECK(verify_pattern(d).verdict == Verdict::pass);
}

TEST_CASE("diagram invariants: branch solves T = L and stays under the blow-up curve") {
    const auto p = instance(3, fam("exp_minus_one"));
    const double L = 1.0;
    const auto d = build_diagram(make_diagram_spec(p, L), coarse());
    REQUIRE_FALSE(d.branch.empty());
    int checked = 0;
    for (std::size_t i = 0; i < d.branch.size(); i += 16) {
        const auto& b = d.branch[i];
        CHECK(std::abs(time_map(p, b.r, b.lambda).t_value - L) <= 1e-7 * L);
        CHECK(b.r <= blow_up_radius(p, b.lambda) * (1 + 1e-12));
        ++checked;
    }
    CHECK(checked > 3);
    for (std::size_t i = 0; i + 1 < d.blowup_curve.size(); ++i)
        CHECK(d.blowup_curve[i + 1].r < d.blowup_curve[i].r);
}

TEST_CASE("verify_pattern: beta0 with f'(0) > 0 at L = L^*") {
    const auto p = instance(3, fam("gauss_plus_power", {{"p", 1}}));
    const auto prof = g_profile(p);
    REQUIRE(prof.g_type == GType::beta0);
    const double L = prof.thresholds.at("L_upstar");
    const auto d = build_diagram(make_diagram_spec(p, L), prof, coarse());
    CHECK(d.regime == "L=L^*");
    const auto v = verify_pattern(d);
    CHECK(v.pattern_key == "IV-beta0 f'(0)>0");
    CHECK(v.verdict == Verdict::pass);
}

TEST_CASE("verify_pattern: delta2 with f'(0) = 0 between L_* and L^*") {
    const auto p = instance(3, fam("gauss_plus_power", {{"p", 8}}));
    const auto prof = g_profile(p);
    REQUIRE(prof.g_type == GType::delta2);
    const double L = 0.5 * (prof.thresholds.at("L_star") + prof.thresholds.at("L_upstar"));
    const auto d = build_diagram(make_diagram_spec(p, L), prof, coarse());
    CHECK(d.regime == "L_*<L<L^*");
    const auto occ = occupied(d);
    REQUIRE(occ.size() == 3);
    CHECK(occ[0].lo == 0.0);
    CHECK(occ[0].hi_name == "lambda_dbl_substar");
    CHECK(occ[1].lo_name == "lambda_star");
    CHECK(occ[2].hi == INFINITY);
    CHECK(verify_pattern(d).verdict == Verdict::pass);
}

TEST_CASE("pattern table covers every governed cell") {
    for (const char* key : {"I/II f'(0)=0", "III f'(0)>0", "IV-alpha0 f'(0)=0", "IV-beta1 f'(0)>0", "IV-gamma2 f'(0)=0",
                            "IV-delta0 f'(0)>0", "IV-delta2 f'(0)=0"})
        CHECK(find_pattern(key) != nullptr);
    CHECK(find_pattern("IV-delta3 f'(0)=0") == nullptr);
    CHECK(pattern_key(CaseId::V, GType::beta0, ExtendedReal::finite(1.0)) == "IV-beta0 f'(0)>0");
    CHECK(pattern_key(CaseId::VI, GType::gamma0, ExtendedReal::finite(0.0)) == "IV-gamma0 f'(0)=0");
}

TEST_CASE("threshold monotonicity for alpha0 and lambda_1") {
    const auto p = instance(3, fam("power", {{"p", 2}}));
    const auto rep = threshold_monotonicity_check(p, g_profile(p), {0.3, 0.5, 0.8, 1.2, 2.0});
    CHECK(rep.pass);
    const auto q = instance(3, fam("exp_minus_one"));
    const auto rep2 = threshold_monotonicity_check(q, g_profile(q), {0.4, 0.6, 0.8, 1.0, 1.2});
    CHECK(rep2.pass);
    bool saw_lambda1 = false;
    for (const auto& e : rep2.entries)
        if (e.name == "lambda1") {
            saw_lambda1 = true;
            CHECK(e.expected_direction == -1);
        }
    CHECK(saw_lambda1);
}

TEST_CASE("regression tables") {
    CHECK(g_type_table().size() == 16);
    CHECK(regression_matrix().size() == 30);
    CHECK(monotone_cells().size() == 6);
}
