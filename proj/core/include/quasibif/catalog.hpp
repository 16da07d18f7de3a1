#pragma once

#include <string>

#include "quasibif/extended_real.hpp"
#include "quasibif/nonlinearity.hpp"
#include "quasibif/phi.hpp"

namespace quasibif {

enum class CaseId { I, II, III, IV, V, VI };

std::string to_string(CaseId c);

enum class Verdict { pass, fail, indeterminate, not_applicable };

std::string to_string(Verdict v);

// Outcome of checking one inequality lhs <= rhs on a grid.
struct ConditionCheck {
    Verdict verdict = Verdict::indeterminate;
    int grid_points = 0;
    int equality_points = 0;  // |lhs - rhs| <= 1e-9 (|lhs| + |rhs|)
    int violations = 0;
    int unevaluable_points = 0;
    // Strict except at a small isolated set of grid points.
    bool strict = false;
};

struct ConditionReport {
    ConditionCheck phi_concavity;
    ConditionCheck superlinearity;
    bool strictness = false;
    ConditionCheck f_condition;
    ConditionCheck limit_condition;
    std::string sample_grid;

    bool monotone_time_map() const {
        return phi_concavity.verdict == Verdict::pass && superlinearity.verdict == Verdict::pass && strictness;
    }
};

struct SamplingSpec {
    int points = 200;
    double z_max = 1e3;
    double u_min = 1e-6;
    double u_max = 20.0;
    // Isolated equality points tolerated before a check is called non-strict.
    int exceptional_points = 3;
};

class ProblemInstance {
public:
    ProblemInstance(PhiFamily phi, NonlinearityFamily f, const SamplingSpec& grid = {});

    const PhiFamily& phi() const { return phi_; }
    const NonlinearityFamily& f() const { return f_; }
    CaseId case_id() const { return case_id_; }
    const ConditionReport& conditions() const { return conditions_; }

    // B/C with B/C = 0 when C = +inf; only meaningful for finite B.
    ExtendedReal b_over_c() const;
    std::string label() const { return phi_.label() + " / " + f_.label(); }

private:
    PhiFamily phi_;
    NonlinearityFamily f_;
    CaseId case_id_;
    ConditionReport conditions_;
};

CaseId classify_case(const PhiFamily& phi, const NonlinearityFamily& f);
inline CaseId classify_case(const ProblemInstance& p) { return classify_case(p.phi(), p.f()); }

ConditionReport check_conditions(const PhiFamily& phi, const NonlinearityFamily& f, const SamplingSpec& grid = {});
inline ConditionReport check_conditions(const ProblemInstance& p, const SamplingSpec& grid = {}) {
    return check_conditions(p.phi(), p.f(), grid);
}

// K = int_0^B dy / (y Phi^{-1}(B - y)).
ExtendedReal k_integral(const PhiFamily& phi);

}  // namespace quasibif
