#include "quasibif/regression.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <set>

namespace quasibif {

namespace {

FamilyDescriptor fd(std::string kind, std::map<std::string, double> params = {}) {
    return {std::move(kind), std::move(params), {}};
}

FamilyDescriptor sum(std::vector<FamilyDescriptor> terms) { return {"sum", {}, std::move(terms)}; }

}  // namespace

const std::vector<RegressionInstance>& g_type_table() {
    static const std::vector<RegressionInstance> table = {
        {"exp(u^2)-1", 3, fd("gauss_minus_one"), CaseId::IV, GType::beta0},
        {"exp(u^2)+u-1", 3, fd("gauss_plus_power", {{"p", 1}}), CaseId::IV, GType::beta0},
        {"exp(u)+u-1", 3, fd("exp_plus_power", {{"p", 1}}), CaseId::IV, GType::beta1},
        {"exp(u)+u^2-u-1", 3, fd("exp_minus_linear_plus_power", {{"p", 2}}), CaseId::IV, GType::beta1},
        {"u^2+u^7", 3, fd("power_sum", {{"p", 2}, {"q", 7}}), CaseId::IV, GType::gamma0},
        {"u+u^6", 3, fd("power_sum", {{"p", 1}, {"q", 6}}), CaseId::IV, GType::gamma0},
        {"u^7 exp(u)+u^2", 3, fd("power_exp_plus_power", {{"p", 7}, {"k", 1}, {"q", 2}}), CaseId::IV, GType::gamma1},
        {"u^5 exp(u)+u", 3, fd("power_exp_plus_power", {{"p", 5}, {"k", 1}, {"q", 1}}), CaseId::IV, GType::gamma1},
        {"u^7 exp(12u)+u^2", 3, fd("power_exp_plus_power", {{"p", 7}, {"k", 12}, {"q", 2}}), CaseId::IV,
         GType::gamma2},
        {"u^5 exp(8u)+u", 3, fd("power_exp_plus_power", {{"p", 5}, {"k", 8}, {"q", 1}}), CaseId::IV, GType::gamma2},
        {"exp(u)+u^8-1", 3, fd("exp_plus_power", {{"p", 8}}), CaseId::IV, GType::delta0},
        {"exp(u)+u^8-u-1", 3, fd("exp_minus_linear_plus_power", {{"p", 8}}), CaseId::IV, GType::delta0},
        {"exp(u^2)+u^8+u-1", 3, fd("gauss_plus_power_plus_linear", {{"p", 8}}), CaseId::IV, GType::delta1},
        {"exp(u^2)+u^8-1", 3, fd("gauss_plus_power", {{"p", 8}}), CaseId::IV, GType::delta2},
        {"tan u", 3, fd("tan"), CaseId::V, GType::beta0},
        {"(1-u)^(-1/2)-1", 3, fd("inv_sqrt_linear"), CaseId::VI, GType::gamma0},
    };
    return table;
}

const std::vector<MatrixCell>& regression_matrix() {
    static const std::vector<MatrixCell> cells = {
        {"I f'(0)=0", "case123", 2, fd("power", {{"p", 2}}), false},
        {"I f'(0)>0", "case123", 2, fd("exp_minus_one"), true},
        {"II f'(0)=0", "case123", 2, fd("singular_power", {{"p", 2}, {"q", 2}}), false},
        {"II f'(0)>0", "case123", 2, fd("singular_power", {{"p", 2}, {"q", 1}}), true},
        {"III f'(0)=0", "case123", 2, fd("inv_sqrt_quadratic"), false},
        {"III f'(0)>0", "case123", 2, fd("inv_sqrt_linear"), true},
        {"IV-alpha0 f'(0)=0", "iv-alpha", 3, fd("power", {{"p", 2}}), false},
        {"IV-alpha0 f'(0)>0", "iv-alpha", 3, fd("shifted_power", {{"p", 2}}), true},
        {"IV-alpha1 f'(0)=0", "iv-alpha", 3, fd("exp_minus_linear"), false},
        {"IV-alpha1 f'(0)>0", "iv-alpha", 3, fd("exp_minus_one"), true},
        {"IV-beta0 f'(0)=0", "iv-beta", 3, fd("gauss_minus_one"), false},
        {"IV-beta0 f'(0)>0", "iv-beta", 3, fd("gauss_plus_power", {{"p", 1}}), true},
        {"IV-beta1 f'(0)=0", "iv-beta", 3, fd("exp_minus_linear_plus_power", {{"p", 2}}), false},
        {"IV-beta1 f'(0)>0", "iv-beta", 3, fd("exp_plus_power", {{"p", 1}}), true},
        {"IV-gamma0 f'(0)=0", "iv-gamma", 3, fd("power_sum", {{"p", 2}, {"q", 7}}), false},
        {"IV-gamma0 f'(0)>0", "iv-gamma", 3, fd("power_sum", {{"p", 1}, {"q", 6}}), true},
        {"IV-gamma1 f'(0)=0", "iv-gamma", 3, fd("power_exp_plus_power", {{"p", 7}, {"k", 1}, {"q", 2}}), false},
        {"IV-gamma1 f'(0)>0", "iv-gamma", 3, fd("power_exp_plus_power", {{"p", 5}, {"k", 1}, {"q", 1}}), true},
        {"IV-gamma2 f'(0)=0", "iv-gamma", 3, fd("power_exp_plus_power", {{"p", 7}, {"k", 12}, {"q", 2}}), false},
        {"IV-gamma2 f'(0)>0", "iv-gamma", 3, fd("power_exp_plus_power", {{"p", 5}, {"k", 8}, {"q", 1}}), true},
        {"IV-delta0 f'(0)=0", "iv-delta", 3, fd("exp_minus_linear_plus_power", {{"p", 8}}), false},
        {"IV-delta0 f'(0)>0", "iv-delta", 3, fd("exp_plus_power", {{"p", 8}}), true},
        {"IV-delta1 f'(0)=0", "iv-delta", 3,
         sum({fd("gauss_tail"), fd("power", {{"p", 8}}), fd("power", {{"p", 1.1}})}), false},
        {"IV-delta1 f'(0)>0", "iv-delta", 3, fd("gauss_plus_power_plus_linear", {{"p", 8}}), true},
        {"IV-delta2 f'(0)=0", "iv-delta", 3, fd("gauss_plus_power", {{"p", 8}}), false},
        {"IV-delta2 f'(0)>0", "iv-delta", 3,
         sum({fd("gauss_tail"), fd("power", {{"p", 8}}), fd("power", {{"p", 1}, {"c", 0.01}})}), true},
        {"V-beta0 f'(0)=0", "v-vi", 3, fd("tan_power", {{"q", 2}}), false},
        {"V-beta0 f'(0)>0", "v-vi", 3, fd("tan"), true},
        {"VI-gamma0 f'(0)=0", "v-vi", 3, fd("inv_sqrt_quadratic"), false},
        {"VI-gamma0 f'(0)>0", "v-vi", 3, fd("inv_sqrt_linear"), true},
    };
    return cells;
}

std::vector<MatrixCell> monotone_cells() {
    std::vector<MatrixCell> out;
    for (const auto& c : regression_matrix())
        if (c.id.rfind("IV-alpha0", 0) == 0 || c.id.rfind("IV-beta0", 0) == 0 || c.id.rfind("IV-gamma0", 0) == 0)
            out.push_back(c);
    return out;
}

ProblemInstance make_instance(double phi_k, const FamilyDescriptor& f) {
    return ProblemInstance(make_phi_k(phi_k), make_f(f));
}

std::vector<CellCheck> verify_cell(const MatrixCell& cell, const LambdaGrid& grid) {
    std::vector<CellCheck> out;
    const ProblemInstance p = make_instance(cell.phi_k, cell.f);
    const GProfile prof = g_profile(p);
    const std::string key = pattern_key(p.case_id(), prof.g_type, p.f().f_prime_at_zero());
    const TheoremPattern* pat = find_pattern(key);
    if (pat == nullptr) {
        out.push_back({cell.id, p.label(), key, "", 0.0, Verdict::fail, "no governing pattern for g-type " +
                                                                            to_string(prof.g_type)});
        return out;
    }
    for (const auto& rs : regime_samples(*pat, prof.thresholds)) {
        CellCheck c{cell.id, p.label(), key, rs.regime->label, rs.L, Verdict::fail, ""};
        try {
            const auto d = build_diagram(make_diagram_spec(p, rs.L), prof, grid);
            const auto v = verify_pattern(d);
            c.verdict = v.verdict;
            c.report = v.report;
        } catch (const std::exception& e) {
            c.report = e.what();
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<double> monotonicity_L_values(const TheoremPattern& pattern,
                                          const std::map<std::string, double>& l_thresholds, int per_regime) {
    std::set<double> bounds;
    for (const auto& [name, v] : l_thresholds)
        if (std::isfinite(v) && v > 0.0) bounds.insert(v);
    std::vector<double> out;
    for (const auto& rs : regime_samples(pattern, l_thresholds)) {
        double lo = 0.0;
        double hi = std::numeric_limits<double>::infinity();
        for (double b : bounds) {
            if (b < rs.L) lo = b;
            if (b > rs.L && !std::isfinite(hi)) hi = b;
        }
        for (int i = 1; i <= per_regime; ++i) {
            const double t = static_cast<double>(i) / (per_regime + 1);
            if (std::isfinite(hi)) out.push_back(lo + t * (hi - lo));
            else if (lo > 0.0) out.push_back(lo * (1.0 + 2.0 * t));
            else out.push_back(0.25 * std::pow(16.0, t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace quasibif
