#include "quasibif/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace quasibif {

namespace {

constexpr const char* s = "lambda_star";
constexpr const char* u = "lambda_upstar";
constexpr const char* d = "lambda_dblstar";
constexpr const char* ds = "lambda_dbl_substar";
constexpr const char* end = "end";

constexpr const char* Ls = "L_star";
constexpr const char* Lu = "L_upstar";
constexpr const char* Ld = "L_dblstar";
constexpr const char* Lds = "L_dbl_substar";

using R = Relation;

Regime reg(std::string label, std::vector<LCondition> c, std::vector<PatternInterval> iv) {
    bool boundary = false;
    for (const auto& x : c) boundary = boundary || x.relation == R::eq;
    return Regime{std::move(label), std::move(c), std::move(iv), boundary};
}

// Regimes written with "end" standing for +inf (f'(0) = 0) or lambda_1 (f'(0) > 0).
std::vector<std::pair<std::string, std::vector<Regime>>> templates() {
    return {
        {"I/II", {reg("any L", {}, {{"0", end}})}},
        {"III", {reg("any L", {}, {{s, end}})}},
        {"IV-alpha0", {reg("any L", {}, {{s, end}})}},
        {"IV-alpha1",
         {
             reg("L<L^*", {{Lu, R::lt}}, {{s, end}}),
             reg("L>=L^*", {{Lu, R::ge}}, {{"0", end}}),
         }},
        {"IV-beta0",
         {
             reg("L>L^*", {{Lu, R::gt}}, {{"0", end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{"0", u}, {u, end}}),
             reg("L<L^*", {{Lu, R::lt}}, {{"0", s}, {u, end}}),
         }},
        {"IV-beta1",
         {
             reg("L>L^*", {{Lu, R::gt}}, {{"0", end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{"0", u}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{"0", s}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{u, end}}),
         }},
        {"IV-gamma0",
         {
             reg("L>L^*", {{Lu, R::gt}}, {{s, end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{s, u}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{u, end}}),
         }},
        {"IV-gamma1",
         {
             reg("L>=L^**", {{Ld, R::ge}}, {{"0", end}}),
             reg("L^*<L<L^**", {{Lu, R::gt}, {Ld, R::lt}}, {{s, end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{s, u}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{u, end}}),
         }},
        {"IV-gamma2",
         {
             reg("L>L^**", {{Ld, R::gt}}, {{"0", end}}),
             reg("L=L^**", {{Ld, R::eq}}, {{"0", u}, {u, end}}),
             reg("L^*<=L<L^**", {{Lu, R::ge}, {Ld, R::lt}}, {{"0", d}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{u, end}}),
         }},
        {"IV-gamma3",
         {
             reg("L>L^*", {{Lu, R::gt}}, {{"0", end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{"0", u}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{u, end}}),
         }},
        {"IV-delta0",
         {
             reg("L>L^**", {{Ld, R::gt}}, {{"0", end}}),
             reg("L=L^**", {{Ld, R::eq}}, {{"0", s}, {s, end}}),
             reg("L_**<L<L^**", {{Lds, R::gt}, {Ld, R::lt}}, {{"0", ds}, {s, end}}),
             reg("L^*<L<=L_**", {{Lu, R::gt}, {Lds, R::le}}, {{s, end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{s, u}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{u, end}}),
         }},
        {"IV-delta1",
         {
             reg("L>L^**", {{Ld, R::gt}}, {{"0", end}}),
             reg("L=L^**", {{Ld, R::eq}}, {{"0", u}, {u, end}}),
             reg("L^*<L<L^**", {{Lu, R::gt}, {Ld, R::lt}}, {{"0", d}, {u, end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{"0", s}, {s, d}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{"0", ds}, {s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{"0", ds}, {u, end}}),
         }},
        {"IV-delta2",
         {
             reg("L>L^**", {{Ld, R::gt}}, {{"0", end}}),
             reg("L=L^**", {{Ld, R::eq}}, {{"0", s}, {s, end}}),
             reg("L^*<L<L^**", {{Lu, R::gt}, {Ld, R::lt}}, {{"0", ds}, {s, end}}),
             reg("L=L^*", {{Lu, R::eq}}, {{"0", ds}, {s, u}, {u, end}}),
             reg("L_*<L<L^*", {{Ls, R::gt}, {Lu, R::lt}}, {{"0", ds}, {s, d}, {u, end}}),
             reg("L<=L_*", {{Ls, R::le}}, {{"0", ds}, {u, end}}),
         }},
    };
}

std::map<std::string, int> directions(const std::string& base) {
    if (base == "III" || base == "IV-alpha0" || base == "IV-alpha1") return {{s, -1}};
    if (base == "IV-beta0" || base == "IV-beta1") return {{u, -1}, {s, 1}};
    if (base.rfind("IV-gamma", 0) == 0) return {{s, -1}, {u, -1}, {d, 1}};
    if (base.rfind("IV-delta", 0) == 0) return {{s, -1}, {u, -1}, {ds, 1}, {d, 1}};
    return {};
}

std::vector<TheoremPattern> build_all() {
    std::vector<TheoremPattern> out;
    for (const auto& [base, regimes] : templates()) {
        for (bool positive : {false, true}) {
            TheoremPattern t;
            t.key = base + (positive ? " f'(0)>0" : " f'(0)=0");
            t.regimes = regimes;
            t.directions = directions(base);
            for (auto& r : t.regimes)
                for (auto& iv : r.intervals) {
                    if (iv.lo == end) iv.lo = positive ? "lambda1" : "inf";
                    if (iv.hi == end) iv.hi = positive ? "lambda1" : "inf";
                }
            out.push_back(std::move(t));
        }
    }
    return out;
}

bool holds(double L, Relation rel, double t, double tol) {
    const bool equal = std::isfinite(t) && std::abs(L - t) <= tol * std::abs(t);
    switch (rel) {
        case R::eq: return equal;
        case R::lt: return !equal && L < t;
        case R::gt: return !equal && L > t;
        case R::le: return equal || L < t;
        case R::ge: return equal || L > t;
    }
    return false;
}

}  // namespace

std::vector<std::string> Regime::threshold_names() const {
    std::vector<std::string> names;
    for (const auto& iv : intervals)
        for (const auto* n : {&iv.lo, &iv.hi}) {
            if (*n == "0" || *n == "inf" || *n == "lambda1") continue;
            if (names.empty() || names.back() != *n) names.push_back(*n);
        }
    return names;
}

const std::vector<TheoremPattern>& all_patterns() {
    static const std::vector<TheoremPattern> table = build_all();
    return table;
}

std::string pattern_key(CaseId c, GType type, const ExtendedReal& f_prime_at_zero) {
    if (f_prime_at_zero.is_infinite()) return "";
    const std::string sign = f_prime_at_zero.value() > 0.0 ? " f'(0)>0" : " f'(0)=0";
    switch (c) {
        case CaseId::I:
        case CaseId::II: return "I/II" + sign;
        case CaseId::III: return "III" + sign;
        case CaseId::IV: return "IV-" + to_string(type) + sign;
        case CaseId::V: return type == GType::beta0 ? "IV-beta0" + sign : "V-" + to_string(type) + sign;
        case CaseId::VI: return type == GType::gamma0 ? "IV-gamma0" + sign : "VI-" + to_string(type) + sign;
    }
    return "";
}

const TheoremPattern* find_pattern(const std::string& key) {
    for (const auto& t : all_patterns())
        if (t.key == key) return &t;
    return nullptr;
}

const Regime* match_regime(const TheoremPattern& pattern, double L, const std::map<std::string, double>& l_thresholds,
                           double rel_tol) {
    for (const auto& r : pattern.regimes) {
        bool ok = true;
        for (const auto& c : r.conditions) {
            const auto it = l_thresholds.find(c.threshold);
            if (it == l_thresholds.end() || !holds(L, c.relation, it->second, rel_tol)) {
                ok = false;
                break;
            }
        }
        if (ok) return &r;
    }
    return nullptr;
}

std::vector<RegimeSample> regime_samples(const TheoremPattern& pattern,
                                         const std::map<std::string, double>& l_thresholds) {
    std::set<double> values;
    for (const auto& r : pattern.regimes)
        for (const auto& c : r.conditions) {
            const auto it = l_thresholds.find(c.threshold);
            if (it != l_thresholds.end() && std::isfinite(it->second) && it->second > 0.0) values.insert(it->second);
        }
    std::vector<double> candidates;
    if (values.empty()) {
        candidates.push_back(1.0);
    } else {
        const std::vector<double> v(values.begin(), values.end());
        candidates.push_back(0.5 * v.front());
        for (std::size_t i = 0; i + 1 < v.size(); ++i) candidates.push_back(0.5 * (v[i] + v[i + 1]));
        candidates.push_back(1.5 * v.back());
    }
    std::vector<RegimeSample> out;
    for (double L : candidates) {
        const Regime* r = match_regime(pattern, L, l_thresholds);
        if (r == nullptr || r->boundary) continue;
        const bool seen = std::any_of(out.begin(), out.end(), [&](const RegimeSample& x) { return x.regime == r; });
        if (!seen) out.push_back({r, L});
    }
    return out;
}

}  // namespace quasibif
