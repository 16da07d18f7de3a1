#pragma once

#include <map>
#include <string>
#include <vector>

#include "quasibif/catalog.hpp"
#include "quasibif/gfunction.hpp"

namespace quasibif {

enum class Relation { lt, le, eq, ge, gt };

// L compared against a named L-threshold.
struct LCondition {
    std::string threshold;
    Relation relation;
};

// Open lambda-interval with named endpoints: "0", "inf", "lambda1" or a lambda-threshold name.
struct PatternInterval {
    std::string lo;
    std::string hi;
};

struct Regime {
    std::string label;
    std::vector<LCondition> conditions;
    std::vector<PatternInterval> intervals;  // exactly one solution here, none elsewhere
    bool boundary = false;                   // an equality regime such as L = L^*

    // Named lambda-thresholds in ascending lambda order.
    std::vector<std::string> threshold_names() const;
};

struct TheoremPattern {
    std::string key;  // e.g. "IV-gamma0 f'(0)=0"
    std::vector<Regime> regimes;
    // Stated monotonicity of lambda-thresholds in L: +1 increasing, -1 decreasing.
    std::map<std::string, int> directions;
};

// Key of the governing pattern; the V-beta0 and VI-gamma0 families share the IV patterns.
std::string pattern_key(CaseId c, GType type, const ExtendedReal& f_prime_at_zero);

// nullptr when no pattern is known for the key.
const TheoremPattern* find_pattern(const std::string& key);

const std::vector<TheoremPattern>& all_patterns();

// First regime whose conditions hold with relative tolerance rel_tol; nullptr if none.
const Regime* match_regime(const TheoremPattern& pattern, double L, const std::map<std::string, double>& l_thresholds,
                           double rel_tol = 1e-6);

// Strict L-regimes of a pattern with one representative L strictly inside each.
struct RegimeSample {
    const Regime* regime;
    double L;
};
std::vector<RegimeSample> regime_samples(const TheoremPattern& pattern, const std::map<std::string, double>& l_thresholds);

}  // namespace quasibif
