#pragma once

#include <map>
#include <string>
#include <vector>

#include "quasibif/bifurcation.hpp"
#include "quasibif/catalog.hpp"
#include "quasibif/gfunction.hpp"
#include "quasibif/nonlinearity.hpp"
#include "quasibif/patterns.hpp"

namespace quasibif {

// A cataloged (phi_k, f) pair with its expected classification.
struct RegressionInstance {
    std::string id;
    double phi_k = 3.0;
    FamilyDescriptor f;
    CaseId expected_case = CaseId::IV;
    GType expected_type = GType::unclassified;
};

// The 16 published g-type examples.
const std::vector<RegressionInstance>& g_type_table();

// One cell of the pattern matrix: (case, type, sign of f'(0)).
struct MatrixCell {
    std::string id;
    std::string subset;  // case123, iv-alpha, iv-beta, iv-gamma, iv-delta, v-vi
    double phi_k = 3.0;
    FamilyDescriptor f;
    bool f_prime_positive = false;
};

const std::vector<MatrixCell>& regression_matrix();

// Cells of the alpha0, beta0 and gamma0 types used for threshold monotonicity.
std::vector<MatrixCell> monotone_cells();

ProblemInstance make_instance(double phi_k, const FamilyDescriptor& f);

struct CellCheck {
    std::string cell;
    std::string label;
    std::string pattern_key;
    std::string regime;
    double L = 0.0;
    Verdict verdict = Verdict::fail;
    std::string report;
};

// One diagram per strict L-regime of the governing pattern, each checked by verify_pattern.
std::vector<CellCheck> verify_cell(const MatrixCell& cell, const LambdaGrid& grid = {});

// per_regime values of L strictly inside each strict regime, ascending.
std::vector<double> monotonicity_L_values(const TheoremPattern& pattern,
                                          const std::map<std::string, double>& l_thresholds, int per_regime = 8);

}  // namespace quasibif
