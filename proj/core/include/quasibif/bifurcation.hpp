#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quasibif/catalog.hpp"
#include "quasibif/gfunction.hpp"
#include "quasibif/patterns.hpp"

namespace quasibif {

struct DiagramSpec {
    ProblemInstance problem;
    double half_length = 0.0;
    std::optional<double> lambda1;  // phi'(0)/f'(0) (pi/2L)^2 when 0 < f'(0) < inf
};

DiagramSpec make_diagram_spec(ProblemInstance p, double half_length);

// phi'(0)/f'(0) (pi/2L)^2, or nullopt unless 0 < f'(0) < inf.
std::optional<double> lambda_one(const ProblemInstance& p, double half_length);

// unresolved: the root or g(lambda) lies beyond double-precision resolution of r near r*.
enum class SolveStatus { unique, none, degenerate, unresolved };
std::string to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::none;
    std::optional<double> r;
    std::string note;
};

// Unique r with T(r, lambda) = L. Refuses (ParameterError) when the time map is not
// strictly monotone unless forced; a constant time map is reported as degenerate.
SolveResult solve_r(const ProblemInstance& p, double lambda, double L, double tol = 1e-10, bool force = false);

struct NamedRoot {
    std::string name;
    GRoot root;
};

struct ThresholdSet {
    std::string pattern_key;            // empty when no governing pattern exists
    std::string regime;                 // label of the matched L-regime
    std::map<std::string, double> lambdas;  // lambda_star, lambda_upstar, ... and lambda1
    std::vector<NamedRoot> roots;       // ascending lambda
    std::optional<double> lambda1;
    bool named = false;                 // root count matched the regime's names
    std::string diagnostics;
};

ThresholdSet thresholds_for_L(const ProblemInstance& p, const GProfile& profile, double L);

struct LambdaInterval {
    double lo = 0.0;
    double hi = 0.0;
    std::string lo_name;
    std::string hi_name;
    int count = 0;  // -1 when no grid point in the piece could be resolved
    bool lo_closed = false;
    bool hi_closed = false;
};

struct BranchPoint {
    double lambda = 0.0;
    double r = 0.0;
    bool classical = true;
};

struct BlowupPoint {
    double lambda = 0.0;
    double r = 0.0;
};

struct LambdaGrid {
    int per_decade = 256;
    double lo = 0.0;  // 0 selects min(1e-4, 0.01 * smallest threshold)
    double hi = 0.0;  // 0 selects 10 * max(lambda1, largest threshold)
    int threads = 0;
};

struct BifurcationDiagram {
    DiagramSpec spec;
    GProfile profile;
    ThresholdSet thresholds;
    std::vector<LambdaInterval> intervals;  // covers (0, +inf) in ascending order
    std::vector<BranchPoint> branch;
    std::vector<BlowupPoint> blowup_curve;
    std::string regime;
    std::vector<double> grid;
    double tol = 0.0;
    std::string diagnostics;
};

BifurcationDiagram build_diagram(const DiagramSpec& spec, const LambdaGrid& grid = {}, double tol = 1e-10,
                                 bool force = false);
BifurcationDiagram build_diagram(const DiagramSpec& spec, const GProfile& profile, const LambdaGrid& grid = {},
                                 double tol = 1e-10, bool force = false);

struct PatternVerdict {
    Verdict verdict = Verdict::fail;
    std::string pattern_key;
    std::string regime;
    std::string report;
};

PatternVerdict verify_pattern(const BifurcationDiagram& d);

struct MonotonicityEntry {
    std::string regime;
    std::string name;
    int expected_direction = 0;  // +1 increasing in L, -1 decreasing
    int stated_direction = 0;    // from the governing pattern; 0 when not stated
    std::vector<std::pair<double, double>> samples;  // (L, lambda)
    bool pass = false;
};

struct MonotonicityReport {
    std::vector<MonotonicityEntry> entries;
    bool pass = false;
};

// Recomputes thresholds over the L values (split where the regime changes) and checks
// that roots on increasing segments of g grow with L and roots on decreasing segments shrink,
// that this agrees with the pattern's stated directions, and that lambda1 decreases.
MonotonicityReport threshold_monotonicity_check(const ProblemInstance& p, const GProfile& profile,
                                                std::vector<double> L_values);

}  // namespace quasibif
