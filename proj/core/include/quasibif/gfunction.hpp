#pragma once

#include <map>
#include <string>
#include <vector>

#include "quasibif/catalog.hpp"
#include "quasibif/extended_real.hpp"

namespace quasibif {

enum class GType {
    alpha0,
    alpha1,
    beta0,
    beta1,
    gamma0,
    gamma1,
    gamma2,
    gamma3,
    delta0,
    delta1,
    delta2,
    delta3,
    unclassified
};

std::string to_string(GType t);

enum class ExtremumKind { min, max };

struct GExtremum {
    double lambda = 0.0;
    double r = 0.0;  // location in the r parametrization (A for the Case VI junction)
    double g_value = 0.0;
    ExtremumKind kind = ExtremumKind::max;
    bool junction = false;  // the Case VI corner at lambda = B/C
};

struct GSample {
    double lambda = 0.0;
    double g_value = 0.0;
    double r = 0.0;  // g_tilde(r) = g(lambda); equals A on the Case VI branch lambda <= B/C
    double g_tilde_value = 0.0;
};

struct GLimits {
    ExtendedReal at_zero;
    double at_infinity = 0.0;
    bool indeterminate = false;
};

struct GridSpec {
    double r_min = 1e-4;
    double r_max = 0.0;  // 0 selects min(A(1 - 1e-6), 1e3, overflow radius)
    int points = 400;
    unsigned threads = 0;
};

// A maximal lambda-interval on which g is monotone.
struct GSegment {
    double lambda_lo = 0.0;  // 0 allowed
    double lambda_hi = 0.0;  // +inf allowed
    double g_lo = 0.0;       // value (or limit) at lambda_lo; may be +inf
    double g_hi = 0.0;
    bool r_parametrized = true;  // solved through g_tilde on [r_hi_end, r_lo_end]
    double r_at_lo = 0.0;        // r matching lambda_lo (r decreases as lambda grows)
    double r_at_hi = 0.0;
};

struct GProfile {
    CaseId case_id = CaseId::IV;
    std::vector<GSample> samples;  // lambda ascending
    ExtendedReal limit_at_zero;
    double limit_at_infinity = 0.0;
    bool limit_indeterminate = false;
    std::vector<GExtremum> extrema;  // lambda ascending
    GType g_type = GType::unclassified;
    bool boundary_flag = false;
    std::map<std::string, double> thresholds;  // L_star, L_upstar, L_dblstar, L_dbl_substar
    std::vector<GSegment> segments;
    std::string diagnostics;
    double r_grid_max = 0.0;
};

struct ClassifyOptions {
    double band = 1e-4;
    // When true, values inside the band produce gamma3/delta3 instead of the
    // open-type neighbour flagged with boundary_flag.
    bool resolve_boundary_types = false;
};

struct GClassification {
    GType type = GType::unclassified;
    bool boundary_flag = false;
    std::string diagnostics;
};

// g(lambda); +inf marks a detected divergence.
ExtendedReal g_eval(const ProblemInstance& p, double lambda, double tol = 1e-9);

// g_tilde(r) = g(B / F(r)), evaluated directly in r.
double g_tilde_eval(const ProblemInstance& p, double r, double tol = 1e-9);

GLimits g_limits(const ProblemInstance& p);

// Samples g_tilde, locates and refines extrema, fills limits, type and thresholds.
GProfile find_extrema(const ProblemInstance& p, const GridSpec& search = {}, double tol = 1e-9);

// Profile for any case: Cases I/II carry no segments (g vanishes), Case III a single
// decreasing segment in lambda, Cases IV-VI the result of find_extrema.
GProfile g_profile(const ProblemInstance& p, const GridSpec& search = {}, double tol = 1e-9);

GClassification classify_g_type(const GProfile& profile, const ClassifyOptions& options = {});

// L-threshold values named for the given type (keys L_star, L_upstar, L_dblstar, L_dbl_substar).
std::map<std::string, double> type_thresholds(GType type, const std::vector<GExtremum>& extrema,
                                              const ExtendedReal& limit_at_zero);

struct GRoot {
    double lambda = 0.0;
    double r = 0.0;
    bool increasing = false;  // g increasing through the root
    bool tangency = false;    // L equals a local extreme value within tolerance
};

// All solutions of g(lambda) = L in ascending lambda, one per monotone segment
// (tangencies reported once at the extremum).
std::vector<GRoot> solve_g_equals(const ProblemInstance& p, const GProfile& profile, double L, double rel_tol = 1e-6);

}  // namespace quasibif
