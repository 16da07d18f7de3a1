#include "quasibif/bifurcation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quasibif/errors.hpp"
#include "quasibif/parallel.hpp"
#include "quasibif/roots.hpp"
#include "quasibif/timemap.hpp"

namespace quasibif {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double t_at(const ProblemInstance& p, double r, double lambda, double tol) {
    return time_map(p, r, lambda, tol).t_value;
}

// A constant time map (linear flux with linear f) makes every r a solution at one lambda.
std::optional<double> constant_time_map(const ProblemInstance& p, double lambda, double tol) {
    const auto dom = domain(p, lambda);
    const double top = dom.right.is_finite() ? 0.9 * dom.right.value() : 10.0;
    const double t0 = t_at(p, top * 1e-3, lambda, tol);
    for (double frac : {0.03, 0.3, 1.0}) {
        const double t = t_at(p, top * frac, lambda, tol);
        if (std::abs(t - t0) > 1e-8 * std::abs(t0)) return std::nullopt;
    }
    return t0;
}

struct Piece {
    double lo, hi;
    std::string lo_name, hi_name;
    int count = -1;
};

int count_of(const SolveResult& s) {
    switch (s.status) {
        case SolveStatus::unique: return 1;
        case SolveStatus::unresolved: return -1;
        default: return 0;
    }
}

int count_at(const ProblemInstance& p, double lambda, double L, double tol, bool force) {
    return count_of(solve_r(p, lambda, L, tol, force));
}

std::string fmt_value(double v) { return std::isfinite(v) ? fmt::format("{:.10g}", v) : std::string("inf"); }

}  // namespace

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::unique: return "unique";
        case SolveStatus::none: return "none";
        case SolveStatus::degenerate: return "degenerate";
        case SolveStatus::unresolved: return "unresolved";
    }
    return "?";
}

std::optional<double> lambda_one(const ProblemInstance& p, double half_length) {
    const auto& fp = p.f().f_prime_at_zero();
    if (fp.is_infinite() || !(fp.value() > 0.0)) return std::nullopt;
    const double q = std::numbers::pi / (2.0 * half_length);
    return p.phi().deriv_at_zero() / fp.value() * q * q;
}

DiagramSpec make_diagram_spec(ProblemInstance p, double half_length) {
    if (!(half_length > 0.0)) throw ParameterError("half-length L must be positive");
    auto l1 = lambda_one(p, half_length);
    return DiagramSpec{std::move(p), half_length, l1};
}

SolveResult solve_r(const ProblemInstance& p, double lambda, double L, double tol, bool force) {
    if (!(lambda > 0.0) || !(L > 0.0)) throw DomainError("solve_r requires lambda > 0 and L > 0");
    if (!p.conditions().monotone_time_map()) {
        if (auto t = constant_time_map(p, lambda, tol)) {
            if (std::abs(*t - L) <= 1e-8 * L)
                return {SolveStatus::degenerate, std::nullopt, "time map is constant and equals L: every r solves"};
            return {SolveStatus::none, std::nullopt, "time map is constant and differs from L"};
        }
        if (!force) throw ParameterError("time map is not strictly monotone; uniqueness is not guaranteed");
    }
    const auto left = left_limit(p, lambda);
    if (left.is_finite() && L >= left.value()) return {SolveStatus::none, std::nullopt, "L >= lim_{r->0} T"};
    ExtendedReal gv;
    try {
        gv = g_eval(p, lambda, std::max(tol, 1e-10));
    } catch (const DomainError& e) {
        return {SolveStatus::unresolved, std::nullopt, e.what()};
    }
    if (gv.is_finite() && L <= gv.value()) return {SolveStatus::none, std::nullopt, "L <= g(lambda)"};

    const auto dom = domain(p, lambda);
    auto h = [&](double x) { return t_at(p, std::exp(x), lambda, tol) - L; };
    double rb;
    double hb;
    if (dom.right.is_finite()) {
        const double right = dom.right.value();
        if (dom.right_closed) {
            rb = right;
            hb = h(std::log(rb));
        } else {
            double eps = 1e-3;
            rb = right * (1.0 - eps);
            hb = h(std::log(rb));
            while (hb >= 0.0 && eps > 1e-12) {
                eps *= 1e-3;
                rb = right * (1.0 - eps);
                hb = h(std::log(rb));
            }
        }
    } else {
        const double cap = p.f().overflow_radius();
        rb = std::min(1.0, cap);
        hb = h(std::log(rb));
        while (hb >= 0.0 && rb < cap) {
            rb = std::min(4.0 * rb, cap);
            hb = h(std::log(rb));
        }
    }
    if (hb >= 0.0) return {SolveStatus::unresolved, std::nullopt, "root closer to r* than the representable range"};
    double ra = std::min(1e-3, 0.5 * rb);
    double ha = h(std::log(ra));
    while (ha <= 0.0 && ra > 1e-250) {
        ra *= 1e-2;
        ha = h(std::log(ra));
    }
    if (ha <= 0.0) return {SolveStatus::unresolved, std::nullopt, "root below the representable range of r"};
    const double xa = std::log(ra), xb = std::log(rb);
    const auto res = brent(h, xa, xb, ha, hb, 1e-14);
    const double xr = res.x;
    if (h(0.5 * (xa + xr)) < 0.0 || h(0.5 * (xr + xb)) > 0.0 || h(xr + 0.9 * (xb - xr)) > 0.0)
        throw AccuracyError("time map crosses L more than once", std::exp(xr), 0.0);
    return {SolveStatus::unique, std::exp(xr), ""};
}

ThresholdSet thresholds_for_L(const ProblemInstance& p, const GProfile& profile, double L) {
    ThresholdSet out;
    out.lambda1 = lambda_one(p, L);
    if (out.lambda1) out.lambdas["lambda1"] = *out.lambda1;
    const auto roots = solve_g_equals(p, profile, L);
    out.pattern_key = pattern_key(profile.case_id, profile.g_type, p.f().f_prime_at_zero());
    const TheoremPattern* pattern = find_pattern(out.pattern_key);
    const Regime* regime = pattern ? match_regime(*pattern, L, profile.thresholds) : nullptr;
    if (!pattern) out.diagnostics = "no governing pattern for " + out.pattern_key;
    else if (!regime) out.diagnostics = "L matches no regime of " + out.pattern_key;

    std::vector<GRoot> kept = roots;
    std::vector<std::string> names;
    if (regime) {
        out.regime = regime->label;
        names = regime->threshold_names();
        // Tangencies at extrema that are not regime thresholds (L = L_* in an L <= L_* regime).
        for (std::size_t i = 0; kept.size() > names.size() && i < kept.size();) {
            if (kept[i].tangency) kept.erase(kept.begin() + static_cast<long>(i));
            else ++i;
        }
        out.named = kept.size() == names.size();
        if (!out.named)
            out.diagnostics = fmt::format("regime {} names {} thresholds but g = L has {} roots", regime->label,
                                          names.size(), kept.size());
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const std::string name = out.named ? names[i] : fmt::format("root{}", i + 1);
        out.roots.push_back({name, kept[i]});
        out.lambdas[name] = kept[i].lambda;
    }
    return out;
}

BifurcationDiagram build_diagram(const DiagramSpec& spec, const LambdaGrid& grid, double tol, bool force) {
    return build_diagram(spec, g_profile(spec.problem), grid, tol, force);
}

BifurcationDiagram build_diagram(const DiagramSpec& spec, const GProfile& profile, const LambdaGrid& grid, double tol,
                                 bool force) {
    const auto& p = spec.problem;
    const double L = spec.half_length;
    if (!p.conditions().monotone_time_map() && !force)
        throw ParameterError("time map is not strictly monotone; the diagram is not determined by g");
    BifurcationDiagram d{spec, profile, thresholds_for_L(p, profile, L), {}, {}, {}, "", {}, tol, ""};
    d.regime = d.thresholds.regime;
    d.diagnostics = d.thresholds.diagnostics;

    std::vector<std::pair<double, std::string>> bounds;
    for (const auto& nr : d.thresholds.roots) bounds.push_back({nr.root.lambda, nr.name});
    if (spec.lambda1) bounds.push_back({*spec.lambda1, "lambda1"});
    std::sort(bounds.begin(), bounds.end());

    double lo = grid.lo, hi = grid.hi;
    if (lo <= 0.0) lo = bounds.empty() ? 1e-4 : std::min(1e-4, 0.01 * bounds.front().first);
    if (hi <= 0.0) hi = bounds.empty() ? 1e2 : 10.0 * bounds.back().first;
    hi = std::max(hi, 10.0 * lo);
    const int n = std::max(2, static_cast<int>(std::ceil(grid.per_decade * std::log10(hi / lo))) + 1);
    d.grid.resize(n);
    for (int i = 0; i < n; ++i) d.grid[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));

    const auto solved = parallel_map<SolveResult>(
        d.grid.size(), [&](std::size_t i) { return solve_r(p, d.grid[i], L, tol, force); }, grid.threads);
    std::vector<int> counts(n);
    int unresolved = 0;
    double unresolved_lo = inf, unresolved_hi = 0.0;
    for (int i = 0; i < n; ++i) {
        counts[i] = count_of(solved[i]);
        if (counts[i] < 0) {
            ++unresolved;
            unresolved_lo = std::min(unresolved_lo, d.grid[i]);
            unresolved_hi = std::max(unresolved_hi, d.grid[i]);
        }
    }
    if (unresolved > 0)
        d.diagnostics += fmt::format("{}{} grid points in [{:.6g}, {:.6g}] unresolved in double precision",
                                     d.diagnostics.empty() ? "" : "; ", unresolved, unresolved_lo, unresolved_hi);

    // Pieces between consecutive named boundaries, split further wherever the grid disagrees.
    std::vector<Piece> pieces;
    {
        double a = 0.0;
        std::string an = "0";
        for (const auto& [b, bn] : bounds) {
            pieces.push_back({a, b, an, bn});
            a = b;
            an = bn;
        }
        pieces.push_back({a, inf, an, "inf"});
    }
    std::vector<Piece> resolved;
    for (auto piece : pieces) {
        std::vector<int> idx;
        for (int i = 0; i < n; ++i) {
            const double x = d.grid[i];
            if (x > piece.lo * (1.0 + 1e-9) && x < piece.hi * (1.0 - 1e-9) && counts[i] >= 0) idx.push_back(i);
        }
        if (idx.empty()) {
            const double mid = piece.lo == 0.0 ? 0.1 * piece.hi
                               : std::isinf(piece.hi) ? 10.0 * piece.lo
                                                      : std::sqrt(piece.lo * piece.hi);
            piece.count = count_at(p, mid, L, tol, force);
            resolved.push_back(piece);
            continue;
        }
        std::size_t k = 0;
        Piece cur = piece;
        cur.count = counts[idx[0]];
        for (k = 1; k < idx.size(); ++k) {
            if (counts[idx[k]] == cur.count) continue;
            double a = std::log(d.grid[idx[k - 1]]), b = std::log(d.grid[idx[k]]);
            const int ca = counts[idx[k - 1]];
            for (int it = 0; it < 60 && b - a > 1e-12; ++it) {
                const double m = 0.5 * (a + b);
                (count_at(p, std::exp(m), L, tol, force) == ca ? a : b) = m;
            }
            const double cut = std::exp(0.5 * (a + b));
            cur.hi = cut;
            cur.hi_name = "unnamed";
            resolved.push_back(cur);
            d.diagnostics += fmt::format("{}count changes at unnamed lambda = {:.10g}", d.diagnostics.empty() ? "" : "; ", cut);
            cur = Piece{cut, piece.hi, "unnamed", piece.hi_name, counts[idx[k]]};
        }
        resolved.push_back(cur);
    }

    // Zero-count neighbours merge (their common boundary carries no solution either).
    for (const auto& pc : resolved) {
        if (!d.intervals.empty() && pc.count == 0 && d.intervals.back().count == 0) {
            d.intervals.back().hi = pc.hi;
            d.intervals.back().hi_name = pc.hi_name;
            d.intervals.back().hi_closed = std::isfinite(pc.hi);
            continue;
        }
        LambdaInterval iv{pc.lo, pc.hi, pc.lo_name, pc.hi_name, pc.count, false, false};
        if (pc.count == 0) {
            iv.lo_closed = pc.lo > 0.0;
            iv.hi_closed = std::isfinite(pc.hi);
        }
        d.intervals.push_back(iv);
    }

    for (int i = 0; i < n; ++i)
        if (solved[i].status == SolveStatus::unique) d.branch.push_back({d.grid[i], *solved[i].r, true});
    // Non-classical solutions where the branch meets the blow-up curve (g(lambda) = L with r* in I).
    for (const auto& nr : d.thresholds.roots) {
        const auto dom = domain(p, nr.root.lambda);
        if (dom.right_closed && dom.right.is_finite()) d.branch.push_back({nr.root.lambda, dom.right.value(), false});
    }
    std::sort(d.branch.begin(), d.branch.end(), [](const BranchPoint& a, const BranchPoint& b) { return a.lambda < b.lambda; });

    if (p.phi().b_constant().is_finite()) {
        const double bc = p.b_over_c().value();
        for (double x : d.grid)
            if (x > bc) d.blowup_curve.push_back({x, blow_up_radius(p, x)});
    }
    return d;
}

PatternVerdict verify_pattern(const BifurcationDiagram& d) {
    PatternVerdict v;
    v.pattern_key = d.thresholds.pattern_key;
    v.regime = d.regime;
    const TheoremPattern* pattern = find_pattern(v.pattern_key);
    if (!pattern) {
        v.verdict = Verdict::not_applicable;
        v.report = "no governing theorem for " + (v.pattern_key.empty() ? std::string("this family") : v.pattern_key);
        return v;
    }
    const Regime* regime = nullptr;
    for (const auto& r : pattern->regimes)
        if (r.label == d.regime) regime = &r;
    if (!regime) {
        v.report = "L matches no regime: " + d.diagnostics;
        return v;
    }
    if (!d.thresholds.named) {
        v.report = d.thresholds.diagnostics;
        return v;
    }
    auto value_of = [&](const std::string& name) -> double {
        if (name == "0") return 0.0;
        if (name == "inf") return inf;
        const auto it = d.thresholds.lambdas.find(name);
        return it == d.thresholds.lambdas.end() ? std::nan("") : it->second;
    };
    std::vector<const LambdaInterval*> ones;
    for (const auto& iv : d.intervals)
        if (iv.count == 1) ones.push_back(&iv);
    std::string expected, computed;
    for (const auto& iv : regime->intervals)
        expected += fmt::format("({}, {}) ", iv.lo, iv.hi);
    for (const auto* iv : ones) computed += fmt::format("({}, {}) ", iv->lo_name, iv->hi_name);
    if (ones.size() != regime->intervals.size()) {
        v.report = fmt::format("expected {} solution intervals [{}], computed {} [{}]", regime->intervals.size(),
                               expected, ones.size(), computed);
        return v;
    }
    for (std::size_t i = 0; i < ones.size(); ++i) {
        const auto& want = regime->intervals[i];
        const auto& got = *ones[i];
        const double wl = value_of(want.lo), wh = value_of(want.hi);
        auto same = [](double a, double b) {
            if (std::isinf(a) || std::isinf(b)) return a == b;
            return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
        };
        if (want.lo != got.lo_name || want.hi != got.hi_name || !same(wl, got.lo) || !same(wh, got.hi)) {
            v.report = fmt::format("interval {} mismatch: expected ({}, {}) = ({}, {}), computed ({}, {}) = ({}, {})", i + 1,
                                   want.lo, want.hi, fmt_value(wl), fmt_value(wh), got.lo_name, got.hi_name,
                                   fmt_value(got.lo), fmt_value(got.hi));
            return v;
        }
    }
    v.verdict = Verdict::pass;
    v.report = "exactly one solution on " + (computed.empty() ? std::string("no interval") : computed) + "and none elsewhere";
    return v;
}

MonotonicityReport threshold_monotonicity_check(const ProblemInstance& p, const GProfile& profile,
                                                std::vector<double> L_values) {
    MonotonicityReport rep;
    std::sort(L_values.begin(), L_values.end());
    struct Row {
        double L;
        ThresholdSet t;
    };
    std::vector<std::vector<Row>> runs;
    for (double L : L_values) {
        auto t = thresholds_for_L(p, profile, L);
        if (runs.empty() || runs.back().back().t.regime != t.regime) runs.emplace_back();
        runs.back().push_back({L, std::move(t)});
    }
    rep.pass = true;
    const TheoremPattern* pattern = nullptr;
    if (!runs.empty()) pattern = find_pattern(runs.front().front().t.pattern_key);
    for (const auto& run : runs) {
        if (run.size() < 2) continue;
        const auto& first = run.front().t;
        for (const auto& nr : first.roots) {
            MonotonicityEntry e{first.regime, nr.name, nr.root.increasing ? 1 : -1, 0, {}, true};
            if (pattern != nullptr) {
                const auto st = pattern->directions.find(nr.name);
                if (st != pattern->directions.end()) {
                    e.stated_direction = st->second;
                    if (st->second != e.expected_direction) e.pass = false;
                }
            }
            for (const auto& row : run) {
                const auto it = row.t.lambdas.find(nr.name);
                if (it == row.t.lambdas.end()) {
                    e.pass = false;
                    continue;
                }
                e.samples.push_back({row.L, it->second});
            }
            for (std::size_t i = 1; i < e.samples.size(); ++i) {
                const double dl = e.samples[i].second - e.samples[i - 1].second;
                if (!(dl * e.expected_direction > 0.0)) e.pass = false;
            }
            rep.pass = rep.pass && e.pass;
            rep.entries.push_back(std::move(e));
        }
        if (first.lambda1) {
            MonotonicityEntry e{first.regime, "lambda1", -1, -1, {}, true};
            for (const auto& row : run) e.samples.push_back({row.L, *row.t.lambda1});
            for (std::size_t i = 1; i < e.samples.size(); ++i)
                if (!(e.samples[i].second < e.samples[i - 1].second)) e.pass = false;
            rep.pass = rep.pass && e.pass;
            rep.entries.push_back(std::move(e));
        }
    }
    return rep;
}

}  // namespace quasibif
