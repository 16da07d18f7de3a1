#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>

#include <quasibif/bifurcation.hpp>
#include <quasibif/errors.hpp>
#include <quasibif/parallel.hpp>
#include <quasibif/patterns.hpp>
#include <quasibif/regression.hpp>
#include <quasibif/timemap.hpp>

#include "output.hpp"

namespace quasibif::cli {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

const char* const palette[] = {"#1f3a93", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#2c3e50"};

double to_double(const ExtendedReal& x) { return x.is_finite() ? x.value() : inf; }

std::string greek(GType t) {
    switch (t) {
        case GType::alpha0: return "α₀";
        case GType::alpha1: return "α₁";
        case GType::beta0: return "β₀";
        case GType::beta1: return "β₁";
        case GType::gamma0: return "γ₀";
        case GType::gamma1: return "γ₁";
        case GType::gamma2: return "γ₂";
        case GType::gamma3: return "γ₃";
        case GType::delta0: return "δ₀";
        case GType::delta1: return "δ₁";
        case GType::delta2: return "δ₂";
        case GType::delta3: return "δ₃";
        case GType::unclassified: return "unclassified";
    }
    return "?";
}

bool has_g_type(CaseId c) { return c == CaseId::IV || c == CaseId::V || c == CaseId::VI; }

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> v;
    if (n == 1) return {hi};
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) v.push_back(std::exp(a + (b - a) * i / (n - 1)));
    v.back() = hi;
    return v;
}

bool wide_range(const std::vector<double>& v) {
    double lo = inf, hi = 0.0;
    for (double x : v)
        if (std::isfinite(x) && x > 0.0) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    return hi > 0.0 && hi / lo > 1e3;
}

std::string l_tag(double L) { return fmt::format("L{:g}", L); }

void write_run(const RunConfig& cfg) {
    if (cfg.output.structured) write_file(cfg.output.dir, "run.txt", serialize(cfg));
}

Record problem_record(const RunConfig& cfg, const ProblemInstance& p) {
    Record r;
    r.section("problem");
    if (cfg.phi) r.raw("phi", serialize(*cfg.phi));
    if (cfg.f) r.raw("f", serialize(*cfg.f));
    r.set("label", p.label());
    r.set("case", to_string(p.case_id()));
    return r;
}

void print_check(std::ostream& out, const char* name, const ConditionCheck& c) {
    out << fmt::format("  {:<18} {:<13} grid={} equal={} violations={} unevaluable={} strict={}\n", name,
                       to_string(c.verdict), c.grid_points, c.equality_points, c.violations, c.unevaluable_points,
                       c.strict ? "yes" : "no");
}

std::string headline(const ProblemInstance& p, const GProfile& prof) {
    const CaseId c = p.case_id();
    if (c == CaseId::I || c == CaseId::II) return fmt::format("Case {}, g ≡ 0", to_string(c));
    if (c == CaseId::III) return "Case III, g decreasing from +inf to 0";
    return fmt::format("Case {}, Type {}", to_string(c), type_display(c, prof.g_type));
}

GridSpec g_grid(const RunConfig& cfg) {
    GridSpec g;
    g.points = cfg.g_points;
    return g;
}

// g over lambda; Case III has no r-parametrized samples so g is evaluated directly.
std::vector<std::pair<double, double>> g_lambda_curve(const RunConfig& cfg, const ProblemInstance& p,
                                                      const GProfile& prof) {
    std::vector<std::pair<double, double>> pts;
    if (!prof.samples.empty()) {
        for (const auto& s : prof.samples) pts.push_back({s.lambda, s.g_value});
        return pts;
    }
    if (p.case_id() != CaseId::III) return pts;
    const auto lambdas = log_grid(1e-3, 1e3, cfg.g_points);
    const auto g = parallel_map<double>(lambdas.size(), [&](std::size_t i) {
        try {
            return to_double(g_eval(p, lambdas[i], cfg.tol));
        } catch (const std::exception&) {
            return nan;
        }
    });
    for (std::size_t i = 0; i < lambdas.size(); ++i) pts.push_back({lambdas[i], g[i]});
    return pts;
}

void write_gcurve(const RunConfig& cfg, const ProblemInstance& p, const GProfile& prof, std::ostream& out) {
    const auto curve = g_lambda_curve(cfg, p, prof);
    const bool bounded = p.phi().b_constant().is_finite() && has_g_type(p.case_id());
    if (cfg.output.csv) {
        CsvTable t({"lambda", "g"});
        for (const auto& [l, g] : curve) t.add({csv_number(l), csv_number(g)});
        out << "wrote " << write_file(cfg.output.dir, "gcurve_lambda.csv", t.text()) << "\n";
        if (bounded) {
            CsvTable tr({"r", "g_tilde"});
            for (const auto& s : prof.samples) tr.add({csv_number(s.r), csv_number(s.g_tilde_value)});
            out << "wrote " << write_file(cfg.output.dir, "gcurve_r.csv", tr.text()) << "\n";
        }
    }
    if (cfg.output.svg) {
        Plot pl{"g(lambda): " + p.label(), "lambda", "g", true, wide_range([&] {
                    std::vector<double> v;
                    for (const auto& c : curve) v.push_back(c.second);
                    return v;
                }()), {}, {}};
        pl.series.push_back({"g", curve, palette[0], 2.0, false});
        for (const auto& e : prof.extrema)
            pl.vertical_lines.push_back({e.lambda, e.kind == ExtremumKind::max ? "max" : "min"});
        out << "wrote " << write_file(cfg.output.dir, "gcurve_lambda.svg", pl.svg()) << "\n";
        if (bounded) {
            Plot pr{"g~(r): " + p.label(), "r", "g~", true, false, {}, {}};
            std::vector<std::pair<double, double>> pts;
            for (const auto& s : prof.samples) pts.push_back({s.r, s.g_tilde_value});
            std::sort(pts.begin(), pts.end());
            pr.series.push_back({"g~", pts, palette[1], 2.0, false});
            out << "wrote " << write_file(cfg.output.dir, "gcurve_r.svg", pr.svg()) << "\n";
        }
    }
    if (cfg.output.structured) {
        Record r = problem_record(cfg, p);
        r.section("g");
        r.set("type", has_g_type(p.case_id()) ? to_string(prof.g_type) : std::string("none"));
        r.set("summary", headline(p, prof));
        r.set("boundary_flag", prof.boundary_flag);
        r.set("limit_at_zero", to_double(prof.limit_at_zero));
        r.set("limit_at_infinity", prof.limit_at_infinity);
        r.set("limit_indeterminate", prof.limit_indeterminate);
        r.set("r_grid_max", prof.r_grid_max);
        r.set("diagnostics", prof.diagnostics);
        r.section("extrema");
        std::vector<double> el, er, eg;
        std::string kinds = "[";
        for (std::size_t i = 0; i < prof.extrema.size(); ++i) {
            const auto& e = prof.extrema[i];
            el.push_back(e.lambda);
            er.push_back(e.r);
            eg.push_back(e.g_value);
            kinds += fmt::format("{}\"{}{}\"", i ? ", " : "", e.kind == ExtremumKind::max ? "max" : "min",
                                 e.junction ? "-junction" : "");
        }
        r.set("lambda", el).set("r", er).set("g", eg).raw("kind", kinds + "]");
        r.section("thresholds");
        for (const auto& [k, v] : prof.thresholds) r.set(k, v);
        r.section("settings");
        r.set("tol", cfg.tol).set("g_points", cfg.g_points);
        out << "wrote " << write_file(cfg.output.dir, "gcurve.txt", r.text()) << "\n";
    }
}

PatternVerdict write_diagram(const RunConfig& cfg, const ProblemInstance& p, const GProfile& prof, double L,
                             std::ostream& out) {
    LambdaGrid grid;
    grid.per_decade = cfg.per_decade;
    const BifurcationDiagram d = build_diagram(make_diagram_spec(p, L), prof, grid, 1e-10, cfg.force);
    const PatternVerdict v = verify_pattern(d);
    const std::string tag = "bifurcate_" + l_tag(L);

    out << fmt::format("L = {:g}: pattern '{}', regime '{}', verdict {}\n", L, d.thresholds.pattern_key, d.regime,
                       to_string(v.verdict));
    for (const auto& [name, lam] : d.thresholds.lambdas) out << fmt::format("  {} = {:.10g}\n", name, lam);
    for (const auto& iv : d.intervals)
        out << fmt::format("  {}{:.8g}, {:.8g}{}  {}..{}  solutions: {}\n", iv.lo_closed ? "[" : "(", iv.lo, iv.hi,
                           iv.hi_closed ? "]" : ")", iv.lo_name.empty() ? "-" : iv.lo_name,
                           iv.hi_name.empty() ? "-" : iv.hi_name,
                           iv.count < 0 ? std::string("unresolved") : std::to_string(iv.count));
    if (!v.report.empty()) out << "  " << v.report << "\n";

    if (cfg.output.csv) {
        CsvTable b({"lambda", "r", "classical_flag"});
        for (const auto& pt : d.branch) b.add({csv_number(pt.lambda), csv_number(pt.r), pt.classical ? "1" : "0"});
        out << "wrote " << write_file(cfg.output.dir, tag + "_branch.csv", b.text()) << "\n";
        CsvTable bu({"lambda", "r"});
        for (const auto& pt : d.blowup_curve) bu.add({csv_number(pt.lambda), csv_number(pt.r)});
        out << "wrote " << write_file(cfg.output.dir, tag + "_blowup.csv", bu.text()) << "\n";
        CsvTable it({"lo", "hi", "lo_name", "hi_name", "lo_closed", "hi_closed", "count"});
        for (const auto& iv : d.intervals)
            it.add({csv_number(iv.lo), csv_number(iv.hi), iv.lo_name, iv.hi_name, iv.lo_closed ? "1" : "0",
                    iv.hi_closed ? "1" : "0", std::to_string(iv.count)});
        out << "wrote " << write_file(cfg.output.dir, tag + "_intervals.csv", it.text()) << "\n";
    }
    if (cfg.output.svg) {
        Plot pl{fmt::format("bifurcation diagram, L = {:g}: {}", L, p.label()), "lambda", "||u|| = r", true, false, {},
                {}};
        std::vector<std::pair<double, double>> branch;
        for (std::size_t i = 0; i < d.branch.size(); ++i) {
            const auto& pt = d.branch[i];
            if (i > 0) {
                const double prev = d.branch[i - 1].lambda;
                const bool gap = std::any_of(d.intervals.begin(), d.intervals.end(), [&](const LambdaInterval& iv) {
                    return iv.count == 0 && iv.lo >= prev && iv.hi <= pt.lambda;
                });
                if (gap) branch.push_back({nan, nan});
            }
            branch.push_back({pt.lambda, pt.r});
        }
        std::vector<double> rs;
        for (const auto& pt : d.branch) rs.push_back(pt.r);
        pl.log_y = wide_range(rs);
        pl.series.push_back({"bifurcation curve", branch, palette[0], 3.0, false});
        std::vector<std::pair<double, double>> blow;
        for (const auto& pt : d.blowup_curve) blow.push_back({pt.lambda, pt.r});
        if (!blow.empty()) pl.series.push_back({"blow-up curve", blow, palette[1], 1.0, false});
        if (p.f().endpoint_a().is_finite() && !d.grid.empty()) {
            const double a = p.f().endpoint_a().value();
            pl.series.push_back({"r = A", {{d.grid.front(), a}, {d.grid.back(), a}}, "#555555", 1.0, true});
        }
        for (const auto& [name, lam] : d.thresholds.lambdas) pl.vertical_lines.push_back({lam, name});
        out << "wrote " << write_file(cfg.output.dir, tag + ".svg", pl.svg()) << "\n";
    }
    if (cfg.output.structured) {
        Record r = problem_record(cfg, p);
        r.section("diagram");
        r.set("L", L).set("pattern_key", d.thresholds.pattern_key).set("regime", d.regime);
        r.set("verdict", to_string(v.verdict)).set("report", v.report);
        r.set("lambda1", d.spec.lambda1 ? *d.spec.lambda1 : nan);
        r.set("tol", d.tol).set("per_decade", grid.per_decade);
        r.set("grid_lo", d.grid.empty() ? nan : d.grid.front());
        r.set("grid_hi", d.grid.empty() ? nan : d.grid.back());
        r.set("grid_points", static_cast<int>(d.grid.size()));
        r.set("diagnostics", d.diagnostics);
        r.section("thresholds");
        for (const auto& [name, lam] : d.thresholds.lambdas) r.set(name, lam);
        r.section("l_thresholds");
        for (const auto& [name, val] : prof.thresholds) r.set(name, val);
        out << "wrote " << write_file(cfg.output.dir, tag + ".txt", r.text()) << "\n";
    }
    return v;
}

void require_classified(const ProblemInstance& p, const GProfile& prof) {
    if (has_g_type(p.case_id()) && prof.g_type == GType::unclassified)
        throw ClassificationFailure(fmt::format("g-type could not be classified: {}", prof.diagnostics));
}

}  // namespace

std::string type_display(CaseId c, GType t) {
    if (!has_g_type(c)) return "";
    return fmt::format("{}-{}", to_string(c), greek(t));
}

namespace {

void print_classification(const ProblemInstance& p, const GProfile& prof, std::ostream& out) {
    const auto& f = p.f();
    out << "problem: " << p.label() << "\n";
    out << headline(p, prof) << "\n";
    if (has_g_type(p.case_id())) out << "boundary_flag: " << (prof.boundary_flag ? "true" : "false") << "\n";
    out << "constants:\n";
    out << fmt::format("  B = {}  A = {}  C = {}  f'(0) = {}  D = {}{}\n", p.phi().b_constant().to_string(),
                       f.endpoint_a().to_string(), f.c_constant().to_string(), f.f_prime_at_zero().to_string(),
                       f.d_limit().to_string(), f.d_limit_approximate() ? " (approximate)" : "");
    out << "conditions:\n";
    const auto& c = p.conditions();
    print_check(out, "phi concavity", c.phi_concavity);
    print_check(out, "superlinearity", c.superlinearity);
    out << fmt::format("  {:<18} {}\n", "strictness", c.strictness ? "yes" : "no");
    print_check(out, "f condition", c.f_condition);
    print_check(out, "limit condition", c.limit_condition);
    out << fmt::format("  {:<18} {}\n", "monotone T", c.monotone_time_map() ? "yes" : "no");
    if (has_g_type(p.case_id())) {
        out << fmt::format("g limits: g(0+) = {}  g(+inf) = {:.10g}\n", prof.limit_at_zero.to_string(),
                           prof.limit_at_infinity);
        for (const auto& e : prof.extrema)
            out << fmt::format("  {} at lambda = {:.10g} (r = {:.10g}): g = {:.10g}{}\n",
                               e.kind == ExtremumKind::max ? "max" : "min", e.lambda, e.r, e.g_value,
                               e.junction ? " (junction lambda = B/C)" : "");
        for (const auto& [k, v] : prof.thresholds) out << fmt::format("  {} = {:.10g}\n", k, v);
    }
    const std::string key = pattern_key(p.case_id(), prof.g_type, f.f_prime_at_zero());
    if (!key.empty()) out << "pattern: " << key << (find_pattern(key) ? "" : " (no governing pattern)") << "\n";
    if (!prof.diagnostics.empty()) out << "diagnostics: " << prof.diagnostics << "\n";
}

}  // namespace

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const ProblemInstance p = make_problem(cfg);
    const GProfile prof = g_profile(p, g_grid(cfg), cfg.tol);
    print_classification(p, prof, out);
    require_classified(p, prof);
    return exit_ok;
}

int cmd_timemap(const RunConfig& cfg, std::ostream& out) {
    const ProblemInstance p = make_problem(cfg);
    if (cfg.lambdas.empty()) throw ConfigError("timemap needs at least one lambda");
    struct Row {
        double lambda, r, t;
        bool endpoint;
        std::string branch;
    };
    std::vector<Row> rows;
    int failures = 0;
    for (double lambda : cfg.lambdas) {
        const TimeMapDomain dom = domain(p, lambda);
        const std::string branch = dom.branch == Branch::whole ? "whole" : "up_to_blowup";
        std::vector<double> rs;
        bool closed_end = false;
        if (!cfg.r_values.empty()) {
            for (double r : cfg.r_values)
                if (!dom.contains(r))
                    throw ConfigError(fmt::format("r = {} lies outside (0, {}{} for lambda = {}", r, dom.right.to_string(),
                                                  dom.right_closed ? "]" : ")", lambda));
            rs = cfg.r_values;
            std::sort(rs.begin(), rs.end());
            closed_end = dom.right_closed && rs.back() == dom.right.value();
        } else {
            const double right = dom.right.is_finite() ? dom.right.value() : cfg.r_max;
            const double lo = dom.right.is_finite() ? cfg.r_min * right : cfg.r_min;
            const double hi = dom.right.is_finite() && !dom.right_closed ? right * (1.0 - 1e-6) : right;
            rs = log_grid(lo, hi, cfg.r_points);
            closed_end = dom.right_closed;
        }
        const auto ts = parallel_map<double>(rs.size(), [&](std::size_t i) {
            try {
                return time_map(p, rs[i], lambda, cfg.tol).t_value;
            } catch (const AccuracyError&) {
                return nan;
            }
        });
        for (std::size_t i = 0; i < rs.size(); ++i) {
            if (std::isnan(ts[i])) ++failures;
            rows.push_back({lambda, rs[i], ts[i], closed_end && i + 1 == rs.size(), branch});
        }
        out << fmt::format("lambda = {:g}: I = (0, {}{}, branch {}\n", lambda, dom.right.to_string(),
                           dom.right_closed ? "]" : ")", branch);
        if (p.case_id() == CaseId::VI && dom.branch == Branch::up_to_blowup)
            out << "  lambda > B/C: the domain ends on the blow-up curve instead of r = A\n";
    }
    std::vector<std::pair<double, double>> endpoint_curve;
    if (p.phi().b_constant().is_finite() && has_g_type(p.case_id())) {
        const double top = p.f().endpoint_a().is_finite() ? p.f().endpoint_a().value() * (1.0 - 1e-6)
                                                          : std::min(cfg.r_max, p.f().overflow_radius());
        for (double r : log_grid(cfg.r_min * top, top, cfg.r_points)) {
            double g = nan;
            try {
                g = g_tilde_eval(p, r, cfg.tol);
            } catch (const std::exception&) {
            }
            endpoint_curve.push_back({r, g});
        }
    }
    if (cfg.output.csv) {
        CsvTable t({"lambda", "r", "T", "endpoint", "branch"});
        for (const auto& row : rows)
            t.add({csv_number(row.lambda), csv_number(row.r), csv_number(row.t), row.endpoint ? "1" : "0", row.branch});
        out << "wrote " << write_file(cfg.output.dir, "timemap.csv", t.text()) << "\n";
        if (!endpoint_curve.empty()) {
            CsvTable e({"r", "g_tilde"});
            for (const auto& [r, g] : endpoint_curve) e.add({csv_number(r), csv_number(g)});
            out << "wrote " << write_file(cfg.output.dir, "timemap_endpoint.csv", e.text()) << "\n";
        }
    }
    if (cfg.output.svg) {
        Plot pl{"time maps T(r, lambda): " + p.label(), "r", "T", true, false, {}, {}};
        std::vector<double> tv;
        for (const auto& row : rows) tv.push_back(row.t);
        pl.log_y = wide_range(tv);
        for (std::size_t k = 0; k < cfg.lambdas.size(); ++k) {
            Series s{fmt::format("lambda = {:g}", cfg.lambdas[k]), {}, palette[k % 7], 2.0, false};
            for (const auto& row : rows)
                if (row.lambda == cfg.lambdas[k]) s.points.push_back({row.r, row.t});
            pl.series.push_back(std::move(s));
        }
        if (!endpoint_curve.empty()) pl.series.push_back({"endpoint curve (r*, g)", endpoint_curve, "#555555", 1.0, true});
        out << "wrote " << write_file(cfg.output.dir, "timemap.svg", pl.svg()) << "\n";
    }
    write_run(cfg);
    if (failures > 0) {
        out << failures << " time-map samples did not converge (written as nan)\n";
        return exit_numeric_failure;
    }
    return exit_ok;
}

int cmd_gcurve(const RunConfig& cfg, std::ostream& out) {
    const ProblemInstance p = make_problem(cfg);
    const GProfile prof = g_profile(p, g_grid(cfg), cfg.tol);
    out << headline(p, prof) << "\n";
    for (const auto& e : prof.extrema)
        out << fmt::format("  {} at lambda = {:.10g}: g = {:.10g}\n", e.kind == ExtremumKind::max ? "max" : "min",
                           e.lambda, e.g_value);
    if (has_g_type(p.case_id()))
        out << fmt::format("  g(0+) = {}  g(+inf) = {:.10g}\n", prof.limit_at_zero.to_string(), prof.limit_at_infinity);
    write_gcurve(cfg, p, prof, out);
    write_run(cfg);
    require_classified(p, prof);
    return exit_ok;
}

int cmd_bifurcate(const RunConfig& cfg, std::ostream& out) {
    const ProblemInstance p = make_problem(cfg);
    if (cfg.L_values.empty()) throw ConfigError("bifurcate needs at least one L");
    const GProfile prof = g_profile(p, g_grid(cfg), cfg.tol);
    require_classified(p, prof);
    out << headline(p, prof) << "\n";
    for (double L : cfg.L_values) write_diagram(cfg, p, prof, L, out);
    write_run(cfg);
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    static const std::vector<std::string> subsets = {"case123", "iv-alpha", "iv-beta", "iv-gamma",
                                                     "iv-delta", "v-vi", "monotone", "all"};
    if (std::find(subsets.begin(), subsets.end(), cfg.subset) == subsets.end())
        throw ConfigError(fmt::format("unknown verify subset '{}'", cfg.subset));
    LambdaGrid grid;
    grid.per_decade = cfg.per_decade;
    int checks = 0, failed = 0;
    CsvTable table({"cell", "label", "pattern_key", "regime", "L", "verdict", "report"});
    if (cfg.subset != "monotone") {
        for (const auto& cell : regression_matrix()) {
            if (cfg.subset != "all" && cell.subset != cfg.subset) continue;
            std::vector<CellCheck> results;
            try {
                results = verify_cell(cell, grid);
            } catch (const std::exception& e) {
                results.push_back({cell.id, "", "", "", 0.0, Verdict::fail, e.what()});
            }
            for (const auto& c : results) {
                ++checks;
                const bool ok = c.verdict == Verdict::pass;
                failed += !ok;
                out << fmt::format("{}  {:<20} {:<14} L = {:<12.6g} {}\n", ok ? "PASS" : "FAIL", c.cell, c.regime, c.L,
                                   ok ? "" : c.report);
                table.add({c.cell, c.label, c.pattern_key, c.regime, csv_number(c.L), to_string(c.verdict), c.report});
            }
        }
    }
    CsvTable mono({"cell", "regime", "name", "stated_direction", "derived_direction", "samples", "pass"});
    if (cfg.subset == "monotone" || cfg.subset == "all") {
        for (const auto& cell : monotone_cells()) {
            ++checks;
            bool ok = false;
            std::string note;
            try {
                const ProblemInstance p = make_instance(cell.phi_k, cell.f);
                const GProfile prof = g_profile(p);
                const TheoremPattern* pat = find_pattern(pattern_key(p.case_id(), prof.g_type, p.f().f_prime_at_zero()));
                if (pat == nullptr) throw ClassificationFailure("no governing pattern");
                const auto rep = threshold_monotonicity_check(p, prof, monotonicity_L_values(*pat, prof.thresholds));
                ok = rep.pass && !rep.entries.empty();
                for (const auto& e : rep.entries)
                    mono.add({cell.id, e.regime, e.name, std::to_string(e.stated_direction),
                              std::to_string(e.expected_direction), std::to_string(e.samples.size()),
                              e.pass ? "1" : "0"});
                note = fmt::format("{} threshold sequences", rep.entries.size());
            } catch (const std::exception& e) {
                note = e.what();
            }
            failed += !ok;
            out << fmt::format("{}  {:<20} monotonicity    {}\n", ok ? "PASS" : "FAIL", cell.id, note);
        }
    }
    out << fmt::format("{} of {} checks passed\n", checks - failed, checks);
    if (cfg.output.csv) {
        if (table.size() > 0) out << "wrote " << write_file(cfg.output.dir, "verify.csv", table.text()) << "\n";
        if (mono.size() > 0) out << "wrote " << write_file(cfg.output.dir, "verify_monotone.csv", mono.text()) << "\n";
    }
    write_run(cfg);
    return failed == 0 ? exit_ok : exit_verification_failure;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
    const ProblemInstance p = make_problem(cfg);
    const GProfile prof = g_profile(p, g_grid(cfg), cfg.tol);
    print_classification(p, prof, out);
    require_classified(p, prof);
    write_gcurve(cfg, p, prof, out);
    std::vector<double> Ls = cfg.L_values;
    const std::string key = pattern_key(p.case_id(), prof.g_type, p.f().f_prime_at_zero());
    const TheoremPattern* pat = find_pattern(key);
    if (Ls.empty()) {
        if (pat != nullptr)
            for (const auto& rs : regime_samples(*pat, prof.thresholds)) Ls.push_back(rs.L);
        if (Ls.empty()) Ls.push_back(1.0);
    }
    Record r = problem_record(cfg, p);
    r.section("report");
    r.set("summary", headline(p, prof)).set("pattern_key", key);
    bool all_pass = true;
    std::vector<double> Lrec;
    std::string verdicts = "[", regimes = "[";
    for (std::size_t i = 0; i < Ls.size(); ++i) {
        const PatternVerdict v = write_diagram(cfg, p, prof, Ls[i], out);
        all_pass = all_pass && v.verdict == Verdict::pass;
        Lrec.push_back(Ls[i]);
        verdicts += fmt::format("{}\"{}\"", i ? ", " : "", to_string(v.verdict));
        regimes += fmt::format("{}\"{}\"", i ? ", " : "", v.regime);
    }
    r.set("L", Lrec).raw("regime", regimes + "]").raw("verdict", verdicts + "]");
    if (cfg.output.structured) out << "wrote " << write_file(cfg.output.dir, "report.txt", r.text()) << "\n";
    write_run(cfg);
    return all_pass ? exit_ok : exit_verification_failure;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        switch (cfg.command) {
            case Command::classify: return cmd_classify(cfg, out);
            case Command::timemap: return cmd_timemap(cfg, out);
            case Command::gcurve: return cmd_gcurve(cfg, out);
            case Command::bifurcate: return cmd_bifurcate(cfg, out);
            case Command::verify: return cmd_verify(cfg, out);
            case Command::report: return cmd_report(cfg, out);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const UnsupportedFamily& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const ClassificationFailure& e) {
        err << "classification failure: " << e.what() << "\n";
        return exit_classification_failure;
    } catch (const std::exception& e) {
        err << "numeric failure: " << e.what() << "\n";
        return exit_numeric_failure;
    }
    return exit_ok;
}

}  // namespace quasibif::cli
