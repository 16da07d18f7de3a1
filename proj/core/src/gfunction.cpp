#include "quasibif/gfunction.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "quasibif/errors.hpp"
#include "quasibif/parallel.hpp"
#include "quasibif/quadrature.hpp"
#include "quasibif/roots.hpp"
#include "quasibif/timemap.hpp"

namespace quasibif {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool bounded_case(CaseId c) { return c == CaseId::IV || c == CaseId::V || c == CaseId::VI; }

// int_0^C [1/Phi^{-1}(lambda y)] [1/f(F^{-1}(C - y))] dy, for lambda <= B/C.
double g_c_form(const ProblemInstance& p, double lambda, double tol) {
    const auto& phi = p.phi();
    const auto& f = p.f();
    const double c = f.c_constant().value();
    const bool bounded = phi.b_constant().is_finite();
    const double b = bounded ? phi.b_constant().value() : inf;
    const QuadratureOptions opt{tol, 0.0, 2000};
    auto lower = [&](double s) {
        const double y = 0.5 * c * s * s;
        const double arg = lambda * y;
        const double recip = phi.reciprocal_capital_phi_inv(arg, bounded ? b - arg : 0.0);
        return recip * c * s / f.eval(f.capital_f_inv(c - y));
    };
    auto upper = [&](double s) {
        const double eps = 0.5 * c * s * s;
        const double arg = lambda * (c - eps);
        const double deficit = bounded ? (b - lambda * c) + lambda * eps : 0.0;
        const double recip = phi.reciprocal_capital_phi_inv(arg, deficit);
        return recip * c * s / f.eval(f.capital_f_inv(eps));
    };
    const auto lo = integrate(lower, 0.0, 1.0, opt);
    const auto hi = integrate(upper, 0.0, 1.0, opt);
    const double v = lo.value + hi.value;
    if (!std::isfinite(v)) return inf;
    if (!lo.converged || !hi.converged) throw AccuracyError("g quadrature did not converge", v, lo.error + hi.error);
    return v;
}

// int_0^B [1/Phi^{-1}(B - y)] [1/(lambda f(F^{-1}(y/lambda)))] dy.
double g_y_form(const ProblemInstance& p, double lambda, double tol) {
    const auto& phi = p.phi();
    const auto& f = p.f();
    const double b = phi.b_constant().value();
    const QuadratureOptions opt{tol, 0.0, 2000};
    auto tail = [&](double y) {
        const double t = f.capital_f_inv(y / lambda);
        return 1.0 / (lambda * f.eval(t));
    };
    auto lower = [&](double s) {
        const double y = 0.5 * b * s * s;
        if (y == 0.0) return 0.0;
        return phi.reciprocal_capital_phi_inv(b - y, y) * b * s * tail(y);
    };
    auto upper = [&](double s) {
        const double arg = 0.5 * b * s * s;
        const double y = b - arg;
        return phi.reciprocal_capital_phi_inv(arg, y) * b * s * tail(y);
    };
    const auto lo = integrate(lower, 0.0, 1.0, opt);
    const auto hi = integrate(upper, 0.0, 1.0, opt);
    const double v = lo.value + hi.value;
    if (!std::isfinite(v)) return inf;
    if (!lo.converged || !hi.converged) throw AccuracyError("g quadrature did not converge", v, lo.error + hi.error);
    return v;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

struct RawExtremum {
    double r;
    double value;
    ExtremumKind kind;
};

// Significant slope signs between consecutive samples (0 inside the noise floor).
std::vector<int> slope_signs(const std::vector<double>& g, double rel_noise) {
    std::vector<int> s(g.size() - 1, 0);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double d = g[i + 1] - g[i];
        const double noise = rel_noise * std::max(std::abs(g[i]), std::abs(g[i + 1]));
        s[i] = d > noise ? 1 : (d < -noise ? -1 : 0);
    }
    return s;
}

// True when the trailing samples spanning `decades` decades of r carry one slope sign.
bool tail_monotone(const std::vector<double>& rs, const std::vector<int>& signs, double decades) {
    const double start = rs.back() / std::pow(10.0, decades);
    if (rs.front() > start) return false;
    int seen = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (rs[i] < start || signs[i] == 0) continue;
        if (seen == 0) seen = signs[i];
        else if (signs[i] != seen) return false;
    }
    return true;
}

std::vector<RawExtremum> locate(const ProblemInstance& p, const std::vector<double>& rs, const std::vector<double>& gs,
                                const std::vector<int>& signs, double tol) {
    struct Change {
        std::size_t left, right;  // bracket [rs[left], rs[right]]
        int from;
    };
    std::vector<Change> changes;
    int last_sign = 0;
    std::size_t last_idx = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == 0) continue;
        if (last_sign != 0 && signs[i] != last_sign) changes.push_back({last_idx, i + 1, last_sign});
        last_sign = signs[i];
        last_idx = i;
    }
    for (std::size_t k = 1; k < changes.size(); ++k) {
        if (changes[k].left < changes[k - 1].right)
            throw RefinementRequired(fmt::format("adjacent slope changes near r = {:.6g} are not resolved by the grid",
                                                 rs[changes[k].left]));
    }
    std::vector<RawExtremum> out;
    for (const auto& c : changes) {
        auto h = [&](double x) { return g_tilde_eval(p, std::exp(x), tol); };
        const double a = std::log(rs[c.left]), b = std::log(rs[c.right]);
        if (c.from > 0) {
            const auto e = golden_section_max(h, a, b, 1e-7);
            out.push_back({std::exp(e.x), e.fx, ExtremumKind::max});
        } else {
            const auto e = golden_section_min(h, a, b, 1e-7);
            out.push_back({std::exp(e.x), e.fx, ExtremumKind::min});
        }
        (void)gs;
    }
    return out;
}

// Drops neighbouring min/max pairs whose values differ by less than the floor.
void drop_shallow_pairs(std::vector<RawExtremum>& ex, double rel_floor) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < ex.size(); ++i) {
            const double scale = std::max(std::abs(ex[i].value), std::abs(ex[i + 1].value));
            if (std::abs(ex[i].value - ex[i + 1].value) <= rel_floor * scale) {
                ex.erase(ex.begin() + static_cast<long>(i), ex.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
        }
    }
}

double limit_value(const ExtendedReal& e) { return e.is_finite() ? e.value() : inf; }

}  // namespace

std::string to_string(GType t) {
    switch (t) {
        case GType::alpha0: return "alpha0";
        case GType::alpha1: return "alpha1";
        case GType::beta0: return "beta0";
        case GType::beta1: return "beta1";
        case GType::gamma0: return "gamma0";
        case GType::gamma1: return "gamma1";
        case GType::gamma2: return "gamma2";
        case GType::gamma3: return "gamma3";
        case GType::delta0: return "delta0";
        case GType::delta1: return "delta1";
        case GType::delta2: return "delta2";
        case GType::delta3: return "delta3";
        case GType::unclassified: return "unclassified";
    }
    return "?";
}

ExtendedReal g_eval(const ProblemInstance& p, double lambda, double tol) {
    if (!(lambda > 0.0)) throw DomainError("g requires lambda > 0");
    const CaseId c = p.case_id();
    if (c == CaseId::I || c == CaseId::II) return ExtendedReal::finite(0.0);
    double v;
    if (c == CaseId::III) v = g_c_form(p, lambda, tol);
    else if (c == CaseId::VI && lambda <= p.b_over_c().value()) v = g_c_form(p, lambda, tol);
    else {
        const auto& f = p.f();
        const double top = p.phi().b_constant().value() / lambda;
        if (f.endpoint_a().is_infinite() && top > f.capital_f(f.overflow_radius()))
            throw DomainError(fmt::format("g: lambda = {} is below the representable range", lambda));
        if (c == CaseId::V && top > f.capital_f(f.endpoint_a().value() * (1.0 - 1e-8)))
            throw DomainError(fmt::format("g: lambda = {} puts F^-1(B/lambda) within 1e-8 A of A", lambda));
        v = g_y_form(p, lambda, tol);
    }
    return std::isfinite(v) ? ExtendedReal::finite(v) : ExtendedReal::infinity();
}

double g_tilde_eval(const ProblemInstance& p, double r, double tol) {
    if (p.phi().b_constant().is_infinite()) throw DomainError("g_tilde requires B < +inf");
    const auto& f = p.f();
    if (!(r > 0.0) || (f.endpoint_a().is_finite() && r >= f.endpoint_a().value()))
        throw DomainError(fmt::format("g_tilde requires r in (0, A), got {}", r));
    const double lambda = p.phi().b_constant().value() / f.capital_f(r);
    const auto q = detail::endpoint_integral(p.phi(), f, r, lambda, 0.0, tol);
    if (!q.converged) throw AccuracyError("g_tilde quadrature did not converge", q.value, q.error);
    return q.value;
}

GLimits g_limits(const ProblemInstance& p) {
    GLimits out;
    switch (p.case_id()) {
        case CaseId::I:
        case CaseId::II:
            out.at_zero = ExtendedReal::finite(0.0);
            return out;
        case CaseId::III:
        case CaseId::VI:
            out.at_zero = ExtendedReal::infinity();
            return out;
        default: break;
    }
    const ExtendedReal d = p.f().d_limit();
    const ExtendedReal k = k_integral(p.phi());
    if (k.is_infinite()) {
        out.indeterminate = true;
        out.at_zero = ExtendedReal::infinity();
        out.at_infinity = inf;
        return out;
    }
    if (d.is_infinite()) out.at_zero = ExtendedReal::infinity();
    else out.at_zero = ExtendedReal::finite(d.value() * k.value());
    return out;
}

std::map<std::string, double> type_thresholds(GType type, const std::vector<GExtremum>& ex,
                                              const ExtendedReal& limit_at_zero) {
    std::map<std::string, double> t;
    const double l0 = limit_at_zero.is_finite() ? limit_at_zero.value() : inf;
    auto val = [&](std::size_t i) { return ex.at(i).g_value; };
    switch (type) {
        case GType::alpha1: t["L_upstar"] = l0; break;
        case GType::beta0: t["L_upstar"] = val(0); break;
        case GType::beta1:
            t["L_upstar"] = val(0);
            t["L_star"] = l0;
            break;
        case GType::gamma0:
            t["L_star"] = val(0);
            t["L_upstar"] = val(1);
            break;
        case GType::gamma1:
            t["L_star"] = val(0);
            t["L_upstar"] = val(1);
            t["L_dblstar"] = l0;
            break;
        case GType::gamma2:
            t["L_star"] = val(0);
            t["L_upstar"] = l0;
            t["L_dblstar"] = val(1);
            break;
        case GType::gamma3:
            t["L_star"] = val(0);
            t["L_upstar"] = val(1);
            break;
        case GType::delta0:
            t["L_dblstar"] = val(0);
            t["L_dbl_substar"] = l0;
            t["L_upstar"] = val(2);
            t["L_star"] = val(1);
            break;
        case GType::delta1:
            t["L_dblstar"] = val(2);
            t["L_upstar"] = val(0);
            t["L_star"] = val(1);
            break;
        case GType::delta2:
        case GType::delta3:
            t["L_dblstar"] = val(0);
            t["L_upstar"] = val(2);
            t["L_star"] = val(1);
            break;
        default: break;
    }
    return t;
}

GClassification classify_g_type(const GProfile& profile, const ClassifyOptions& options) {
    GClassification out;
    const auto& ex = profile.extrema;
    const ExtendedReal& lim = profile.limit_at_zero;
    const double band = options.band;
    auto close = [band](double a, double b) { return std::abs(a - b) <= band * std::max(std::abs(a), std::abs(b)); };
    auto kinds_are = [&](std::initializer_list<ExtremumKind> k) {
        if (ex.size() != k.size()) return false;
        std::size_t i = 0;
        for (auto kind : k)
            if (ex[i++].kind != kind) return false;
        return true;
    };
    const bool lim_inf = lim.is_infinite();
    const bool lim_zero = lim.is_finite() && lim.value() == 0.0;
    const double l0 = lim.is_finite() ? lim.value() : inf;
    auto fail = [&](const std::string& why) {
        out.type = GType::unclassified;
        out.diagnostics = why;
        return out;
    };
    if (profile.limit_indeterminate) return fail("limit at zero is indeterminate");

    switch (ex.size()) {
        case 0:
            if (lim_inf) out.type = GType::alpha0;
            else if (!lim_zero) out.type = GType::alpha1;
            else return fail("no extrema but g tends to 0 at both ends");
            return out;
        case 1:
            if (!kinds_are({ExtremumKind::max})) return fail("single extremum is not a maximum");
            if (lim_zero) {
                out.type = GType::beta0;
            } else if (!lim_inf) {
                const double m = ex[0].g_value;
                if (close(m, l0)) out.boundary_flag = true;
                else if (m < l0) return fail("maximum below the limit at zero");
                out.type = GType::beta1;
            } else {
                return fail("one extremum with infinite limit at zero");
            }
            return out;
        case 2: {
            if (!kinds_are({ExtremumKind::min, ExtremumKind::max})) return fail("two extrema not ordered min, max");
            const double m = ex[0].g_value, mx = ex[1].g_value;
            if (lim_inf) {
                out.type = GType::gamma0;
                return out;
            }
            if (lim_zero) return fail("two extrema with zero limit at zero");
            if (close(l0, mx)) {
                out.boundary_flag = true;
                out.type = options.resolve_boundary_types ? GType::gamma3 : (l0 >= mx ? GType::gamma1 : GType::gamma2);
                return out;
            }
            if (l0 > mx) {
                out.type = GType::gamma1;
            } else if (l0 > m) {
                out.type = GType::gamma2;
                if (close(l0, m)) out.boundary_flag = true;
            } else {
                return fail("limit at zero below the local minimum");
            }
            return out;
        }
        case 3: {
            if (!kinds_are({ExtremumKind::max, ExtremumKind::min, ExtremumKind::max}))
                return fail("three extrema not ordered max, min, max");
            const double left = ex[0].g_value, right = ex[2].g_value;
            if (lim_zero) {
                if (close(left, right)) {
                    out.boundary_flag = true;
                    out.type = options.resolve_boundary_types ? GType::delta3
                                                              : (left > right ? GType::delta2 : GType::delta1);
                } else {
                    out.type = left > right ? GType::delta2 : GType::delta1;
                }
                return out;
            }
            if (!lim_inf && l0 < left && l0 > right) {
                out.type = GType::delta0;
                if (close(l0, left) || close(l0, right)) out.boundary_flag = true;
                return out;
            }
            return fail("three extrema with a limit at zero outside the maxima");
        }
        default: return fail(fmt::format("{} extrema exceed the known types", ex.size()));
    }
}

GProfile find_extrema(const ProblemInstance& p, const GridSpec& search, double tol) {
    if (!bounded_case(p.case_id()))
        throw DomainError("find_extrema requires Case IV, V or VI (got Case " + to_string(p.case_id()) + ")");
    const auto& f = p.f();
    const double b = p.phi().b_constant().value();
    const bool finite_a = f.endpoint_a().is_finite();
    const double qtol = std::min(tol, 1e-10);

    double r_top = search.r_max;
    if (r_top <= 0.0) {
        r_top = finite_a ? f.endpoint_a().value() * (1.0 - 1e-6) : std::min(1e3, f.overflow_radius() * (1.0 - 1e-9));
    }
    const double r_limit = finite_a ? f.endpoint_a().value() * (1.0 - 1e-6) : f.overflow_radius() * (1.0 - 1e-9);
    r_top = std::min(r_top, r_limit);
    if (!(search.r_min < r_top)) throw DomainError("find_extrema: empty r range");

    const double per_decade = (search.points - 1) / std::log10(r_top / search.r_min);
    int points = search.points;
    std::vector<double> rs, gs;
    std::vector<int> signs;
    for (int attempt = 0;; ++attempt) {
        rs = log_grid(search.r_min, r_top, points);
        gs = parallel_map<double>(rs.size(), [&](std::size_t i) { return g_tilde_eval(p, rs[i], qtol); }, search.threads);
        signs = slope_signs(gs, 1e-8);
        if (finite_a || r_top >= r_limit || tail_monotone(rs, signs, 2.0) || attempt > 20) break;
        const double next = std::min(r_top * 10.0, r_limit);
        points = static_cast<int>(std::ceil(per_decade * std::log10(next / search.r_min))) + 1;
        r_top = next;
    }

    std::vector<RawExtremum> raw;
    for (int refine = 0;; ++refine) {
        try {
            raw = locate(p, rs, gs, signs, qtol);
            break;
        } catch (const RefinementRequired&) {
            if (refine >= 2) throw;
            points = 4 * points;
            rs = log_grid(search.r_min, r_top, points);
            gs = parallel_map<double>(rs.size(), [&](std::size_t i) { return g_tilde_eval(p, rs[i], qtol); },
                                      search.threads);
            signs = slope_signs(gs, 1e-8);
        }
    }
    drop_shallow_pairs(raw, 1e-7);

    GProfile prof;
    prof.case_id = p.case_id();
    prof.r_grid_max = r_top;
    const GLimits lim = g_limits(p);
    prof.limit_at_zero = lim.at_zero;
    prof.limit_at_infinity = lim.at_infinity;
    prof.limit_indeterminate = lim.indeterminate;

    // Extrema in lambda order are the r-order extrema reversed.
    for (auto it = raw.rbegin(); it != raw.rend(); ++it)
        prof.extrema.push_back({b / f.capital_f(it->r), it->r, it->value, it->kind, false});

    const double bc = p.case_id() == CaseId::VI ? p.b_over_c().value() : 0.0;
    double g_junction = 0.0;
    if (p.case_id() == CaseId::VI) {
        g_junction = g_c_form(p, bc, qtol);
        int last = 0;
        for (int s : signs)
            if (s != 0) last = s;
        if (last < 0) {
            prof.extrema.insert(prof.extrema.begin(),
                                {bc, f.endpoint_a().value(), g_junction, ExtremumKind::min, true});
        }
        const auto lams = log_grid(bc * 1e-4, bc, 60);
        auto gl = parallel_map<double>(lams.size(), [&](std::size_t i) { return g_c_form(p, lams[i], qtol); },
                                       search.threads);
        for (std::size_t i = 0; i < lams.size(); ++i)
            prof.samples.push_back({lams[i], gl[i], f.endpoint_a().value(), gl[i]});
    }
    for (std::size_t i = rs.size(); i-- > 0;) prof.samples.push_back({b / f.capital_f(rs[i]), gs[i], rs[i], gs[i]});

    const auto cls = classify_g_type(prof);
    prof.g_type = cls.type;
    prof.boundary_flag = cls.boundary_flag;
    prof.diagnostics = cls.diagnostics;
    if (cls.type != GType::unclassified) prof.thresholds = type_thresholds(cls.type, prof.extrema, prof.limit_at_zero);

    // Monotone segments between anchors in lambda order.
    struct Anchor {
        double lambda, g, r;
    };
    std::vector<Anchor> anchors;
    const double r_end = finite_a ? f.endpoint_a().value() : inf;
    anchors.push_back({0.0, limit_value(prof.limit_at_zero), r_end});
    bool junction_listed = false;
    for (const auto& e : prof.extrema) {
        anchors.push_back({e.lambda, e.g_value, e.r});
        junction_listed = junction_listed || e.junction;
    }
    if (p.case_id() == CaseId::VI && !junction_listed)
        anchors.insert(anchors.begin() + 1, {bc, g_junction, f.endpoint_a().value()});
    anchors.push_back({inf, 0.0, 0.0});
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        GSegment s;
        s.lambda_lo = anchors[i].lambda;
        s.lambda_hi = anchors[i + 1].lambda;
        s.g_lo = anchors[i].g;
        s.g_hi = anchors[i + 1].g;
        s.r_at_lo = anchors[i].r;
        s.r_at_hi = anchors[i + 1].r;
        s.r_parametrized = !(p.case_id() == CaseId::VI && s.lambda_hi <= bc);
        prof.segments.push_back(s);
    }
    return prof;
}

GProfile g_profile(const ProblemInstance& p, const GridSpec& search, double tol) {
    if (bounded_case(p.case_id())) return find_extrema(p, search, tol);
    GProfile prof;
    prof.case_id = p.case_id();
    const GLimits lim = g_limits(p);
    prof.limit_at_zero = lim.at_zero;
    prof.limit_at_infinity = lim.at_infinity;
    if (p.case_id() == CaseId::III) {
        const double a = p.f().endpoint_a().value();
        prof.segments.push_back({0.0, inf, inf, 0.0, false, a, a});
        prof.diagnostics = "g decreases from +inf to 0";
    } else {
        prof.diagnostics = "g vanishes identically";
    }
    return prof;
}

std::vector<GRoot> solve_g_equals(const ProblemInstance& p, const GProfile& profile, double L, double rel_tol) {
    std::vector<GRoot> roots;
    const auto& f = p.f();
    const bool bounded = p.phi().b_constant().is_finite();
    const double b = bounded ? p.phi().b_constant().value() : 0.0;
    const double qtol = 1e-11;
    auto near = [&](double v) { return std::isfinite(v) && std::abs(v - L) <= rel_tol * L; };

    for (std::size_t si = 0; si < profile.segments.size(); ++si) {
        const auto& s = profile.segments[si];
        // Tangency at the segment's left anchor when that anchor is an extremum.
        if (si > 0 && near(s.g_lo)) {
            roots.push_back({s.lambda_lo, s.r_at_lo, false, true});
            continue;
        }
        if (near(s.g_hi)) continue;
        const double lo = std::min(s.g_lo, s.g_hi), hi = std::max(s.g_lo, s.g_hi);
        if (!(L > lo && L < hi)) continue;
        const bool increasing = s.g_hi > s.g_lo;
        GRoot root;
        root.increasing = increasing;
        const bool at_junction = p.case_id() == CaseId::VI && s.r_parametrized && s.lambda_lo > 0.0 &&
                                 s.r_at_lo >= f.endpoint_a().value();
        if (s.r_parametrized && !at_junction) {
            // r decreases as lambda increases: r in (r_at_hi, r_at_lo).
            double ra = s.r_at_hi, rb = s.r_at_lo;
            auto h = [&](double x) { return g_tilde_eval(p, std::exp(x), qtol) - L; };
            if (ra <= 0.0) {
                ra = std::min(1e-4, 0.5 * rb);
                while (h(std::log(ra)) > 0.0 && ra > 1e-300) ra *= 0.1;
            }
            if (!std::isfinite(rb) || (f.endpoint_a().is_finite() && rb >= f.endpoint_a().value())) {
                const double limit =
                    f.endpoint_a().is_finite() ? f.endpoint_a().value() * (1.0 - 1e-12) : f.overflow_radius() * (1.0 - 1e-9);
                rb = std::min(std::max(profile.r_grid_max, 2.0 * ra), limit);
                const double want = increasing ? -1.0 : 1.0;  // sign of g_tilde - L at large r
                while (h(std::log(rb)) * want < 0.0 && rb < limit) {
                    rb = std::min(rb * 2.0, limit);
                    if (rb == limit) break;
                }
            }
            const auto res = brent(h, std::log(ra), std::log(rb), 1e-13);
            root.r = std::exp(res.x);
            root.lambda = b / f.capital_f(root.r);
        } else {
            double la = s.lambda_lo, lb = s.lambda_hi;
            auto h = [&](double x) {
                const auto g = g_eval(p, std::exp(x), 1e-10);
                return (g.is_finite() ? g.value() : inf) - L;
            };
            if (!std::isfinite(lb)) {
                lb = la > 0.0 ? 2.0 * la : 1.0;
                while (h(std::log(lb)) > 0.0) lb *= 10.0;
            }
            if (la <= 0.0) {
                la = 0.5 * lb;
                while (h(std::log(la)) < 0.0) la *= 0.1;
            }
            const auto res = brent(h, std::log(la), std::log(lb), 1e-13);
            root.lambda = std::exp(res.x);
            root.r = s.r_parametrized ? f.capital_f_inv(b / root.lambda)
                                      : (f.endpoint_a().is_finite() ? f.endpoint_a().value() : inf);
        }
        roots.push_back(root);
    }
    std::sort(roots.begin(), roots.end(), [](const GRoot& a, const GRoot& c) { return a.lambda < c.lambda; });
    return roots;
}

}  // namespace quasibif
