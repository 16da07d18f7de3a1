#include "quasibif/nonlinearity.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "quasibif/errors.hpp"
#include "quasibif/quadrature.hpp"
#include "quasibif/roots.hpp"

namespace quasibif {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double pi = std::numbers::pi;

const GaussLegendreRule& gl16() {
    static const GaussLegendreRule& rule = gauss_legendre_rule(16);
    return rule;
}

// e^x - sum_{n<m} x^n/n! for x >= 0.
double exp_tail(double x, int m) {
    if (m <= 0) return std::exp(x);
    if (m == 1) return std::expm1(x);
    if (x == 0.0) return 0.0;
    if (x < 2.0 + m) {
        double term = 1.0;
        for (int n = 1; n <= m; ++n) term *= x / n;
        double sum = 0.0;
        for (int n = m; n < m + 400; ++n) {
            sum += term;
            term *= x / (n + 1);
            if (term < 1e-17 * sum) break;
        }
        return sum;
    }
    double poly = 0.0, t = 1.0;
    for (int n = 0; n < m; ++n) {
        poly += t;
        t *= x / (n + 1);
    }
    return std::exp(x) - poly;
}

// int_0^u (e^{s^2} - 1) ds.
double gauss_antiderivative(double u) {
    if (u == 0.0) return 0.0;
    const double u2 = u * u;
    if (u < 6.0) {
        double t = u * u2;
        double sum = 0.0;
        for (int n = 1; n < 2000; ++n) {
            const double contrib = t / (2 * n + 1);
            sum += contrib;
            if (contrib < 1e-17 * sum && n > u2) break;
            t *= u2 / (n + 1);
        }
        return sum;
    }
    // Asymptotic expansion of (sqrt(pi)/2) erfi(u).
    double term = 1.0, s = 1.0;
    for (int n = 1; n < 400; ++n) {
        const double next = term * (2 * n - 1) / (2.0 * u2);
        if (next > term || next < 1e-18) break;
        term = next;
        s += term;
    }
    return std::exp(u2) / (2.0 * u) * s - u;
}

// int_0^u s^p e^{ks} ds.
double power_exp_antiderivative(double u, double p, double k) {
    if (u == 0.0) return 0.0;
    const double x = k * u;
    if (x <= 40.0 + 2.0 * p) {
        double t = 1.0, sum = 0.0;
        for (int n = 0; n < 4000; ++n) {
            const double contrib = t / (p + n + 1.0);
            sum += contrib;
            if (contrib < 1e-17 * sum && n > x) break;
            t *= x / (n + 1);
        }
        return std::pow(u, p + 1.0) * sum;
    }
    const double base = std::exp(p * std::log(u) + x) / k;
    double term = 1.0, s = 1.0;
    for (int j = 0; j < 200; ++j) {
        const double next = -term * (p - j) / x;
        if (next == 0.0 || std::abs(next) > std::abs(term) || std::abs(next) < 1e-18) break;
        term = next;
        s += term;
    }
    return base * s;
}

// Antiderivative tabulated on cells small enough for a 16-point rule.
class CumulativeTable {
public:
    CumulativeTable(std::function<double(double)> f, std::function<double(double)> df, double limit,
                    double finite_a, std::function<double(double)> small, double x0)
        : f_(std::move(f)), small_(std::move(small)), x0_(x0) {
        xs_.push_back(x0);
        cum_.push_back(small_ ? small_(x0) : gauss_legendre(f_, 0.0, x0, gl16()));
        double x = x0;
        while (x < limit && xs_.size() < 200000) {
            double h = 0.05 * x;
            if (std::isfinite(finite_a)) h = std::min(h, 0.05 * (finite_a - x));
            const double fx = f_(x), dfx = df(x);
            if (!std::isfinite(fx) || !std::isfinite(dfx) || fx > 1e300) break;
            if (dfx > 0.0) h = std::min(h, 0.5 * fx / dfx);
            double nx = std::min(x + h, limit);
            if (nx <= x) break;
            const double piece = integrate(f_, x, nx, {1e-15, 0.0, 200}).value;
            if (!std::isfinite(cum_.back() + piece)) break;
            xs_.push_back(nx);
            cum_.push_back(cum_.back() + piece);
            x = nx;
        }
    }

    double operator()(double u) const {
        if (u <= x0_) return small_ ? small_(u) : gauss_legendre(f_, 0.0, u, gl16());
        auto it = std::upper_bound(xs_.begin(), xs_.end(), u);
        const std::size_t j = static_cast<std::size_t>(it - xs_.begin()) - 1;
        if (u == xs_[j]) return cum_[j];
        return cum_[j] + gauss_legendre(f_, xs_[j], u, gl16());
    }

    double last_node() const { return xs_.back(); }

private:
    std::function<double(double)> f_;
    std::function<double(double)> small_;
    double x0_;
    std::vector<double> xs_;
    std::vector<double> cum_;
};

struct Term {
    enum class Kind { power, exp_tail, gauss, power_exp };
    Kind kind;
    double c = 1.0;
    double p = 1.0;
    double k = 1.0;
    int m = 1;
};

class TermSum final : public NonlinearityModel {
public:
    explicit TermSum(std::vector<Term> terms) : terms_(std::move(terms)) {}

    double f(double u) const override {
        double s = 0.0;
        for (const auto& t : terms_) {
            switch (t.kind) {
                case Term::Kind::power: s += t.c * std::pow(u, t.p); break;
                case Term::Kind::exp_tail: s += t.c * exp_tail(t.k * u, t.m); break;
                case Term::Kind::gauss: s += t.c * std::expm1(u * u); break;
                case Term::Kind::power_exp:
                    s += u > 0.0 ? t.c * std::exp(t.p * std::log(u) + t.k * u) : 0.0;
                    break;
            }
        }
        return s;
    }

    double df(double u) const override {
        double s = 0.0;
        for (const auto& t : terms_) {
            switch (t.kind) {
                case Term::Kind::power:
                    s += t.p == 1.0 ? t.c : t.c * t.p * std::pow(u, t.p - 1.0);
                    break;
                case Term::Kind::exp_tail: s += t.c * t.k * exp_tail(t.k * u, t.m - 1); break;
                case Term::Kind::gauss: s += 2.0 * t.c * u * std::exp(u * u); break;
                case Term::Kind::power_exp:
                    if (u > 0.0) s += t.c * (t.p + t.k * u) * std::exp((t.p - 1.0) * std::log(u) + t.k * u);
                    else s += t.p == 1.0 ? t.c : (t.p < 1.0 ? inf : 0.0);
                    break;
            }
        }
        return s;
    }

    double capital_f(double u) const override {
        double s = 0.0;
        for (const auto& t : terms_) {
            switch (t.kind) {
                case Term::Kind::power: s += t.c * std::pow(u, t.p + 1.0) / (t.p + 1.0); break;
                case Term::Kind::exp_tail: s += t.c / t.k * exp_tail(t.k * u, t.m + 1); break;
                case Term::Kind::gauss: s += t.c * gauss_antiderivative(u); break;
                case Term::Kind::power_exp: s += t.c * power_exp_antiderivative(u, t.p, t.k); break;
            }
        }
        return s;
    }

    std::optional<double> capital_f_inv(double y) const override {
        if (terms_.size() == 1 && terms_[0].kind == Term::Kind::power) {
            const auto& t = terms_[0];
            return std::pow(y * (t.p + 1.0) / t.c, 1.0 / (t.p + 1.0));
        }
        return std::nullopt;
    }

    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

class ShiftedPower final : public NonlinearityModel {
public:
    explicit ShiftedPower(double p) : p_(p) {}
    double f(double u) const override { return std::expm1(p_ * std::log1p(u)); }
    double df(double u) const override { return p_ * std::exp((p_ - 1.0) * std::log1p(u)); }
    double capital_f(double u) const override {
        if (u < 0.1) {
            double b = p_, w = u, sum = 0.0;
            for (int n = 1; n < 200; ++n) {
                const double contrib = b * w * u / (n + 1);
                sum += contrib;
                if (std::abs(contrib) < 1e-17 * std::abs(sum)) break;
                b *= (p_ - n) / (n + 1);
                w *= u;
            }
            return sum;
        }
        return std::expm1((p_ + 1.0) * std::log1p(u)) / (p_ + 1.0) - u;
    }

private:
    double p_;
};

class Tangent final : public NonlinearityModel {
public:
    double f(double u) const override { return std::tan(u); }
    double df(double u) const override {
        const double t = std::tan(u);
        return 1.0 + t * t;
    }
    double capital_f(double u) const override {
        const double s = std::sin(0.5 * u);
        return -std::log1p(-2.0 * s * s);
    }
    std::optional<double> capital_f_inv(double y) const override {
        return 2.0 * std::asin(std::sqrt(-0.5 * std::expm1(-y)));
    }
};

class TangentPower final : public NonlinearityModel {
public:
    explicit TangentPower(double q)
        : q_(q),
          a_(std::pow(0.5 * pi, 1.0 / q)),
          table_([q](double u) { return std::tan(std::pow(u, q)); },
                 [q](double u) {
                     const double c = std::cos(std::pow(u, q));
                     return q * std::pow(u, q - 1.0) / (c * c);
                 },
                 a_ * (1.0 - 1e-12), a_, [this](double u) { return series(u); }, std::pow(0.05, 1.0 / q)) {}

    double f(double u) const override { return std::tan(std::pow(u, q_)); }
    double df(double u) const override {
        const double c = std::cos(std::pow(u, q_));
        return q_ * std::pow(u, q_ - 1.0) / (c * c);
    }
    double capital_f(double u) const override { return table_(u); }

private:
    double series(double u) const {
        static constexpr double c[] = {1.0, 1.0 / 3.0, 2.0 / 15.0, 17.0 / 315.0, 62.0 / 2835.0, 1382.0 / 155925.0};
        const double x = std::pow(u, q_);
        double xp = x, sum = 0.0;
        for (int j = 0; j < 6; ++j) {
            sum += c[j] * xp / ((2 * j + 1) * q_ + 1.0);
            xp *= x * x;
        }
        return u * sum;
    }

    double q_;
    double a_;
    CumulativeTable table_;
};

// (1 - u^q)^{-p} - 1 on [0, 1).
class SingularPower final : public NonlinearityModel {
public:
    SingularPower(double p, double q) : p_(p), q_(q) {
        closed_ = (q == 1.0) || (q == 2.0 && (p == 1.0 || p == 0.5));
        if (!closed_) {
            table_.emplace([this](double u) { return f(u); }, [this](double u) { return df(u); }, 1.0 - 1e-12, 1.0,
                           [this](double u) { return series(u); }, std::pow(0.25, 1.0 / q));
        }
    }

    double f(double u) const override { return std::expm1(-p_ * std::log1p(-std::pow(u, q_))); }
    double df(double u) const override {
        return p_ * q_ * std::pow(u, q_ - 1.0) * std::exp((-p_ - 1.0) * std::log1p(-std::pow(u, q_)));
    }
    double capital_f(double u) const override {
        if (std::pow(u, q_) < 0.25) return series(u);
        if (table_) return (*table_)(u);
        if (q_ == 1.0) {
            if (p_ == 1.0) return -std::log1p(-u) - u;
            return std::expm1((1.0 - p_) * std::log1p(-u)) / (p_ - 1.0) - u;
        }
        if (p_ == 1.0) return std::atanh(u) - u;
        return std::asin(u) - u;
    }

private:
    double series(double u) const {
        const double w = std::pow(u, q_);
        double c = p_, wn = w, sum = 0.0;
        for (int n = 1; n < 400; ++n) {
            const double contrib = c * wn * u / (q_ * n + 1.0);
            sum += contrib;
            if (contrib < 1e-17 * sum) break;
            c *= (p_ + n) / (n + 1.0);
            wn *= w;
        }
        return sum;
    }

    double p_, q_;
    bool closed_ = false;
    std::optional<CumulativeTable> table_;
};

class NumericModel final : public NonlinearityModel {
public:
    NumericModel(std::function<double(double)> f, std::function<double(double)> df, double limit, double a)
        : f_(f), df_(df), table_(f, df, limit, a, nullptr, std::isfinite(a) ? 1e-3 * a : 1e-3) {}
    double f(double u) const override { return f_(u); }
    double df(double u) const override { return df_(u); }
    double capital_f(double u) const override { return table_(u); }

private:
    std::function<double(double)> f_, df_;
    CumulativeTable table_;
};

void require(bool ok, const FamilyDescriptor& d, const char* what) {
    if (!ok) throw ParameterError(fmt::format("{}: {}", d.to_string(), what));
}

Term parse_term(const FamilyDescriptor& d) {
    Term t;
    t.c = d.param_or("c", 1.0);
    require(t.c > 0.0, d, "coefficient c must be positive");
    if (d.kind == "power") {
        t.kind = Term::Kind::power;
        t.p = d.param("p");
        require(t.p > 0.0, d, "exponent p must be positive");
    } else if (d.kind == "exp_tail") {
        t.kind = Term::Kind::exp_tail;
        t.k = d.param_or("k", 1.0);
        const double m = d.param_or("m", 1.0);
        require(t.k > 0.0, d, "rate k must be positive");
        require(m >= 1.0 && m == std::floor(m) && m <= 20.0, d, "order m must be an integer in [1, 20]");
        t.m = static_cast<int>(m);
    } else if (d.kind == "gauss_tail") {
        t.kind = Term::Kind::gauss;
    } else if (d.kind == "power_exp") {
        t.kind = Term::Kind::power_exp;
        t.p = d.param("p");
        t.k = d.param("k");
        require(t.p > 0.0, d, "exponent p must be positive");
        require(t.k > 0.0, d, "rate k must be positive");
    } else {
        throw ParameterError(fmt::format("unknown term kind '{}'", d.kind));
    }
    return t;
}

FamilyDescriptor term(const std::string& kind, std::map<std::string, double> params = {}) {
    return FamilyDescriptor{kind, std::move(params), {}};
}

// Rewrites named sum families into primitive terms.
std::optional<std::vector<FamilyDescriptor>> expand_sum(const FamilyDescriptor& d) {
    const auto& k = d.kind;
    if (k == "power") return std::vector{term("power", {{"p", d.param("p")}})};
    if (k == "power_sum") return std::vector{term("power", {{"p", d.param("p")}}), term("power", {{"p", d.param("q")}})};
    if (k == "exp_minus_one") return std::vector{term("exp_tail")};
    if (k == "exp_plus_power") return std::vector{term("exp_tail"), term("power", {{"p", d.param("p")}})};
    if (k == "gauss_minus_one") return std::vector{term("gauss_tail")};
    if (k == "gauss_plus_power") return std::vector{term("gauss_tail"), term("power", {{"p", d.param("p")}})};
    if (k == "gauss_plus_power_plus_linear")
        return std::vector{term("gauss_tail"), term("power", {{"p", d.param("p")}}), term("power", {{"p", 1.0}})};
    if (k == "exp_minus_linear") return std::vector{term("exp_tail", {{"m", 2.0}})};
    if (k == "exp_quadratic") return std::vector{term("exp_tail", {{"m", 2.0}}), term("power", {{"p", 2.0}})};
    if (k == "exp_minus_linear_plus_power")
        return std::vector{term("exp_tail", {{"m", 2.0}}), term("power", {{"p", d.param("p")}})};
    if (k == "power_exp_plus_power")
        return std::vector{term("power_exp", {{"p", d.param("p")}, {"k", d.param("k")}}),
                           term("power", {{"p", d.param("q")}})};
    if (k == "sum") {
        require(!d.terms.empty(), d, "sum requires at least one term");
        return d.terms;
    }
    return std::nullopt;
}

NonlinearityTraits term_sum_traits(const std::vector<Term>& terms) {
    NonlinearityTraits tr;
    tr.endpoint_a = ExtendedReal::infinity();
    tr.c_constant = ExtendedReal::infinity();
    double fp0 = 0.0;
    double alpha = inf, e = 0.0;
    bool gauss = false;
    double kmax = 0.0;
    for (const auto& t : terms) {
        double a = 0.0, coeff = 0.0;
        switch (t.kind) {
            case Term::Kind::power:
                a = t.p;
                coeff = t.c;
                break;
            case Term::Kind::exp_tail: {
                a = t.m;
                coeff = t.c * std::pow(t.k, t.m) / std::tgamma(t.m + 1.0);
                kmax = std::max(kmax, t.k);
                break;
            }
            case Term::Kind::gauss:
                a = 2.0;
                coeff = t.c;
                gauss = true;
                break;
            case Term::Kind::power_exp:
                a = t.p;
                coeff = t.c;
                kmax = std::max(kmax, t.k);
                break;
        }
        if (a < 1.0) fp0 = inf;
        else if (a == 1.0) fp0 += coeff;
        if (a < alpha) {
            alpha = a;
            e = coeff;
        } else if (a == alpha) {
            e += coeff;
        }
    }
    tr.f_prime_at_zero = std::isfinite(fp0) ? ExtendedReal::finite(fp0) : ExtendedReal::infinity();
    tr.left_order = LeftOrder{alpha, e};
    if (gauss) tr.d_limit = ExtendedReal::finite(0.0);
    else if (kmax > 0.0) tr.d_limit = ExtendedReal::finite(1.0 / kmax);
    else tr.d_limit = ExtendedReal::infinity();
    return tr;
}

// Geometric approach to A of F/f; accepted when the last three agree to 1%.
void extrapolate_d(const NonlinearityModel& m, ExtendedReal a, double overflow, NonlinearityTraits& tr) {
    std::vector<double> seq;
    for (int j = 1; j <= 40; ++j) {
        double t;
        if (a.is_finite()) {
            t = a.value() * (1.0 - std::pow(10.0, -0.5 * j));
            if (j > 24) break;
        } else {
            t = std::pow(2.0, j);
            if (t > overflow) break;
        }
        const double fv = m.f(t), cap = m.capital_f(t);
        if (!std::isfinite(fv) || !std::isfinite(cap) || fv <= 0.0) break;
        seq.push_back(cap / fv);
    }
    tr.d_sequence = seq;
    if (seq.size() >= 3) {
        const double x = seq[seq.size() - 1], y = seq[seq.size() - 2], z = seq[seq.size() - 3];
        const double scale = std::max({std::abs(x), std::abs(y), std::abs(z)});
        if (scale == 0.0 || (std::abs(x - y) <= 0.01 * scale && std::abs(x - z) <= 0.01 * scale)) {
            tr.d_limit = ExtendedReal::finite(x < 1e-9 * (seq.front() + 1e-300) ? 0.0 : x);
            tr.d_limit_approximate = false;
            return;
        }
        if (x > y && y > z && x > 2.0 * z) {
            tr.d_limit = ExtendedReal::infinity();
            tr.d_limit_approximate = true;
            return;
        }
    }
    tr.d_limit = ExtendedReal::finite(seq.empty() ? 0.0 : seq.back());
    tr.d_limit_approximate = true;
}

double find_overflow_radius(const NonlinearityModel& m, double saturation) {
    if (std::isfinite(saturation)) return saturation;
    auto ok = [&](double u) {
        const double fv = m.f(u), dv = m.df(u), cap = m.capital_f(u);
        return std::isfinite(fv) && std::isfinite(dv) && std::isfinite(cap) && fv < 1e300 && dv < 1e300 &&
               cap < 1e300;
    };
    double lo = 1.0;
    if (!ok(lo)) {
        double hi = lo;
        lo = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (ok(mid)) lo = mid;
            else hi = mid;
        }
        return lo;
    }
    double hi = 2.0;
    while (ok(hi) && hi < 1e300) {
        lo = hi;
        hi *= 2.0;
    }
    if (hi >= 1e300) return lo;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

}  // namespace

double FamilyDescriptor::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ParameterError(fmt::format("{}: missing parameter '{}'", kind, key));
    return it->second;
}

double FamilyDescriptor::param_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::string FamilyDescriptor::to_string() const {
    std::string s = kind;
    if (!params.empty() || !terms.empty()) {
        s += "(";
        bool first = true;
        for (const auto& [k, v] : params) {
            if (!first) s += ",";
            s += fmt::format("{}={}", k, v);
            first = false;
        }
        for (const auto& t : terms) {
            if (!first) s += ",";
            s += t.to_string();
            first = false;
        }
        s += ")";
    }
    return s;
}

NonlinearityFamily::NonlinearityFamily(std::shared_ptr<const NonlinearityModel> model, NonlinearityTraits traits)
    : model_(std::move(model)), traits_(std::move(traits)) {
    if (traits_.endpoint_a.is_infinite() && traits_.c_constant.is_finite())
        throw ParameterError(traits_.label + ": A = +inf requires C = +inf");
    saturation_ = traits_.endpoint_a.is_finite() ? traits_.endpoint_a.value() * (1.0 - 1e-12) : inf;
    overflow_radius_ = find_overflow_radius(*model_, saturation_);
}

double NonlinearityFamily::capital_f_diff(double u, double r) const {
    r = clamp(r);
    u = std::min(clamp(u), r);
    return capital_f_drop(r, r - u);
}

double NonlinearityFamily::capital_f_drop(double r, double h) const {
    r = clamp(r);
    h = std::min(h, r);
    if (!(h > 0.0)) return 0.0;
    bool short_interval = h <= 0.1 * r;
    if (short_interval && traits_.endpoint_a.is_finite()) short_interval = h <= 0.1 * (traits_.endpoint_a.value() - r);
    if (short_interval) {
        const double fr = model_->f(r), dfr = model_->df(r);
        short_interval = h * dfr <= fr;
    }
    if (short_interval) {
        // 15-point Kronrod rule on [r - h, r] with offsets taken from h, not from a rounded r - h.
        const double half = 0.5 * h;
        double sum = detail::kronrod_weights[7] * model_->f(r - half);
        for (int j = 0; j < 7; ++j) {
            const double dx = half * detail::kronrod_nodes[j];
            sum += detail::kronrod_weights[j] * (model_->f(r - half - dx) + model_->f(r - half + dx));
        }
        return half * sum;
    }
    return model_->capital_f(r) - model_->capital_f(r - h);
}

double NonlinearityFamily::capital_f_inv(double y) const {
    if (!(y > 0.0)) return 0.0;
    if (traits_.c_constant.is_finite() && y >= traits_.c_constant.value()) return saturation_;
    if (auto closed = model_->capital_f_inv(y)) return std::min(*closed, saturation_);
    auto cap = [this](double u) { return model_->capital_f(u); };
    auto fn = [this](double u) { return model_->f(u); };
    double hi;
    if (std::isfinite(saturation_)) {
        hi = saturation_;
        if (cap(hi) <= y) return saturation_;
    } else {
        hi = 1.0;
        while (cap(hi) < y) {
            hi *= 2.0;
            if (hi > overflow_radius_) {
                hi = overflow_radius_;
                if (cap(hi) <= y) return hi;
                break;
            }
        }
    }
    return invert_increasing(cap, fn, y, 0.0, hi);
}

std::vector<std::string> cataloged_kinds() {
    return {"power", "power_sum", "shifted_power", "exp_minus_one", "exp_plus_power", "gauss_minus_one",
            "gauss_plus_power", "gauss_plus_power_plus_linear", "exp_minus_linear", "exp_quadratic",
            "exp_minus_linear_plus_power", "power_exp_plus_power", "sum", "tan", "tan_power", "singular_power",
            "singular_linear", "singular_quadratic", "inv_sqrt_linear", "inv_sqrt_quadratic"};
}

NonlinearityFamily make_f(const FamilyDescriptor& spec) {
    if (auto expanded = expand_sum(spec)) {
        std::vector<Term> terms;
        for (const auto& t : *expanded) terms.push_back(parse_term(t));
        NonlinearityTraits tr = term_sum_traits(terms);
        tr.label = spec.to_string();
        return NonlinearityFamily(std::make_shared<TermSum>(std::move(terms)), std::move(tr));
    }
    NonlinearityTraits tr;
    tr.label = spec.to_string();
    const auto& k = spec.kind;
    if (k == "shifted_power") {
        const double p = spec.param("p");
        require(p > 0.0, spec, "exponent p must be positive");
        tr.f_prime_at_zero = ExtendedReal::finite(p);
        tr.left_order = LeftOrder{1.0, p};
        tr.d_limit = ExtendedReal::infinity();
        return NonlinearityFamily(std::make_shared<ShiftedPower>(p), std::move(tr));
    }
    if (k == "tan" || k == "tan_power") {
        const double q = k == "tan" ? 1.0 : spec.param("q");
        require(q > 0.0, spec, "exponent q must be positive");
        tr.endpoint_a = ExtendedReal::finite(std::pow(0.5 * pi, 1.0 / q));
        tr.c_constant = ExtendedReal::infinity();
        tr.f_prime_at_zero = q == 1.0 ? ExtendedReal::finite(1.0)
                                      : (q > 1.0 ? ExtendedReal::finite(0.0) : ExtendedReal::infinity());
        tr.left_order = LeftOrder{q, 1.0};
        tr.d_limit = ExtendedReal::finite(0.0);
        std::shared_ptr<const NonlinearityModel> model;
        if (q == 1.0) model = std::make_shared<Tangent>();
        else model = std::make_shared<TangentPower>(q);
        return NonlinearityFamily(std::move(model), std::move(tr));
    }
    double p = 0.0, q = 0.0;
    if (k == "singular_power") {
        p = spec.param("p");
        q = spec.param_or("q", 1.0);
    } else if (k == "singular_linear") {
        p = 1.0;
        q = 1.0;
    } else if (k == "singular_quadratic") {
        p = 1.0;
        q = 2.0;
    } else if (k == "inv_sqrt_linear") {
        p = 0.5;
        q = 1.0;
    } else if (k == "inv_sqrt_quadratic") {
        p = 0.5;
        q = 2.0;
    } else {
        throw ParameterError(fmt::format("unknown nonlinearity kind '{}'", k));
    }
    require(p > 0.0, spec, "exponent p must be positive");
    require(q > 0.0, spec, "exponent q must be positive");
    tr.endpoint_a = ExtendedReal::finite(1.0);
    if (p < 1.0) {
        const double c = std::tgamma(1.0 / q) * std::tgamma(1.0 - p) / (q * std::tgamma(1.0 / q + 1.0 - p)) - 1.0;
        tr.c_constant = ExtendedReal::finite(c);
    } else {
        tr.c_constant = ExtendedReal::infinity();
    }
    tr.f_prime_at_zero = q == 1.0 ? ExtendedReal::finite(p) : (q > 1.0 ? ExtendedReal::finite(0.0) : ExtendedReal::infinity());
    tr.left_order = LeftOrder{q, p};
    tr.d_limit = ExtendedReal::finite(0.0);
    return NonlinearityFamily(std::make_shared<SingularPower>(p, q), std::move(tr));
}

NonlinearityFamily make_f_numeric(std::string label, std::function<double(double)> f,
                                  std::function<double(double)> df, ExtendedReal endpoint_a) {
    const double a = endpoint_a.to_double();
    const double limit = std::isfinite(a) ? a * (1.0 - 1e-12) : 1e6;
    auto model = std::make_shared<NumericModel>(f, df, limit, a);
    NonlinearityTraits tr;
    tr.label = std::move(label);
    tr.endpoint_a = endpoint_a;
    const double d0 = df(0.0);
    tr.f_prime_at_zero = std::isfinite(d0) ? ExtendedReal::finite(d0) : ExtendedReal::infinity();
    if (endpoint_a.is_finite()) {
        std::vector<double> vals;
        for (int j = 1; j <= 12; ++j) vals.push_back(model->capital_f(a * (1.0 - std::pow(10.0, -j))));
        const std::size_t n = vals.size();
        const double i1 = vals[n - 1] - vals[n - 2], i2 = vals[n - 2] - vals[n - 3], i3 = vals[n - 3] - vals[n - 4];
        const bool geometric = i1 < 0.9 * i2 && i2 < 0.9 * i3;
        if (geometric) {
            const double rho = i1 / i2;
            tr.c_constant = ExtendedReal::finite(vals.back() + i1 * rho / (1.0 - rho));
        } else {
            tr.c_constant = ExtendedReal::infinity();
        }
    }
    double sat = std::isfinite(a) ? a * (1.0 - 1e-12) : inf;
    extrapolate_d(*model, endpoint_a, std::isfinite(sat) ? sat : find_overflow_radius(*model, sat), tr);
    return NonlinearityFamily(std::move(model), std::move(tr));
}

}  // namespace quasibif
