#pragma once

#include <string>

namespace quasibif {

// A nonnegative-or-finite real that may also be +infinity. Arithmetic with
// the infinite state is explicit; value() throws instead of leaking inf.
class ExtendedReal {
public:
    constexpr ExtendedReal() = default;

    static constexpr ExtendedReal finite(double v) { return ExtendedReal(v, false); }
    static constexpr ExtendedReal infinity() { return ExtendedReal(0.0, true); }

    constexpr bool is_finite() const { return !infinite_; }
    constexpr bool is_infinite() const { return infinite_; }
    double value() const;
    constexpr double value_or(double fallback) const { return infinite_ ? fallback : v_; }

    // Maps +inf to the IEEE value for plotting and serialization boundaries.
    double to_double() const;

    std::string to_string() const;

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    friend constexpr bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.v_ < b.v_;
    }

private:
    constexpr ExtendedReal(double v, bool inf) : v_(v), infinite_(inf) {}
    double v_ = 0.0;
    bool infinite_ = false;
};

// Quotient a/b with the convention x/inf = 0 for finite x; inf/finite = inf.
ExtendedReal divide(const ExtendedReal& a, const ExtendedReal& b);

}  // namespace quasibif
