#include "quasibif/extended_real.hpp"

#include <fmt/format.h>

#include <limits>

#include "quasibif/errors.hpp"

namespace quasibif {

double ExtendedReal::value() const {
    if (infinite_) throw DomainError("ExtendedReal::value() called on +inf");
    return v_;
}

double ExtendedReal::to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : v_;
}

std::string ExtendedReal::to_string() const {
    if (infinite_) return "inf";
    return fmt::format("{:.17g}", v_);
}

ExtendedReal divide(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_infinite() && b.is_infinite()) throw DomainError("inf/inf is indeterminate");
    if (b.is_infinite()) return ExtendedReal::finite(0.0);
    if (b.value() == 0.0) throw DomainError("division by zero");
    if (a.is_infinite()) return ExtendedReal::infinity();
    return ExtendedReal::finite(a.value() / b.value());
}

}  // namespace quasibif
