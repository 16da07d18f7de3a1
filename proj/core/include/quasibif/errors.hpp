#pragma once

#include <stdexcept>
#include <string>

namespace quasibif {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedFamily : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Carries the best available estimate when a tolerance could not be met.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double best_estimate, double est_error)
        : std::runtime_error(what), best_estimate_(best_estimate), est_error_(est_error) {}
    double best_estimate() const { return best_estimate_; }
    double est_error() const { return est_error_; }

private:
    double best_estimate_;
    double est_error_;
};

class RefinementRequired : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace quasibif
