#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <quasibif/catalog.hpp>
#include <quasibif/gfunction.hpp>

#include "config.hpp"

namespace quasibif::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_verification_failure = 1,
    exit_config_error = 2,
    exit_classification_failure = 3,
    exit_numeric_failure = 4,
};

class ClassificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "IV-γ₀", "V-β₀", ...; empty for Cases I-III.
std::string type_display(CaseId c, GType t);

int cmd_classify(const RunConfig& cfg, std::ostream& out);
int cmd_timemap(const RunConfig& cfg, std::ostream& out);
int cmd_gcurve(const RunConfig& cfg, std::ostream& out);
int cmd_bifurcate(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_report(const RunConfig& cfg, std::ostream& out);

// Dispatches cfg.command and maps exceptions to exit codes, printing the reason to err.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace quasibif::cli
