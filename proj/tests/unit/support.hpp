#pragma once

#include <cmath>
#include <map>
#include <string>

#include <quasibif/catalog.hpp>
#include <quasibif/nonlinearity.hpp>
#include <quasibif/phi.hpp>

namespace quasibif::test {

inline FamilyDescriptor fam(std::string kind, std::map<std::string, double> params = {}) {
    return FamilyDescriptor{std::move(kind), std::move(params), {}};
}

inline ProblemInstance instance(double k, const FamilyDescriptor& f) { return ProblemInstance(make_phi_k(k), make_f(f)); }

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace quasibif::test
