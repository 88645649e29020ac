#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "paulitomo/rng.hpp"

namespace paulitomo {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_passed() const;
};

/// Known suites: symplectic, pauli, clifford, lcu, tomo, metrics, composed.
std::vector<std::string> verify_suite_names();

/// Runs one module's invariant checks. Throws std::invalid_argument for an
/// unknown suite name.
SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed);

void print_suite_result(const SuiteResult& result, std::ostream& out);

}  // namespace paulitomo
