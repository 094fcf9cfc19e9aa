#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moebius/config.hpp"
#include "moebius/probes.hpp"

namespace moebius {

struct CheckMetric {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct CheckResult {
    std::string id;
    std::string check;
    bool applicable = true;
    bool passed = true;
    std::vector<CheckMetric> metrics;
    std::string detail;
};

struct VerifyOptions {
    int n = 4;
    RunConfig cfg;
    std::map<std::string, double> params;
    std::optional<double> expect;  // constant-curvature target
    ExecutionMode mode = ExecutionMode::Parallel;
};

/// traces, integrability, lift-frame, closed-form, constant-curvature,
/// moebius-invariance, classification.
const std::vector<std::string>& check_names();

/// Runs the named checks on one catalog member. Inapplicable checks come
/// back with applicable = false and passed = true. Numeric failures inside a
/// check (umbilic probe and so on) mark the check failed with the error in
/// `detail`. Errors: UnknownId, std::invalid_argument for unknown checks.
std::vector<CheckResult> run_checks(const std::string& id, const std::vector<std::string>& checks,
                                    const VerifyOptions& opt);

}  // namespace moebius
