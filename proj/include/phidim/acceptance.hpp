#pragma once

#include <string>
#include <vector>

namespace phidim {

/// One verification criterion: a named end-to-end check with its wall time.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // one-line summary of the measured quantities
    double seconds = 0;
};

/// Runs the full verification battery in order: closed-form agreement,
/// schedule constructions against their targets, the covering-number
/// oracle against the estimators, structure audits, and the randomized
/// property suites. Never throws; a criterion that raises is reported as
/// failed with the exception text in its detail line.
std::vector<CriterionResult> run_acceptance(int threads = 4);

/// Formats one result as a single report line.
std::string format_criterion(const CriterionResult& r);

} // namespace phidim
