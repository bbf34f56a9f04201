#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conekit/report.hpp"

namespace conekit {

struct SuiteOptions {
    bool quick = false;  // skip the grid-solver parts (criterion 7 and the solver bases of 6 and 8)
    std::uint64_t seed = kDefaultSeed;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    VerificationReport report{""};
    double seconds = 0.0;
    double budget = 0.0;  // runtime limit in seconds
    bool skipped = false;
    std::string error;    // exception text if the criterion threw

    bool pass() const { return error.empty() && report.pass() && seconds <= budget; }
};

CriterionResult run_criterion(int id, const SuiteOptions& opt = {});
std::vector<CriterionResult> run_suite(const SuiteOptions& opt = {});
std::string criterion_line(const CriterionResult& r);
json suite_to_json(const std::vector<CriterionResult>& results, const SuiteOptions& opt);

}  // namespace conekit
