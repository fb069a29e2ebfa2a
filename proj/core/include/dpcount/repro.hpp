#pragma once

// The reproduction suite: every acceptance criterion as an executable check
// with machine-readable results.  Shared by the CLI `repro` subcommand and
// the acceptance test driver.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace dpc::repro {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::string details;        // one-line human summary
    nlohmann::json data;        // deterministic payload (used by the determinism check)
};

struct SuiteResult {
    std::vector<CriterionResult> criteria;
    int workers = 1;

    bool all_pass() const;
    nlohmann::json to_json(bool include_timing = true) const;
    // canonical serialization of the deterministic payloads only
    std::string canonical_data() const;
};

// Runs criteria 1-10 at the given worker count; log (if nonnull) receives a
// PASS/FAIL line per criterion as it completes.
SuiteResult run_criteria(int workers, std::ostream* log = nullptr);

// Runs the full suite: criteria 1-10 at `workers`, then the determinism
// criterion 11 (re-running the counting-sensitive suite at worker count 1 and
// comparing canonical payloads).
SuiteResult run_acceptance(int workers, std::ostream* log = nullptr);

}  // namespace dpc::repro
