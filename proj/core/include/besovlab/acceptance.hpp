#pragma once

#include <iosfwd>

#include "besovlab/common.hpp"

namespace besovlab {

// ---------------------------------------------------------------------------
// The acceptance suite: one entry per criterion, each evaluated at its stated
// tolerance. Exposed as a library so both the test binary and the `selftest`
// CLI subcommand run exactly the same checks.
// ---------------------------------------------------------------------------
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct AcceptanceOptions {
    int only = 0; // run a single criterion (1..11); 0 = all
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// Prints "[PASS]/[FAIL] criterion N: ..." lines; returns the number of
/// failures.
int print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

} // namespace besovlab
