#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace djcm {

struct ValidationOptions {
    std::uint64_t seed = 20240611;
    int tuples = 1000;
    // Figure-trajectory checks use the ODE oracle instead of the residue expansion.
    bool force_oracle = false;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    // Measured numbers, formatted deterministically.
    std::string detail;
};

struct ValidationReport {
    ValidationOptions options;
    std::vector<CriterionResult> criteria;

    bool all_passed() const;
    // One "PASS|FAIL <id> <name>: <detail>" line per criterion.  No timings.
    std::string render() const;
};

// Criteria 1-9 once.
std::vector<CriterionResult> run_property_checks(const ValidationOptions& opt);

// Criteria 1-9, then a second pass whose rendering must match the first (10).
ValidationReport run_validation(const ValidationOptions& opt);

// Uniform double in [0, 1) from the top 53 bits.
double unit_uniform(std::uint64_t bits);

}  // namespace djcm
