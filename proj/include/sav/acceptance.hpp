#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sav {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // deterministic summary (goes into reports)
    std::string timing;  // wall-clock narrative (stdout only)
    double seconds = 0;
};

struct AcceptanceOptions {
    bool smoke = false;     // reduced scales, same code paths
    int threads = 2;
    uint64_t seed = 1;
    std::string out_dir;    // when nonempty, emit CSV reports there
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

/// One line per criterion on stdout; returns the count of failures.
int print_acceptance(const std::vector<CriterionResult>& rows);

}  // namespace sav
