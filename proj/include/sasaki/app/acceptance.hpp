#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sasaki::app {

struct Check {
    std::string name;
    double value = 0;
    double threshold = 0;
    std::string relation;  // "<", ">" or "=="
    bool ok = false;
};

struct CriterionResult {
    int id = 0;  // 0 for calibrations
    std::string title;
    std::vector<Check> checks;
    bool pass = false;
    double seconds = 0;
    std::string error;  // set when the run threw
};

struct AcceptanceOptions {
    bool fast = false;                     // reduced grids and sample counts
    unsigned long long seed = 20240611;
};

constexpr int kCriterionCount = 11;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt = {});

// Startup calibrations: round-sphere curvature, bitension sign, structure identities.
std::vector<CriterionResult> run_calibrations(const AcceptanceOptions& opt = {});

// "PASS  [k] title (worst check)" or "FAIL ..." followed by the failed checks.
std::string format_line(const CriterionResult& r, bool verbose = false);

struct SelftestOptions {
    bool fast = false;
    bool inject_curvature_sign_flip = false;
    std::vector<int> criteria;  // empty: all
    unsigned long long seed = 20240611;
};

// Parses "1-8,10" style lists.
std::vector<int> parse_criteria(const std::string& s);

// Runs calibrations then criteria, prints one line each; returns 0 when all pass.
int run_selftest(const SelftestOptions& opt, std::ostream& out);

}  // namespace sasaki::app
