#pragma once

#include "sasaki/app/config.hpp"
#include "sasaki/biharmonic.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sasaki::app {

// Runs the command line; returns the process exit code (0 verified, 1 tolerance
// failure, 2 invalid input).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "lo:hi:count" or a comma-separated list. Throws InvalidInput on an empty range.
std::vector<double> parse_range(const std::string& spec, const std::string& what);

struct SweepRequest {
    std::vector<CaseId> cases;
    std::vector<double> a_values;  // used when c_values is empty
    std::vector<double> c_values;
    std::vector<double> kappa1_values;
    std::vector<double> alpha0_values;
    std::optional<int> n;
    bool verify = false;
    int threads = 0;
};

struct SweepRow {
    CaseId which = CaseId::I;
    std::string shape;  // circle, helix, or "-" for Case IV
    int n = 0;          // 0 when unconstrained
    double a = 0, c = 0;
    std::optional<double> alpha0, kappa1, kappa2;
    Feasibility feasibility;
    double target = 0;  // κ₁² + κ₂² (Cases I, II, IV) or κ₁² (Case III)
    std::string verdict = "";
    std::optional<double> bitension_sup;
};

std::vector<SweepRow> run_sweep(const SweepRequest& req, const Config& cfg);
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace sasaki::app
