#pragma once

#include "sasaki/frenet.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace sasaki {

struct BiharmonicOptions {
    double bitension_tol = 1e-4;   // proper-biharmonic certification bound on ‖τ₂‖_sup
    double tension_floor = 1e-3;   // ‖τ‖_inf above this means non-harmonic
    double constant_tol = 1e-5;    // "numerically constant": max - min below this
    double path_tol = 1e-5;        // allowed sup difference of the two bitension paths
    double condition_tol = 1e-5;   // allowed residual of the case conditions
    double case_margin = 1e-3;     // f within this of 0 or ±1 selects Cases II / III
};

// τ = ∇_T T at each evaluable sample.
std::vector<Vec> tension(const SasakianSphere& S, const SampledCurve& curve, const CurveEvalOptions& opt = {});

struct BitensionBreakdown {
    std::vector<int> samples;
    std::vector<double> params;
    std::vector<Vec> tension;
    std::vector<Vec> direct;    // ∇³_T T - R(T, ∇_T T)T
    std::vector<Vec> frenet;    // five-term expansion
    // coefficients along E1, E2, E3, E4 and φT of the expansion
    std::vector<std::array<double, 5>> components;
    std::vector<double> f;      // g(E2, φT)
    double sup = 0, l2 = 0;     // of the direct path
    double frenet_sup = 0;
    double path_disagreement = 0;
    double resum_residual = 0;
    double curvature_term_residual = 0;  // R(T,∇_T T)T against its Frenet form
    double tangential_residual = 0;      // sup |g(τ₂, T)|
    double tension_sup = 0, tension_inf = 0;
    bool paths_agree = true;
};

BitensionBreakdown bitension(const Connection& C, const CurveAnalysis& analysis, const SampledCurve& curve,
                             const BiharmonicOptions& opt = {});
BitensionBreakdown bitension(const SasakianSphere& S, const SampledCurve& curve, const BiharmonicOptions& opt = {},
                             const CurveEvalOptions& eval = {});

struct Condition {
    std::string name;
    double residual = 0;
    bool ok = true;
};

struct Measured {
    double kappa1 = 0, kappa2 = 0, kappa3 = 0;
    double f = 0;
    double f_spread = 0;
    std::optional<double> alpha0, alpha0_std;
    std::optional<double> omega0, omega0_var;
};

struct ClassificationVerdict {
    // geodesic, I, II, III, IV, non-biharmonic, indeterminate
    std::string case_name;
    bool biharmonic = false;
    bool proper = false;
    bool conditions_hold = true;
    Measured measured;
    std::vector<Condition> conditions;
    std::vector<std::string> notes;
};

ClassificationVerdict classify(const SasakianSphere& S, const CurveAnalysis& analysis, const BitensionBreakdown& b,
                               const BiharmonicOptions& opt = {});

enum class CaseId { I, II, III, IV };
std::string to_string(CaseId c);
CaseId parse_case(const std::string& s);

struct FeasibilityParams {
    std::optional<int> n;
    std::optional<double> alpha0;      // Case IV
    std::optional<bool> helix;         // Case II: circle (false) or helix (true)
};

struct Feasibility {
    bool feasible = false;
    std::vector<std::string> reasons;  // violated inequalities, or the satisfied ones when feasible
};

// Whether proper-biharmonic Legendre curves exist in the given case at curvature c.
Feasibility feasibility(double c, CaseId which, const FeasibilityParams& p = {});

}  // namespace sasaki
