#pragma once

#include "sasaki/frenet.hpp"

#include <random>
#include <string>
#include <vector>

namespace sasaki {

// Periodic curve maps γ: R/PZ → S^{2n+1} with the flat domain metric dt².
// Derivatives on sample grids are spectral (trigonometric interpolation).

struct BienergyValue {
    double E2 = 0;
    int samples = 0;
    std::vector<double> tension_norms;  // |∇_{γ'}γ'|_g per sample
    double refinement_rel = 0;          // relative change between resolutions
};

BienergyValue bienergy(const SasakianSphere& S, const SampledCurve& curve);

// Tension and bitension of the map on its periodic sample grid.
std::vector<Vec> map_tension(const SasakianSphere& S, const SampledCurve& curve);
std::vector<Vec> map_bitension(const SasakianSphere& S, const SampledCurve& curve);

struct VariationField {
    std::vector<Vec> values;  // tangent at each sample
    int modes = 0;
};

// Projects a Fourier series with Gaussian coefficients (modes 0..modes) onto the
// tangent spaces and normalizes its root-mean-square g-norm to one.
VariationField random_variation(const SasakianSphere& S, const SampledCurve& curve, int modes, std::mt19937_64& rng);
// Tangential part of arbitrary samples, RMS-normalized.
VariationField normalized_variation(const SasakianSphere& S, const SampledCurve& curve, const std::vector<Vec>& values);

struct VariationOptions {
    double epsilon = 1e-4;
    bool richardson = true;
};

// d/dε E₂(exp_γ(εV)) at ε = 0 by central differences; round sphere only.
double first_variation(const SasakianSphere& S, const SampledCurve& curve, const VariationField& V,
                       const VariationOptions& opt = {});

struct VariationCheck {
    double fd = 0;       // first_variation
    double formula = 0;  // ∫ g(τ₂, V) dt
    double residual = 0;
    std::string field_route;  // where τ₂ came from
};
VariationCheck variation_formula_check(const SasakianSphere& S, const SampledCurve& curve, const VariationField& V,
                                       const VariationOptions& opt = {});

// Truncated Fourier series c(t) = Σ_k a_k cos(kωt) + b_k sin(kωt), ω = 2π/period,
// mapped to the sphere by c/|c|.
struct FourierCurve {
    double period = 0;
    std::vector<Vec> a, b;  // modes 0..K (b[0] unused)
    int modes() const { return static_cast<int>(a.size()) - 1; }
    static FourierCurve fit(const SampledCurve& curve, int modes);
    SampledCurve sample(int samples) const;
    std::vector<double> pack() const;
    void unpack(const std::vector<double>& x);
};

double fourier_bienergy(const SasakianSphere& S, const FourierCurve& F, int samples);
// Gradient of fourier_bienergy in packed coefficient order, assembled from τ₂.
std::vector<double> coefficient_gradient(const SasakianSphere& S, const FourierCurve& F, int samples);

struct DescentOptions {
    int steps = 500;
    double rate = 1.0;            // initial step size
    int modes = 16;
    int samples = 0;              // 0: the input sample count
    double armijo = 1e-4;
    double shrink = 0.5;
    double grow = 2.0;
    int max_backtracks = 60;
};

struct DescentStep {
    int step = 0;
    double E2 = 0, tension_sup = 0, bitension_sup = 0, step_size = 0;
};

struct DescentResult {
    std::vector<DescentStep> trajectory;
    SampledCurve final_curve;
    bool line_search_failed = false;
    std::string message;
};

// Preconditioned gradient descent on the Fourier coefficients with backtracking;
// only decreasing steps are accepted.
DescentResult descend(const SasakianSphere& S, const SampledCurve& init, const DescentOptions& opt = {});
std::string trajectory_csv(const DescentResult& r);

}  // namespace sasaki
