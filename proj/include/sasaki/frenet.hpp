#pragma once

#include "sasaki/connection.hpp"
#include "sasaki/trig_map.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sasaki {

struct SampledCurve {
    std::vector<double> params;
    std::vector<Vec> points;
    bool periodic = false;
    double period = 0.0;
    bool unit_speed = false;  // claimed parametrization by g-arc length
    std::shared_ptr<const TrigMap> analytic;  // exact derivatives when present
    std::string family;
    std::map<std::string, double> family_params;

    int size() const { return static_cast<int>(points.size()); }
    int ambient_dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
    double spacing() const;

    // Uniform samples of an analytic curve on [t0, t0 + length); the endpoint is
    // omitted for periodic curves.
    static SampledCurve from_map(std::shared_ptr<const TrigMap> map, double t0, double length, int samples,
                                 bool periodic);
    // Validates a strictly increasing uniform grid and on-sphere points.
    static SampledCurve from_points(std::vector<double> params, std::vector<Vec> points, bool periodic, double period);
};

// Derivative of the given order (1..4) at parameter t: analytic evaluator when present,
// otherwise a fourth-order stencil on the grid (t must be a grid node).
Vec derivative(const SampledCurve& curve, int order, double t);

struct CurveEvalOptions {
    double analytic_step = 1e-2;  // local stencil step for fields along analytic curves
    double drop_tol = 1e-6;       // osculating-order threshold on κ_i
    int max_order = 6;            // largest osculating order resolved
};

// Samples of a curve around one grid node: offsets -R..R with spacing h.
struct LocalCurve {
    int radius = 0;
    double h = 0.0;
    double s = 0.0;
    std::vector<Vec> pos, vel, acc;
    const Vec& at(const std::vector<Vec>& v, int o) const { return v[o + radius]; }
};

// Samples at which locally centered evaluation is possible (all samples unless the
// curve is a non-periodic grid, where the ends are trimmed).
std::vector<int> evaluable_samples(const SampledCurve& curve, int radius);
LocalCurve local_curve(const SampledCurve& curve, int index, int radius, double analytic_step);

enum class CovariantRoute { Ambient, Chart };

struct CurvePointView {
    double s;
    Vec pos, vel, acc;
};
using FieldAlongCurve = std::function<Vec(const CurvePointView&)>;

// ∇_T X at each evaluable sample. Ambient route: tangential part of the derivative plus
// the difference tensor; chart route: components and Christoffel symbols of g in one
// stereographic chart per sample.
struct CovariantResult {
    std::vector<int> samples;
    std::vector<Vec> values;
};
CovariantResult covariant_derivative(const Connection& C, const SampledCurve& curve, const FieldAlongCurve& X,
                                     CovariantRoute route, const CurveEvalOptions& opt = {});

struct FrenetApparatus {
    int order = 0;               // osculating order r (valid when !indeterminate)
    bool indeterminate = false;  // κ_i vanishes on part of the grid only
    bool capped = false;         // all resolved curvatures are positive
    std::vector<int> samples;
    std::vector<double> params;
    std::vector<std::vector<Vec>> frames;      // frames[i][k] = E_{i+1} at sample k
    std::vector<std::vector<double>> kappa;    // kappa[i][k] = κ_{i+1} at sample k
    std::vector<int> pointwise_order;
    double frame_continuity = 1.0;  // min over samples and i of g(E_i(k), E_i(k+1))
};

// Per-sample data shared by the Frenet and bitension computations.
struct SampleAnalysis {
    double s = 0.0;
    Vec point, T, X1, X2, X3;  // X_k = ∇_T^k T
    std::vector<Vec> E;        // E_1 ... as far as resolved
    std::vector<double> kappa;
    int order = 1;
    double k1p = 0, k1pp = 0, k2p = 0;  // κ1', κ1'', κ2'
    Vec phiT, xi, nabla_phiT;
};

struct CurveAnalysis {
    std::vector<int> samples;
    std::vector<SampleAnalysis> data;
    FrenetApparatus apparatus;
    double speed_defect = 0.0;  // max |g(γ',γ') - 1|
};

CurveAnalysis analyze_curve(const Connection& C, const SampledCurve& curve, const CurveEvalOptions& opt = {});

FrenetApparatus frenet_apparatus(const SasakianSphere& S, const SampledCurve& curve, const CurveEvalOptions& opt = {});
FrenetApparatus frenet_apparatus(const Connection& C, const SampledCurve& curve, const CurveEvalOptions& opt = {});

double legendre_residual(const SasakianSphere& S, const SampledCurve& curve);
std::vector<double> speed_profile(const SasakianSphere& S, const SampledCurve& curve);

// Reparametrizes by g-arc length: cumulative quadrature of the speed, monotone cubic
// inversion, Hermite interpolation of the points, renormalization to the sphere.
SampledCurve reparametrize_by_arclength(const SasakianSphere& S, const SampledCurve& curve, int samples = 0);

}  // namespace sasaki
