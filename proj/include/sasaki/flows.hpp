#pragma once

#include "sasaki/frenet.hpp"
#include "sasaki/immersion.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sasaki {

// φ_t(z) = cos(t/a) z - sin(t/a) 𝒮z for the structure selected by S.
Vec reeb_flow(const SasakianSphere& S, double t, const Vec& z);
// dφ_t: the same linear map applied to a tangent vector.
Vec flow_differential(const SasakianSphere& S, double t, const Vec& v);

struct ComposeOptions {
    int t_count = 64;
    double integral_tol = 1e-8;  // sup |η(∂_i F)| allowed on the base
    double rank_tol = 1e-8;      // Gram determinant floor
};

// Grid view of a sampled curve (one axis, periodic when the curve is).
ImmersionGrid curve_as_grid(const SampledCurve& curve);

// Derivatives ∂_i F and ∂_i∂_j F at a node, exact for analytic grids and by
// finite differences along the axes otherwise.
struct NodeJet {
    Vec point;
    std::vector<Vec> d1;                // d1[i]
    std::vector<std::vector<Vec>> d2;   // d2[i][j]
};
NodeJet node_jet(const ImmersionGrid& grid, int node, int accuracy = 8);
bool node_is_interior(const ImmersionGrid& grid, int node, int margin);

// sup over nodes of |η(∂_i F)|
double integral_residual(const SasakianSphere& S, const ImmersionGrid& grid);
// min over nodes of the Gram determinant of g(∂_i F, ∂_j F)
double min_gram_determinant(const SasakianSphere& S, const ImmersionGrid& grid);

// F(t, p) = φ_t(p). The base must be integral and of full rank; the new time axis has
// period 2πa and is placed first. An analytic base yields an analytic result.
ImmersionGrid compose_flow(const SasakianSphere& S, const ImmersionGrid& base, const ComposeOptions& opt = {});
ImmersionGrid compose_flow(const SasakianSphere& S, const SampledCurve& base, const ComposeOptions& opt = {});
ImmersionGrid compose_flow(const SasakianSphere& S, const Vec& point, const ComposeOptions& opt = {});

struct PullbackField {
    std::vector<int> nodes;
    std::vector<Vec> values;
};

struct ImmersionEvalOptions {
    double step = 1e-2;            // local stencil step for analytic grids
    int grid_accuracy = 8;         // stencil accuracy for grids without an analytic map
    double subsample = 0.05;       // node fraction evaluated on three-parameter grids
    bool all_nodes = false;        // evaluate every node regardless of dimension
    std::vector<int> nodes;        // explicit node list (overrides the two options above)
    unsigned long long seed = 1;
    bool refine = true;            // repeat at half step and report the disagreement
    double refine_tol = 1e-4;
    double max_condition = 1e6;    // induced-metric condition number bound
    int threads = 0;
};

// Nodes selected by the options: all nodes, or for three-parameter grids a seeded
// random fraction plus every node of the slice with first index 0.
std::vector<int> evaluation_nodes(const ImmersionGrid& grid, const ImmersionEvalOptions& opt);

struct ImmersionFields {
    PullbackField tension;
    PullbackField bitension;
    PullbackField tension_flow_derivative;  // ∇_{∂_0} τ, the first parameter direction
    double tension_sup = 0, tension_inf = 0, tension_mean = 0, tension_rel_std = 0;
    double bitension_sup = 0;
    double refinement_disagreement = 0;  // sup |τ₂(h) - τ₂(h/2)|
    bool resolved = true;
    bool subsampled = false;
    std::string mode;  // "analytic-stencil" or "grid"
    std::vector<std::string> notes;
};

ImmersionFields immersion_fields(const SasakianSphere& S, const ImmersionGrid& grid, const ImmersionEvalOptions& opt = {});
PullbackField immersion_tension(const SasakianSphere& S, const ImmersionGrid& grid, const ImmersionEvalOptions& opt = {});
PullbackField immersion_bitension(const SasakianSphere& S, const ImmersionGrid& grid, const ImmersionEvalOptions& opt = {});

struct EquivarianceReport {
    double residual = 0;        // sup |τ₂(F)_{(t,p)} - dφ_t τ₂(i)_p|_g
    double base_bitension_sup = 0;
    double composed_bitension_sup = 0;
    int nodes = 0;
    ImmersionFields composed;
};
// `composed` must come from compose_flow(S, base): its node (t, p) has base node p.
EquivarianceReport check_equivariance(const SasakianSphere& S, const ImmersionGrid& base, const ImmersionGrid& composed,
                                      const ImmersionEvalOptions& opt = {});

// The first parameter is taken as the flow direction for the Reeb and orthogonality entries.
struct FlowGeometry {
    double reeb_tangent = 0;     // sup |∂_t F - ξ∘F|_g
    double reeb_unit = 0;        // sup |g(∂_t F, ∂_t F) - 1|
    double orthogonality = 0;    // sup |g(∂_t F, ∂_j F)| / |∂_j F|_g over base directions
    double anti_invariance = 0;  // sup |g(φX, ∂_k F)| / (|X| |∂_k F|), X the part of ∂_j F normal to ξ
};
FlowGeometry flow_geometry(const SasakianSphere& S, const ImmersionGrid& composed, const std::vector<int>& nodes = {});

// sup |∇_{∂_t} τ(F) + φ τ(F)|_g over the evaluated nodes.
double tension_rotation_residual(const SasakianSphere& S, const ImmersionFields& fields, const ImmersionGrid& composed);

}  // namespace sasaki
