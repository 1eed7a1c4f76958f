#pragma once

#include "sasaki/chart.hpp"

#include <functional>
#include <memory>
#include <string>

namespace sasaki {

using VectorField = std::function<Vec(const Vec& w)>;
using DifferenceTensor = std::function<Vec(const Vec& z, const Vec& X, const Vec& Y)>;

struct ConnectionOptions {
    ChartFdOptions fd;
    bool force_chart = false;  // use the chart route even for the round metric
    double ambient_step = 1e-3;  // step for derivatives of fields along great circles
};

// Levi-Civita connection of (S^{2n+1}, g) in ambient form:
//   ∇_X Y = tan(D_X Y) + S_z(X, Y),
// where tan(D_X Y) is the round connection and S the difference tensor, obtained
// from finite-difference Christoffel symbols in a stereographic chart (zero when a = 1),
// or from a user correction that passed validation.
class Connection {
public:
    explicit Connection(SasakianSphere S, ConnectionOptions opt = {});

    const SasakianSphere& sphere() const { return S_; }
    const ConnectionOptions& options() const { return opt_; }
    std::string route() const;

    struct PointData {
        Vec z;
        bool trivial = true;
        StereoChart chart;
        Vec x;
        Mat jac;
        Christoffel delta;  // Gamma^g - Gamma^round in chart components
    };
    PointData prepare(const Vec& z) const;
    Vec difference(const PointData& p, const Vec& X, const Vec& Y) const;
    Vec difference(const Vec& z, const Vec& X, const Vec& Y) const;

    // ∇_X Y at z, given the ambient derivative DXY of any extension of Y in direction X.
    Vec covariant(const PointData& p, const Vec& X, const Vec& Y, const Vec& DXY) const;
    // ∇_X W for a vector field W defined near z on the sphere.
    Vec covariant(const Vec& z, const Vec& X, const VectorField& W) const;

    // Ambient derivative of W along the great circle through z with velocity X.
    Vec directional(const Vec& z, const Vec& X, const VectorField& W) const;
    double directional(const Vec& z, const Vec& X, const std::function<double(const Vec&)>& f) const;

    // Installs a closed-form difference tensor after it passes the torsion,
    // compatibility and Sasakian-identity suite at random points. Throws InvalidInput
    // naming the failed check otherwise.
    struct CorrectionReport {
        double torsion = 0, compatibility = 0, sasakian = 0, chart_agreement = 0;
    };
    CorrectionReport install_correction(DifferenceTensor corr, unsigned long long seed = 7, int points = 8);
    bool has_correction() const { return static_cast<bool>(corr_); }

    Connection with_richardson() const;

private:
    SasakianSphere S_;
    ConnectionOptions opt_;
    std::shared_ptr<const DifferenceTensor> corr_;
};

// Candidate closed-form difference tensor of the deformed metric:
//   -(a-1) [eta0(X) phi Y + eta0(Y) phi X].
DifferenceTensor tanno_difference(const SasakianSphere& S);

enum class Extension { AmbientProjected, ChartConstant };
std::string to_string(Extension e);

// Extends a tangent vector X at z to a field near z.
VectorField extend(const Vec& z, const Vec& X, Extension kind);

struct ValidationOptions {
    Extension extension = Extension::AmbientProjected;
    double phi_scale = 1.0;  // negative-control hook: evaluate with phi scaled
    std::function<Vec(const Vec& w, const Vec& V)> phi_override;  // negative-control hook
};

struct Residual {
    double value = 0;
    bool refined = false;  // Richardson refinement was applied
};

// |(∇_X φ)Y - g(X,Y)ξ + η(Y)X|_g
Residual check_sasakian_identity(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                                 const ValidationOptions& opt = {}, double tol = 1e-4);
// |N_φ(X,Y) + 2 dη(X,Y) ξ|_g
Residual check_normality(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                         const ValidationOptions& opt = {}, double tol = 1e-5);
// |g(X, φY) - dη(X,Y)|
Residual check_contact_form(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                            const ValidationOptions& opt = {}, double tol = 1e-5);
// |∇_X Y - ∇_Y X - [X,Y]|_g
Residual check_torsion(const Connection& C, const Vec& z, const Vec& X, const Vec& Y,
                       const ValidationOptions& opt = {}, double tol = 1e-5);
// |X g(Y,Z) - g(∇_X Y, Z) - g(Y, ∇_X Z)|
Residual check_compatibility(const Connection& C, const Vec& z, const Vec& X, const Vec& Y, const Vec& Z,
                             const ValidationOptions& opt = {}, double tol = 1e-5);
// |∇_X ξ + φX|_g
Residual check_reeb_derivative(const Connection& C, const Vec& z, const Vec& X, double tol = 1e-5);

// dη(X,Y) = 1/2 (X η(Y) - Y η(X) - η([X,Y])) on extended fields.
double d_eta(const Connection& C, const Vec& z, const Vec& X, const Vec& Y, Extension kind);

}  // namespace sasaki
