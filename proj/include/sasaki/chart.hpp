#pragma once

#include "sasaki/sasakian.hpp"

#include <vector>

namespace sasaki {

// Stereographic projection from the pole sigma * e_last.
struct StereoChart {
    int sigma = 1;
    int ambient_dim = 0;

    // Uses the pole opposite to the point whenever |z_last| > 0.7 on the pole side.
    static StereoChart for_point(const Vec& z);

    int dim() const { return ambient_dim - 1; }
    Vec to_chart(const Vec& z) const;
    Vec from_chart(const Vec& x) const;
    Mat jacobian(const Vec& x) const;            // dz/dx, ambient_dim x dim
    Vec pull(const Vec& z, const Vec& V) const;  // chart components of a tangent vector at z
};

using Christoffel = std::vector<Mat>;  // Gamma[k](i, j)

struct ChartFdOptions {
    double step = 1e-3;
    bool richardson = false;  // combine steps h and h/2
};

Mat chart_metric(const SasakianSphere& S, const StereoChart& chart, const Vec& x);
Christoffel christoffel_fd(const SasakianSphere& S, const StereoChart& chart, const Vec& x, const ChartFdOptions& opt = {});
// Closed form for the round metric 4|dx|^2/(1+|x|^2)^2.
Christoffel christoffel_round(const Vec& x);

// R^l_{kij} contracted: R(X,Y)Z in chart components, Christoffels and their
// derivatives by finite differences.
Vec riemann_fd_chart(const SasakianSphere& S, const StereoChart& chart, const Vec& x, const Vec& X, const Vec& Y,
                     const Vec& Z, const ChartFdOptions& opt = {});

// Curvature by finite differences in a stereographic chart, as an ambient vector.
Vec curvature_fd(const SasakianSphere& S, const Vec& z, const Vec& X, const Vec& Y, const Vec& Z,
                 const ChartFdOptions& opt = {});
TangentVector curvature_fd(const SasakianSphere& S, const SpherePoint& z, const TangentVector& X,
                           const TangentVector& Y, const TangentVector& Z, const ChartFdOptions& opt = {});

}  // namespace sasaki
