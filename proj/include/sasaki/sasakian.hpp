#pragma once

#include "sasaki/ambient.hpp"

namespace sasaki {

// S^{2n+1} with the Tanno-deformed structure of parameter a built on the complex
// structure selected by structure_index (1 = I, 2 = J, 3 = K; 2 and 3 need n = 3).
class SasakianSphere {
public:
    SasakianSphere(int n, double a, int structure_index = 1);

    int n() const { return n_; }
    int dim() const { return 2 * n_ + 2; }   // ambient dimension
    int manifold_dim() const { return 2 * n_ + 1; }
    double a() const { return a_; }
    double c() const { return c_; }
    int structure_index() const { return index_; }
    const ComplexStructure& structure() const { return cs_; }

    Vec xi0(const Vec& z) const;                             // -Sz
    Vec xi(const Vec& z) const;                              // xi0 / a
    double eta0(const Vec& z, const Vec& X) const;           // <X, xi0>
    double eta(const Vec& z, const Vec& X) const;            // a eta0
    Vec phi(const Vec& z, const Vec& X) const;               // tangential part of S X
    double g(const Vec& z, const Vec& X, const Vec& Y) const;
    double norm(const Vec& z, const Vec& X) const;
    // Ambient matrix G with g(X,Y) = X^T G Y on tangent vectors at z.
    Mat metric_matrix(const Vec& z) const;

private:
    int n_;
    double a_;
    double c_;
    int index_;
    ComplexStructure cs_;
};

struct StructureAtPoint {
    TangentVector xi;
    Vec eta_dual;    // eta(X) = <X, eta_dual>
    Mat phi_action;  // phi(X) = phi_action * X for X tangent at z
};

StructureAtPoint structure_at(const SasakianSphere& S, const SpherePoint& z);

double metric(const SasakianSphere& S, const SpherePoint& z, const TangentVector& X, const TangentVector& Y);

// Curvature tensor of a Sasakian space form of constant phi-sectional curvature c.
Vec curvature_formula(const SasakianSphere& S, const Vec& z, const Vec& X, const Vec& Y, const Vec& Z);
TangentVector curvature_formula(const SasakianSphere& S, const SpherePoint& z, const TangentVector& X,
                                const TangentVector& Y, const TangentVector& Z);

// Test hook: negates the closed-form curvature tensor so calibration checks can be exercised.
void set_curvature_sign_flip_for_testing(bool flip);
bool curvature_sign_flipped_for_testing();

}  // namespace sasaki
