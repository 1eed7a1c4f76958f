#include "sasaki/sasakian.hpp"

#include "sasaki/errors.hpp"

#include <atomic>
#include <cmath>
#include <fmt/format.h>

namespace sasaki {

namespace {
std::atomic<bool> g_flip_curvature{false};

void require_same_base(const SpherePoint& z, const TangentVector& X) {
    if (X.base.z.size() != z.z.size() || (X.base.z - z.z).norm() > 1e-12)
        throw InvalidInput("tangent vector is based at a different point");
}
}  // namespace

void set_curvature_sign_flip_for_testing(bool flip) { g_flip_curvature = flip; }
bool curvature_sign_flipped_for_testing() { return g_flip_curvature; }

SasakianSphere::SasakianSphere(int n, double a, int structure_index)
    : n_(n), a_(a), c_(4.0 / a - 3.0), index_(structure_index), cs_(ComplexStructure::make(StructureTag::I, 2 * std::max(n, 1) + 2)) {
    if (n < 1) throw InvalidInput(fmt::format("n = {} must be a positive integer", n));
    if (!(a > 0) || !std::isfinite(a)) throw InvalidInput(fmt::format("deformation a = {} must be positive", a));
    if (structure_index < 1 || structure_index > 3) throw InvalidInput(fmt::format("structure index {} not in {{1,2,3}}", structure_index));
    if (structure_index != 1 && n != 3) throw InvalidInput("structure indices 2 and 3 require n = 3");
    cs_ = ComplexStructure::from_index(structure_index, dim());
}

Vec SasakianSphere::xi0(const Vec& z) const { return -cs_.apply(z); }
Vec SasakianSphere::xi(const Vec& z) const { return xi0(z) / a_; }
double SasakianSphere::eta0(const Vec& z, const Vec& X) const { return -X.dot(cs_.apply(z)); }
double SasakianSphere::eta(const Vec& z, const Vec& X) const { return a_ * eta0(z, X); }
Vec SasakianSphere::phi(const Vec& z, const Vec& X) const { return project_tangent(z, cs_.apply(X)); }

double SasakianSphere::g(const Vec& z, const Vec& X, const Vec& Y) const {
    return a_ * X.dot(Y) + a_ * (a_ - 1.0) * eta0(z, X) * eta0(z, Y);
}

double SasakianSphere::norm(const Vec& z, const Vec& X) const { return std::sqrt(std::max(g(z, X, X), 0.0)); }

Mat SasakianSphere::metric_matrix(const Vec& z) const {
    const Vec u = cs_.apply(z);
    return a_ * Mat::Identity(dim(), dim()) + a_ * (a_ - 1.0) * u * u.transpose();
}

StructureAtPoint structure_at(const SasakianSphere& S, const SpherePoint& z) {
    if (z.z.size() != S.dim()) throw InvalidInput("point dimension does not match the sphere");
    StructureAtPoint out{TangentVector{z, S.xi(z.z)}, S.a() * S.xi0(z.z), Mat()};
    const Mat P = Mat::Identity(S.dim(), S.dim()) - z.z * z.z.transpose();
    out.phi_action = P * S.structure().matrix();
    return out;
}

double metric(const SasakianSphere& S, const SpherePoint& z, const TangentVector& X, const TangentVector& Y) {
    require_same_base(z, X);
    require_same_base(z, Y);
    return S.g(z.z, X.vec, Y.vec);
}

Vec curvature_formula(const SasakianSphere& S, const Vec& z, const Vec& X, const Vec& Y, const Vec& Z) {
    const double c = S.c();
    const Vec xi = S.xi(z);
    const Vec pX = S.phi(z, X), pY = S.phi(z, Y), pZ = S.phi(z, Z);
    const double eX = S.eta(z, X), eY = S.eta(z, Y), eZ = S.eta(z, Z);
    const double gZY = S.g(z, Z, Y), gZX = S.g(z, Z, X);
    Vec R = (c + 3.0) / 4.0 * (gZY * X - gZX * Y);
    R += (c - 1.0) / 4.0 *
         (eZ * eX * Y - eZ * eY * X + gZX * eY * xi - gZY * eX * xi + S.g(z, Z, pY) * pX - S.g(z, Z, pX) * pY +
          2.0 * S.g(z, X, pY) * pZ);
    return g_flip_curvature ? Vec(-R) : R;
}

TangentVector curvature_formula(const SasakianSphere& S, const SpherePoint& z, const TangentVector& X,
                                const TangentVector& Y, const TangentVector& Z) {
    require_same_base(z, X);
    require_same_base(z, Y);
    require_same_base(z, Z);
    return TangentVector{z, curvature_formula(S, z.z, X.vec, Y.vec, Z.vec)};
}

}  // namespace sasaki
