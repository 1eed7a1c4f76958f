#include "sasaki/chart.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/sasakian.hpp"

#include <gtest/gtest.h>

using namespace sasaki;

namespace {

struct Frame {
    Vec z, X, Y, Z;
};

Frame random_frame(int dim, Rng& rng) {
    Frame f;
    f.z = random_sphere_point(dim, rng);
    f.X = random_tangent(f.z, rng);
    f.Y = random_tangent(f.z, rng);
    f.Z = random_tangent(f.z, rng);
    return f;
}

}  // namespace

TEST(SasakianSphere, CurvatureConstantFollowsDeformation) {
    EXPECT_DOUBLE_EQ(SasakianSphere(2, 1.0).c(), 1.0);
    EXPECT_DOUBLE_EQ(SasakianSphere(2, 2.0).c(), -1.0);
    EXPECT_DOUBLE_EQ(SasakianSphere(2, 0.5).c(), 5.0);
}

TEST(SasakianSphere, RejectsInvalidParameters) {
    EXPECT_THROW(SasakianSphere(2, 0.0), InvalidInput);
    EXPECT_THROW(SasakianSphere(2, -1.0), InvalidInput);
    EXPECT_THROW(SasakianSphere(0, 1.0), InvalidInput);
    EXPECT_THROW(SasakianSphere(2, 1.0, 2), InvalidInput);
    EXPECT_NO_THROW(SasakianSphere(3, 1.0, 3));
}

TEST(SasakianSphere, MetricMatchesDeformationFormula) {
    Rng rng(11);
    for (double a : {0.4, 1.0, 2.5}) {
        const SasakianSphere S(2, a);
        for (int k = 0; k < 20; ++k) {
            const Frame f = random_frame(S.dim(), rng);
            const Vec xi0 = -ComplexStructure::make(StructureTag::I, S.dim()).apply(f.z);
            const double expect = a * f.X.dot(f.Y) + a * (a - 1) * f.X.dot(xi0) * f.Y.dot(xi0);
            EXPECT_NEAR(S.g(f.z, f.X, f.Y), expect, 1e-14);
            EXPECT_NEAR((S.metric_matrix(f.z) * f.Y).dot(f.X), expect, 1e-13);
        }
    }
}

TEST(SasakianSphere, AlgebraicAxiomsHold) {
    Rng rng(12);
    for (int n : {1, 2, 3})
        for (double a : {0.4, 1.0, 2.5}) {
            const SasakianSphere S(n, a);
            for (int k = 0; k < 30; ++k) {
                const Frame f = random_frame(S.dim(), rng);
                const Vec xi = S.xi(f.z);
                EXPECT_NEAR(S.eta(f.z, xi), 1.0, 1e-14);
                EXPECT_NEAR(S.norm(f.z, xi), 1.0, 1e-14);
                EXPECT_LT((S.phi(f.z, S.phi(f.z, f.X)) + f.X - S.eta(f.z, f.X) * xi).norm(), 1e-13);
                EXPECT_NEAR(S.g(f.z, S.phi(f.z, f.X), S.phi(f.z, f.Y)),
                            S.g(f.z, f.X, f.Y) - S.eta(f.z, f.X) * S.eta(f.z, f.Y), 1e-13);
                EXPECT_LT(S.phi(f.z, xi).norm(), 1e-14);
            }
        }
}

TEST(StructureAtPoint, AgreesWithPointwiseAccessors) {
    Rng rng(13);
    const SasakianSphere S(2, 1.7);
    const Frame f = random_frame(S.dim(), rng);
    const StructureAtPoint st = structure_at(S, SpherePoint::make(f.z));
    EXPECT_LT((st.xi.vec - S.xi(f.z)).norm(), 1e-15);
    EXPECT_NEAR(st.eta_dual.dot(f.X), S.eta(f.z, f.X), 1e-14);
    EXPECT_LT((st.phi_action * f.X - S.phi(f.z, f.X)).norm(), 1e-14);
}

TEST(Curvature, RoundSphereMatchesConstantCurvatureOne) {
    Rng rng(14);
    const SasakianSphere S(2, 1.0);
    for (int k = 0; k < 20; ++k) {
        const Frame f = random_frame(S.dim(), rng);
        const Vec expect = f.Y.dot(f.Z) * f.X - f.X.dot(f.Z) * f.Y;
        EXPECT_LT((curvature_formula(S, f.z, f.X, f.Y, f.Z) - expect).norm(), 1e-13);
    }
}

TEST(Curvature, FormulaMatchesFiniteDifferenceRiemannTensor) {
    Rng rng(15);
    for (double a : {0.5, 2.0}) {
        const SasakianSphere S(2, a);
        for (int k = 0; k < 6; ++k) {
            const Frame f = random_frame(S.dim(), rng);
            const Vec formula = curvature_formula(S, f.z, f.X, f.Y, f.Z);
            const Vec fd = curvature_fd(S, f.z, f.X, f.Y, f.Z);
            EXPECT_LT((formula - fd).norm() / formula.norm(), 1e-3) << "a = " << a;
        }
    }
}

TEST(Curvature, PhiSectionalCurvatureIsC) {
    Rng rng(16);
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
        const SasakianSphere S(3, a);
        for (int k = 0; k < 10; ++k) {
            const Vec z = random_sphere_point(S.dim(), rng);
            Vec X = random_tangent(z, rng);
            X -= S.eta(z, X) * S.xi(z);
            X /= S.norm(z, X);
            const Vec pX = S.phi(z, X);
            EXPECT_NEAR(S.g(z, curvature_formula(S, z, X, pX, pX), X), 4.0 / a - 3.0, 1e-12);
        }
    }
}

TEST(Curvature, SymmetriesOfTheTensor) {
    Rng rng(17);
    const SasakianSphere S(2, 0.7);
    for (int k = 0; k < 10; ++k) {
        const Frame f = random_frame(S.dim(), rng);
        const Vec W = random_tangent(f.z, rng);
        const Vec rxy = curvature_formula(S, f.z, f.X, f.Y, f.Z);
        EXPECT_LT((rxy + curvature_formula(S, f.z, f.Y, f.X, f.Z)).norm(), 1e-13);
        const Vec bianchi = rxy + curvature_formula(S, f.z, f.Y, f.Z, f.X) + curvature_formula(S, f.z, f.Z, f.X, f.Y);
        EXPECT_LT(bianchi.norm(), 1e-13);
        EXPECT_NEAR(S.g(f.z, rxy, W), -S.g(f.z, curvature_formula(S, f.z, f.X, f.Y, W), f.Z), 1e-13);
    }
}

TEST(Curvature, SignFlipHookNegatesTheFormula) {
    Rng rng(18);
    const SasakianSphere S(1, 1.0);
    const Frame f = random_frame(S.dim(), rng);
    const Vec r = curvature_formula(S, f.z, f.X, f.Y, f.Z);
    set_curvature_sign_flip_for_testing(true);
    const Vec flipped = curvature_formula(S, f.z, f.X, f.Y, f.Z);
    set_curvature_sign_flip_for_testing(false);
    EXPECT_LT((r + flipped).norm(), 1e-15);
    EXPECT_FALSE(curvature_sign_flipped_for_testing());
}
