#include "sasaki/ambient.hpp"
#include "sasaki/errors.hpp"

#include <gtest/gtest.h>

using namespace sasaki;

TEST(ComplexStructure, SquaresToMinusIdentity) {
    for (int dim : {2, 4, 8}) {
        const Mat I = ComplexStructure::make(StructureTag::I, dim).matrix();
        EXPECT_EQ((I * I + Mat::Identity(dim, dim)).cwiseAbs().maxCoeff(), 0.0);
    }
}

// z = (x, y) with x the first half: Iz = (-y, x)
TEST(ComplexStructure, IActsAsMultiplicationByI) {
    Vec z(4);
    z << 1, 2, 3, 4;
    const Vec w = ComplexStructure::make(StructureTag::I, 4).apply(z);
    Vec expect(4);
    expect << -3, -4, 1, 2;
    EXPECT_EQ(w, expect);
}

TEST(ComplexStructure, QuaternionRelationsOnR8) {
    const Mat I = ComplexStructure::make(StructureTag::I, 8).matrix();
    const Mat J = ComplexStructure::make(StructureTag::J, 8).matrix();
    const Mat K = ComplexStructure::make(StructureTag::K, 8).matrix();
    const Mat Id = Mat::Identity(8, 8);
    EXPECT_EQ((J * J + Id).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((K * K + Id).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((I * J + J * I).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((K + I * J).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((I + I.transpose()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(ComplexStructure, ComposeMatchesMatrixProduct) {
    const auto I = ComplexStructure::make(StructureTag::I, 8);
    const auto J = ComplexStructure::make(StructureTag::J, 8);
    EXPECT_EQ((I.compose(J).matrix() - I.matrix() * J.matrix()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((I.negated().matrix() + I.matrix()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SpherePoint, RejectsOffSpherePoints) {
    Vec v(4);
    v << 1, 1, 0, 0;
    EXPECT_THROW(SpherePoint::make(v), InvalidInput);
    EXPECT_NO_THROW(SpherePoint::make(v / std::sqrt(2.0)));
}

TEST(Tangent, ProjectionRemovesNormalComponent) {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
        const Vec z = random_sphere_point(6, rng);
        Vec v = Vec::Random(6);
        const Vec t = project_tangent(z, v);
        EXPECT_NEAR(t.dot(z), 0.0, 1e-14);
        EXPECT_NEAR((project_tangent(z, t) - t).norm(), 0.0, 1e-14);
    }
}

TEST(GramSchmidt, DropsDependentVectorsAndOrthonormalizes) {
    Vec a(3), b(3), c(3);
    a << 1, 0, 0;
    b << 1, 1, 0;
    c << 2, 1, 0;
    const GramSchmidtResult r = gram_schmidt({a, b, c});
    EXPECT_EQ(r.rank, 2);
    EXPECT_EQ(r.kept, (std::vector<int>{0, 1}));
    EXPECT_NEAR(r.basis[0].dot(r.basis[1]), 0.0, 1e-15);
    EXPECT_NEAR(r.basis[1].norm(), 1.0, 1e-15);
}

TEST(Random, SpherePointsAndTangentsAreUnit) {
    Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        const Vec z = random_sphere_point(8, rng);
        const Vec X = random_tangent(z, rng);
        EXPECT_NEAR(z.norm(), 1.0, 1e-14);
        EXPECT_NEAR(X.norm(), 1.0, 1e-14);
        EXPECT_NEAR(X.dot(z), 0.0, 1e-14);
    }
}
