#include "sasaki/errors.hpp"
#include "sasaki/frenet.hpp"
#include "sasaki/generators.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;

TEST(Frenet, CircleHasOrderTwoAndUnitCurvature) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 256);
    const FrenetApparatus F = frenet_apparatus(S, c);
    EXPECT_EQ(F.order, 2);
    EXPECT_FALSE(F.indeterminate);
    for (double k : F.kappa[0]) EXPECT_NEAR(k, 1.0, 1e-7);
}

TEST(Frenet, HelixCurvaturesSatisfyTheRoundCondition) {
    const SasakianSphere S(3, 1.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6}, 256);
    const FrenetApparatus F = frenet_apparatus(S, c);
    EXPECT_EQ(F.order, 3);
    for (std::size_t k = 0; k < F.samples.size(); ++k) {
        EXPECT_NEAR(F.kappa[0][k], 0.6, 1e-7);
        EXPECT_NEAR(F.kappa[1][k], 0.8, 1e-7);
    }
}

TEST(Frenet, FramesAreOrthonormalInTheDeformedMetric) {
    const SasakianSphere S(3, 2.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm310Helix, 3, 2.0, 0.5}, 128);
    const FrenetApparatus F = frenet_apparatus(S, c);
    ASSERT_EQ(F.order, 3);
    for (std::size_t k = 0; k < F.samples.size(); k += 17) {
        const Vec& z = c.points[F.samples[k]];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                EXPECT_NEAR(S.g(z, F.frames[i][k], F.frames[j][k]), i == j ? 1.0 : 0.0, 1e-8);
    }
    EXPECT_GT(F.frame_continuity, 0.99);
}

TEST(Frenet, GreatCircleIsAGeodesic) {
    Vec e1 = Vec::Zero(4), e2 = Vec::Zero(4);
    e1[0] = 1;
    e2[1] = 1;
    std::vector<double> t;
    std::vector<Vec> pts;
    for (int k = 0; k < 256; ++k) {
        t.push_back(2 * M_PI * k / 256);
        pts.push_back(std::cos(t.back()) * e1 + std::sin(t.back()) * e2);
    }
    const SampledCurve c = SampledCurve::from_points(t, pts, true, 2 * M_PI);
    const SasakianSphere S(1, 1.0);
    EXPECT_EQ(frenet_apparatus(S, c).order, 1);
    EXPECT_LT(legendre_residual(S, c), 1e-15);
}

TEST(Frenet, LegendreResidualDetectsReebDirection) {
    // the Reeb orbit is tangent to xi
    std::vector<double> t;
    std::vector<Vec> pts;
    for (int k = 0; k < 128; ++k) {
        t.push_back(2 * M_PI * k / 128);
        Vec z(4);
        z << std::cos(t.back()), 0, std::sin(t.back()), 0;
        pts.push_back(z);
    }
    const SasakianSphere S(1, 1.0);
    EXPECT_NEAR(legendre_residual(S, SampledCurve::from_points(t, pts, true, 2 * M_PI)), 1.0, 1e-6);
}

TEST(Frenet, GridCurveWithoutAnalyticMapGivesTheSameCurvature) {
    const SasakianSphere S(2, 1.0);
    SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 512);
    c.analytic = nullptr;
    const FrenetApparatus F = frenet_apparatus(S, c);
    EXPECT_EQ(F.order, 2);
    for (double k : F.kappa[0]) EXPECT_NEAR(k, 1.0, 1e-6);
}

TEST(Frenet, ReparametrizationRestoresUnitSpeed) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 256);
    // p -> p + 0.2 sin p is a non-uniform reparametrization of the closed curve
    std::vector<double> t;
    std::vector<Vec> pts;
    const int N = 256;
    for (int k = 0; k < N; ++k) {
        const double p = c.period * k / N;
        t.push_back(p);
        pts.push_back(c.analytic->value(Vec::Constant(1, p + 0.2 * std::sin(2 * M_PI * p / c.period))));
    }
    const SampledCurve slow = SampledCurve::from_points(t, pts, true, c.period);
    std::vector<double> sp = speed_profile(S, slow);
    EXPECT_GT(*std::max_element(sp.begin(), sp.end()) - *std::min_element(sp.begin(), sp.end()), 0.1);
    const SampledCurve fixed = reparametrize_by_arclength(S, slow);
    sp = speed_profile(S, fixed);
    for (double s : sp) EXPECT_NEAR(s, 1.0, 1e-4);
    EXPECT_NEAR(fixed.period, c.period, 1e-6);
}

TEST(SampledCurve, RejectsMalformedInput) {
    Vec z = Vec::Zero(4);
    z[0] = 1;
    EXPECT_THROW(SampledCurve::from_points({0.0, 0.0}, {z, z}, false, 0.0), InvalidInput);
    EXPECT_THROW(SampledCurve::from_points({0.0, 1.0}, {z, 2 * z}, false, 0.0), InvalidInput);
    EXPECT_THROW(SampledCurve::from_points({0.0, 1.0, 3.0}, {z, z, z}, false, 0.0), InvalidInput);
}

TEST(Derivative, AnalyticAndStencilRoutesAgree) {
    SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6}, 512);
    const double t = c.params[100];
    const Vec exact = derivative(c, 2, t);
    c.analytic = nullptr;
    EXPECT_LT((derivative(c, 2, t) - exact).norm(), 1e-6);
}
