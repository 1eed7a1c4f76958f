#include "sasaki/errors.hpp"
#include "sasaki/generators.hpp"
#include "sasaki/variational.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;

namespace {

SampledCurve repeat(const SampledCurve& c, int times) {
    std::vector<double> t;
    std::vector<Vec> pts;
    for (int r = 0; r < times; ++r)
        for (int k = 0; k < c.size(); ++k) {
            t.push_back(r * c.period + c.params[k]);
            pts.push_back(c.points[k]);
        }
    return SampledCurve::from_points(t, pts, true, times * c.period);
}

}  // namespace

TEST(Bienergy, CircleEqualsHalfCurvatureSquaredTimesLength) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 128);
    // κ₁ = 1 and length 2π/√2
    EXPECT_NEAR(bienergy(S, c).E2, 0.5 * 2 * M_PI / std::sqrt(2.0), 1e-10);
}

TEST(Bienergy, DeformedMetricCircle) {
    const SasakianSphere S(2, 2.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm310Circle, 2, 2.0}, 128);
    EXPECT_NEAR(bienergy(S, c).E2, 0.5 * 0.5 * c.period, 1e-8);
}

TEST(Bienergy, AdditiveOverRepeatedTraversals) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}), 64);
    const double e1 = bienergy(S, c).E2;
    EXPECT_NEAR(bienergy(S, repeat(c, 3)).E2, 3 * e1, 1e-9 * e1);
}

TEST(Bienergy, RequiresPeriodicCurves) {
    const SasakianSphere S(2, 0.5);
    EXPECT_THROW(bienergy(S, make_curve(CurveSpec{CurveFamily::Thm311, 2, 0.5}, 64)), InvalidInput);
}

TEST(MapBitension, AgreesWithTheCurveRoute) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}), 128);
    const VariationField V = normalized_variation(S, c, map_bitension(S, c));
    const VariationCheck r = variation_formula_check(S, c, V);
    EXPECT_LT(std::abs(r.fd - r.formula), 1e-3 * std::abs(r.formula));
}

TEST(FirstVariation, ZeroFieldGivesZero) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}), 64);
    VariationField V;
    V.values.assign(c.size(), Vec::Zero(c.ambient_dim()));
    EXPECT_EQ(first_variation(S, c, V), 0.0);
}

TEST(FirstVariation, BiharmonicCurvesAreCritical) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 128);
    std::mt19937_64 rng(41);
    for (int k = 0; k < 5; ++k) {
        const VariationField V = random_variation(S, c, 4, rng);
        const VariationCheck r = variation_formula_check(S, c, V);
        EXPECT_LT(std::abs(r.fd), 1e-4);
        EXPECT_LT(r.residual, 1e-4);
    }
}

TEST(FirstVariation, RestrictedToTheRoundSphere) {
    const SasakianSphere S(2, 2.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm310Circle, 2, 2.0}, 64);
    std::mt19937_64 rng(42);
    const VariationField V = random_variation(S, c, 3, rng);
    EXPECT_THROW(first_variation(S, c, V), InvalidInput);
}

TEST(RandomVariation, IsTangentAndRmsNormalized) {
    const SasakianSphere S(2, 1.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 64);
    std::mt19937_64 rng(43);
    const VariationField V = random_variation(S, c, 4, rng);
    double ms = 0;
    for (int k = 0; k < c.size(); ++k) {
        EXPECT_NEAR(V.values[k].dot(c.points[k]), 0.0, 1e-13);
        ms += V.values[k].squaredNorm();
    }
    EXPECT_NEAR(ms / c.size(), 1.0, 1e-12);
}

TEST(CoefficientGradient, MatchesFiniteDifferencesOfTheBienergy) {
    const SasakianSphere S(2, 1.0);
    FourierCurve F = FourierCurve::fit(make_curve(detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}), 64), 4);
    std::mt19937_64 rng(44);
    std::normal_distribution<double> N01;
    for (Vec& v : F.a) for (int m = 0; m < v.size(); ++m) v[m] += 0.05 * N01(rng);
    for (Vec& v : F.b) for (int m = 0; m < v.size(); ++m) v[m] += 0.05 * N01(rng);
    const std::vector<double> g = coefficient_gradient(S, F, 64);
    const std::vector<double> x = F.pack();
    double gmax = 0, err = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto E = [&](double h) {
            std::vector<double> y = x;
            y[i] += h;
            FourierCurve G = F;
            G.unpack(y);
            return fourier_bienergy(S, G, 64);
        };
        const double h = 1e-4;
        const double d1 = (E(h) - E(-h)) / (2 * h), d2 = (E(h / 2) - E(-h / 2)) / h;
        const double fd = (4 * d2 - d1) / 3;
        err = std::max(err, std::abs(fd - g[i]));
        gmax = std::max(gmax, std::abs(g[i]));
    }
    EXPECT_LT(err, 1e-5 * gmax);
}

TEST(Descent, StationaryAtACriticalCurve) {
    const SasakianSphere S(2, 1.0);
    DescentOptions opt;
    opt.steps = 20;
    const DescentResult r = descend(S, make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 64), opt);
    for (std::size_t k = 1; k < r.trajectory.size(); ++k)
        EXPECT_LT(std::abs(r.trajectory[k].E2 - r.trajectory[k - 1].E2), 1e-8);
}

TEST(Descent, DecreasesBienergyFromAPerturbedCurve) {
    const SasakianSphere S(2, 1.0);
    DescentOptions opt;
    opt.steps = 60;
    const DescentResult r = descend(S, make_curve(detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}), 64), opt);
    ASSERT_GT(r.trajectory.size(), 2u);
    for (std::size_t k = 1; k < r.trajectory.size(); ++k) EXPECT_LT(r.trajectory[k].E2, r.trajectory[k - 1].E2);
    const std::string csv = trajectory_csv(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "step,E2,tension_sup,bitension_sup,step_size");
}
