#include "sasaki/biharmonic.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/generators.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;

namespace {

struct CurveRun {
    CurveAnalysis an;
    BitensionBreakdown b;
    ClassificationVerdict v;
};

CurveRun run_curve(const CurveSpec& spec, int samples = 256) {
    const SasakianSphere S(spec.n, spec.a);
    const Connection C(S);
    const SampledCurve c = make_curve(spec, samples);
    CurveRun r;
    r.an = analyze_curve(C, c);
    r.b = bitension(C, r.an, c);
    r.v = classify(S, r.an, r.b);
    return r;
}

// Closed form for a small circle of geodesic curvature k in the round S^3.
SampledCurve small_circle(double k, int N) {
    const double rho = std::atan(1.0 / k);
    const double period = 2 * M_PI * std::sin(rho);
    std::vector<double> t;
    std::vector<Vec> pts;
    for (int i = 0; i < N; ++i) {
        t.push_back(period * i / N);
        const double th = t.back() / std::sin(rho);
        Vec z(4);
        z << std::cos(rho), 0.0, std::sin(rho) * std::cos(th), std::sin(rho) * std::sin(th);
        pts.push_back(z);
    }
    return SampledCurve::from_points(t, pts, true, period);
}

}  // namespace

TEST(Tension, NormEqualsFirstCurvature) {
    const SasakianSphere S(2, 2.0);
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm310Circle, 2, 2.0}, 128);
    const std::vector<Vec> tau = tension(S, c);
    ASSERT_EQ(tau.size(), c.points.size());
    for (std::size_t k = 0; k < tau.size(); ++k) EXPECT_NEAR(S.norm(c.points[k], tau[k]), 1 / std::sqrt(2.0), 1e-6);
}

TEST(Bitension, SmallCircleMatchesClosedForm) {
    // τ₂ = κ(1 - κ²) E₂ on the round sphere
    const SasakianSphere S(1, 1.0);
    for (double k : {0.5, 2.0}) {
        SampledCurve c = small_circle(k, 512);
        const BitensionBreakdown b = bitension(S, c);
        EXPECT_NEAR(b.sup, std::abs(k * (1 - k * k)), 1e-5) << "kappa " << k;
        EXPECT_TRUE(b.paths_agree);
    }
}

TEST(Bitension, ExpansionResumsAndFIsBounded) {
    const CurveRun r = run_curve(CurveSpec{CurveFamily::Thm310Helix, 3, 2.0, 0.5});
    EXPECT_LT(r.b.resum_residual, 1e-10);
    for (double f : r.b.f) EXPECT_LE(std::abs(f), 1 + 1e-8);
    EXPECT_LT(r.b.tangential_residual, 1e-6);
}

TEST(Classify, RoundCircleIsCaseOne) {
    const CurveRun r = run_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0});
    EXPECT_EQ(r.v.case_name, "I");
    EXPECT_TRUE(r.v.proper);
    EXPECT_TRUE(r.v.conditions_hold);
    for (const Condition& c : r.v.conditions) EXPECT_LT(c.residual, 1e-6) << c.name;
}

TEST(Classify, DeformedHelixIsCaseTwo) {
    const CurveRun r = run_curve(CurveSpec{CurveFamily::Thm310Helix, 3, 2.0, 0.5});
    EXPECT_EQ(r.v.case_name, "II");
    EXPECT_NEAR(r.v.measured.kappa2, 0.5, 1e-6);
    EXPECT_NEAR(r.v.measured.f, 0.0, 1e-6);
}

TEST(Classify, CaseThreeHelix) {
    const CurveRun r = run_curve(CurveSpec{CurveFamily::Thm311, 2, 0.5}, 512);
    EXPECT_EQ(r.v.case_name, "III");
    EXPECT_NEAR(std::abs(r.v.measured.f), 1.0, 1e-6);
    EXPECT_NEAR(r.v.measured.kappa1, 2.0, 1e-5);
    EXPECT_NEAR(r.v.measured.kappa2, 1.0, 1e-5);
    EXPECT_FALSE(r.v.measured.alpha0.has_value());
}

TEST(Classify, DetunedCurveIsNotBiharmonic) {
    const CurveRun r = run_curve(detuned(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6}));
    EXPECT_EQ(r.v.case_name, "non-biharmonic");
    EXPECT_GT(r.b.sup, 1e-2);
}

TEST(Classify, RejectsMismatchedInputs) {
    const SasakianSphere S(2, 1.0);
    const CurveRun a = run_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 128);
    const CurveRun b = run_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 64);
    EXPECT_THROW(classify(S, a.an, b.b), InvalidInput);
}

TEST(Feasibility, ExistenceClauses) {
    EXPECT_TRUE(feasibility(1.0, CaseId::I).feasible);
    EXPECT_FALSE(feasibility(1.5, CaseId::I).feasible);
    EXPECT_TRUE(feasibility(-5.0 / 3.0, CaseId::II, {std::nullopt, std::nullopt, false}).feasible);
    EXPECT_FALSE(feasibility(-3.0, CaseId::II).feasible);
    EXPECT_FALSE(feasibility(-3.5, CaseId::II).feasible);
    EXPECT_FALSE(feasibility(-1.0, CaseId::II, {2, std::nullopt, true}).feasible);
    EXPECT_TRUE(feasibility(5.0, CaseId::III).feasible);
    EXPECT_FALSE(feasibility(1.0, CaseId::III).feasible);
    EXPECT_FALSE(feasibility(0.5, CaseId::III).feasible);
}

TEST(Feasibility, CaseFourSignConstraints) {
    const Feasibility ok = feasibility(5.0, CaseId::IV, {3, 3 * M_PI / 4, std::nullopt});
    EXPECT_TRUE(ok.feasible);
    const Feasibility sign = feasibility(5.0, CaseId::IV, {3, M_PI / 4, std::nullopt});
    EXPECT_FALSE(sign.feasible);
    EXPECT_EQ(sign.reasons, std::vector<std::string>{"3(c-1)sin(2 alpha0) >= 0"});
    const Feasibility ineq = feasibility(-2.0, CaseId::IV, {3, M_PI / 6, std::nullopt});
    EXPECT_FALSE(ineq.feasible);
    EXPECT_EQ(ineq.reasons.front(), "c + 3 + 3(c-1)cos^2(alpha0) <= 0");
    EXPECT_FALSE(feasibility(5.0, CaseId::IV, {3, M_PI / 2, std::nullopt}).feasible);
}

TEST(Feasibility, CaseNames) {
    EXPECT_EQ(parse_case("III"), CaseId::III);
    EXPECT_EQ(parse_case("4"), CaseId::IV);
    EXPECT_EQ(to_string(CaseId::II), "II");
    EXPECT_THROW(parse_case("V"), InvalidInput);
}

// Property: every feasible sweep point of Case II yields κ₁² = (c+3)/4 > 0.
TEST(Feasibility, CaseTwoThresholdIsMinusThree) {
    for (double c = -5.0; c <= 5.0; c += 0.25) {
        if (std::abs(c - 1.0) < 1e-12) continue;
        EXPECT_EQ(feasibility(c, CaseId::II).feasible, c > -3.0) << c;
        EXPECT_EQ(feasibility(c, CaseId::III).feasible, c > 1.0) << c;
    }
}
