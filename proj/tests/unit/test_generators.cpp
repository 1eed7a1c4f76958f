#include "sasaki/errors.hpp"
#include "sasaki/generators.hpp"
#include "sasaki/sasakian.hpp"
#include "sasaki/frenet.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;

namespace {

void expect_invalid(const std::function<void()>& f, const std::string& fragment) {
    try {
        f();
        ADD_FAILURE() << "no exception, expected '" << fragment << "'";
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

}  // namespace

TEST(Generators, CaseIIIFrequenciesAtAOneHalf) {
    const FamilyData d = family_data(CurveSpec{CurveFamily::Thm311, 2, 0.5});
    EXPECT_NEAR(d.A, std::sqrt(3.0) - 1.0, 1e-12);
    EXPECT_NEAR(d.B, std::sqrt(3.0) + 1.0, 1e-12);
    EXPECT_NEAR(d.c, 5.0, 1e-15);
}

TEST(Generators, CircleFrequencies) {
    EXPECT_NEAR(family_data(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}).A, std::sqrt(2.0), 1e-15);
    const FamilyData d = family_data(CurveSpec{CurveFamily::Thm310Circle, 2, 2.0});
    EXPECT_NEAR(d.A, 1.0, 1e-15);
    EXPECT_NEAR(d.kappa1, 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(Generators, HelixFrequenciesSatisfyUnitSpeedAndCurvatureRelations) {
    const FamilyData d = family_data(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 0.6});
    EXPECT_NEAR(d.A * d.A + d.B * d.B, 2.0, 1e-14);
    EXPECT_NEAR(d.A * d.B, 0.8, 1e-14);
    const FamilyData e = family_data(CurveSpec{CurveFamily::Thm310Helix, 3, 2.0, 0.5});
    EXPECT_NEAR(e.kappa2, 0.5, 1e-14);
}

TEST(Generators, CurvesAreUnitSpeedLegendreOnTheSphere) {
    const std::vector<CurveSpec> specs = {
        {CurveFamily::Thm39Circle, 2, 1.0},      {CurveFamily::Thm39Helix, 3, 1.0, 0.6},
        {CurveFamily::Thm39Helix, 2, 1.0, 0.6},  {CurveFamily::Thm310Circle, 2, 2.0},
        {CurveFamily::Thm310Helix, 3, 2.0, 0.5}, {CurveFamily::Thm311, 2, 0.5},
    };
    for (const CurveSpec& s : specs) {
        const SasakianSphere S(s.n, s.a);
        const SampledCurve c = make_curve(s, 128);
        for (const Vec& p : c.points) ASSERT_NEAR(p.norm(), 1.0, 1e-14);
        EXPECT_LT(legendre_residual(S, c), 1e-12) << to_string(s.family);
        for (double v : speed_profile(S, c)) EXPECT_NEAR(v, 1.0, 1e-12) << to_string(s.family);
    }
}

TEST(Generators, ValidationNamesTheViolatedConstraint) {
    expect_invalid([] { family_data(CurveSpec{CurveFamily::Thm310Helix, 3, 2.0, 0.9}); }, "κ₁√a ≥ 1");
    expect_invalid([] { family_data(CurveSpec{CurveFamily::Thm310Helix, 2, 2.0, 0.5}); }, "n >= 3");
    expect_invalid([] { family_data(CurveSpec{CurveFamily::Thm39Circle, 2, 2.0}); }, "a = 1");
    expect_invalid([] { family_data(CurveSpec{CurveFamily::Thm39Helix, 3, 1.0, 1.2}); }, "(0, 1)");
    ImmersionSpec x1;
    x1.family = ImmersionFamily::Prop53X1;
    x1.n = 2;
    expect_invalid([&] { make_immersion(x1); }, "requires n = 3");
}

TEST(Generators, BasisChecksRejectNonLegendreBases) {
    CurveSpec s{CurveFamily::Thm39Circle, 2, 1.0};
    std::vector<Vec> basis = default_basis(s.family, 2);
    EXPECT_NO_THROW(check_basis(s, basis));
    basis[1] = ComplexStructure::make(StructureTag::I, 6).apply(basis[0]);
    EXPECT_THROW(check_basis(s, basis), InvalidInput);
}

TEST(Generators, FamilyNamesRoundTrip) {
    for (CurveFamily f : {CurveFamily::Thm39Circle, CurveFamily::Thm39Helix, CurveFamily::Thm310Circle,
                          CurveFamily::Thm310Helix, CurveFamily::Thm311})
        EXPECT_EQ(parse_curve_family(to_string(f)), f);
    EXPECT_EQ(parse_curve_family("thm310-helix"), CurveFamily::Thm310Helix);
    EXPECT_EQ(parse_immersion_family("prop53-x2"), ImmersionFamily::Prop53X2);
    EXPECT_THROW(parse_curve_family("spiral"), InvalidInput);
    EXPECT_TRUE(is_curve_family("thm39_circle"));
    EXPECT_FALSE(is_curve_family("prop42_surface"));
}

TEST(Generators, DetuningChangesOnlyTheFrequency) {
    const CurveSpec s = detuned(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 1.01);
    const FamilyData d = family_data(s);
    EXPECT_NEAR(d.frequencies[0], 1.01 * std::sqrt(2.0), 1e-14);
    const SampledCurve c = make_curve(s, 64);
    for (const Vec& p : c.points) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
}

TEST(Generators, ImmersionGridsLieOnTheSphere) {
    ImmersionSpec p42;
    p42.family = ImmersionFamily::Prop42Surface;
    p42.resolution = {8, 8, 8};
    ImmersionSpec p44;
    p44.family = ImmersionFamily::Prop44Surface;
    p44.a = 0.5;
    p44.resolution = {8, 16};
    ImmersionSpec x2;
    x2.family = ImmersionFamily::Prop53X2;
    x2.n = 3;
    x2.resolution = {8, 8, 8};
    for (const ImmersionSpec& s : {p42, p44, x2}) {
        const ImmersionGrid g = make_immersion(s);
        EXPECT_EQ(g.node_count(), static_cast<int>(g.points.size()));
        for (const Vec& p : g.points) ASSERT_NEAR(p.norm(), 1.0, 1e-12);
    }
}

TEST(Generators, IntegralSurfaceIsLegendre) {
    const ImmersionGrid g = integral_surface_grid(16);
    const SasakianSphere S(2, 1.0);
    for (int k = 0; k < g.node_count(); k += 7) {
        const Vec p = g.params_at(g.multi_index(k));
        for (int dir = 0; dir < 2; ++dir) {
            std::vector<int> idx(2, 0);
            idx[dir] = 1;
            EXPECT_NEAR(S.eta(g.points[k], g.analytic->derivative(p, idx)), 0.0, 1e-14);
        }
    }
}
