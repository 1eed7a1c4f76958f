#include "sasaki/app/config.hpp"
#include "sasaki/errors.hpp"
#include "sasaki/generators.hpp"
#include "sasaki/interchange.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;

TEST(Json, SeventeenDigitsRoundTripBitForBit) {
    const Json j = Json{{"x", 0.1}, {"y", M_PI}, {"z", 1e-300}};
    const Json back = Json::parse(dump_json(j));
    EXPECT_EQ(back["x"].get<double>(), 0.1);
    EXPECT_EQ(back["y"].get<double>(), M_PI);
    EXPECT_EQ(back["z"].get<double>(), 1e-300);
    EXPECT_NE(dump_json(j).find("3.1415926535897931"), std::string::npos);
}

TEST(Json, NonFiniteBecomesNull) {
    const Json j = Json{{"x", std::nan("")}};
    EXPECT_TRUE(Json::parse(dump_json(j))["x"].is_null());
}

TEST(CurveDocument, RoundTripPreservesPointsExactly) {
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm311, 2, 0.5}, 64);
    const CurveDocument doc{2, 0.5, 1, c};
    const CurveDocument back = curve_from_json(Json::parse(dump_json(to_json(doc))));
    EXPECT_EQ(back.n, 2);
    EXPECT_EQ(back.a, 0.5);
    ASSERT_EQ(back.curve.size(), c.size());
    for (int k = 0; k < c.size(); ++k) {
        EXPECT_EQ(back.curve.params[k], c.params[k]);
        EXPECT_EQ(back.curve.points[k], c.points[k]);
    }
    EXPECT_EQ(back.curve.family, "thm311");
    EXPECT_EQ(back.curve.family_params.at("A"), c.family_params.at("A"));
}

TEST(ImmersionDocument, RoundTrip) {
    const ImmersionGrid g = integral_surface_grid(8);
    const ImmersionDocument doc{2, 1.0, 1, g};
    const Json j = to_json(doc);
    EXPECT_TRUE(is_immersion_document(j));
    const ImmersionDocument back = immersion_from_json(Json::parse(dump_json(j)));
    EXPECT_EQ(back.grid.dim, 2);
    EXPECT_EQ(back.grid.points, g.points);
    EXPECT_EQ(back.grid.axes[1].count, 8);
}

TEST(CurveDocument, RejectsOffSpherePoints) {
    const SampledCurve c = make_curve(CurveSpec{CurveFamily::Thm39Circle, 2, 1.0}, 16);
    Json j = to_json(CurveDocument{2, 1.0, 1, c});
    j["points"][3][0] = 2.0;
    EXPECT_THROW(curve_from_json(j), InvalidInput);
    Json k = to_json(CurveDocument{2, 1.0, 1, c});
    k.erase("points");
    EXPECT_THROW(curve_from_json(k), InvalidInput);
}

TEST(Config, DefaultsFileAndOverrides) {
    app::Config cfg;
    EXPECT_EQ(cfg.number("bitension_tol"), 1e-4);
    cfg.load_text("# tolerances\nbitension_tol = 2e-5\nsamples=256\n");
    EXPECT_EQ(cfg.number("bitension_tol"), 2e-5);
    EXPECT_EQ(cfg.integer("samples"), 256);
    EXPECT_EQ(cfg.biharmonic().bitension_tol, 2e-5);
    EXPECT_THROW(cfg.load_text("unknown_key = 1"), InvalidInput);
    EXPECT_THROW(cfg.set("samples", "many"), InvalidInput);
    EXPECT_EQ(cfg.to_json()["samples"].get<double>(), 256.0);
}
