#include "sasaki/connection.hpp"
#include "sasaki/errors.hpp"

#include <gtest/gtest.h>

using namespace sasaki;

namespace {

struct Case {
    Vec z, X, Y, Z;
};

Case random_case(const SasakianSphere& S, Rng& rng) {
    Case c;
    c.z = random_sphere_point(S.dim(), rng);
    c.X = random_tangent(c.z, rng);
    c.Y = random_tangent(c.z, rng);
    c.Z = random_tangent(c.z, rng);
    return c;
}

}  // namespace

class ConnectionSuite : public ::testing::TestWithParam<double> {};

TEST_P(ConnectionSuite, LeviCivitaAndSasakianIdentities) {
    const SasakianSphere S(2, GetParam());
    const Connection C(S);
    Rng rng(21);
    for (int k = 0; k < 8; ++k) {
        const Case c = random_case(S, rng);
        EXPECT_LT(check_torsion(C, c.z, c.X, c.Y).value, 1e-5);
        EXPECT_LT(check_compatibility(C, c.z, c.X, c.Y, c.Z).value, 1e-5);
        EXPECT_LT(check_sasakian_identity(C, c.z, c.X, c.Y).value, 1e-4);
        EXPECT_LT(check_reeb_derivative(C, c.z, c.X).value, 1e-5);
        EXPECT_LT(check_contact_form(C, c.z, c.X, c.Y).value, 1e-5);
        EXPECT_LT(check_normality(C, c.z, c.X, c.Y).value, 1e-5);
    }
}

TEST_P(ConnectionSuite, ResultsDoNotDependOnTheExtension) {
    const SasakianSphere S(2, GetParam());
    const Connection C(S);
    Rng rng(22);
    const Case c = random_case(S, rng);
    ValidationOptions chart;
    chart.extension = Extension::ChartConstant;
    EXPECT_LT(check_torsion(C, c.z, c.X, c.Y, chart).value, 1e-5);
    EXPECT_LT(check_sasakian_identity(C, c.z, c.X, c.Y, chart).value, 1e-4);
}

INSTANTIATE_TEST_SUITE_P(Deformations, ConnectionSuite, ::testing::Values(0.4, 1.0, 2.5));

TEST(Connection, RoundMetricHasNoDifferenceTensor) {
    const SasakianSphere S(2, 1.0);
    const Connection C(S);
    Rng rng(23);
    const Case c = random_case(S, rng);
    EXPECT_EQ(C.difference(c.z, c.X, c.Y).norm(), 0.0);
}

TEST(Connection, DifferenceTensorIsSymmetricAndTangent) {
    const SasakianSphere S(2, 2.0);
    const Connection C(S);
    Rng rng(24);
    const Case c = random_case(S, rng);
    const Vec d = C.difference(c.z, c.X, c.Y);
    EXPECT_LT((d - C.difference(c.z, c.Y, c.X)).norm(), 1e-7);
    EXPECT_NEAR(d.dot(c.z), 0.0, 1e-12);
}

TEST(Connection, TannoCandidatePassesValidationAndMatchesChart) {
    for (double a : {0.5, 2.0}) {
        const SasakianSphere S(2, a);
        Connection C(S);
        const auto rep = C.install_correction(tanno_difference(S));
        EXPECT_TRUE(C.has_correction());
        EXPECT_LT(rep.chart_agreement, 1e-6);
        Rng rng(25);
        const Case c = random_case(S, rng);
        EXPECT_LT(check_sasakian_identity(C, c.z, c.X, c.Y).value, 1e-8);
    }
}

TEST(Connection, WrongCorrectionIsRejectedWithTheFailedCheckNamed) {
    const SasakianSphere S(2, 2.0);
    Connection C(S);
    const DifferenceTensor wrong = [](const Vec&, const Vec& X, const Vec&) { return Vec(0.3 * X); };
    try {
        C.install_correction(wrong);
        FAIL() << "correction accepted";
    } catch (const InvalidInput& e) {
        EXPECT_NE(std::string(e.what()).find("torsion"), std::string::npos);
    }
    EXPECT_FALSE(C.has_correction());
}

TEST(Connection, PerturbedPhiBreaksTheSasakianIdentity) {
    const SasakianSphere S(2, 1.0);
    const Connection C(S);
    Rng rng(26);
    const Case c = random_case(S, rng);
    ValidationOptions bad;
    bad.phi_scale = 1.1;
    EXPECT_GT(check_sasakian_identity(C, c.z, c.X, c.Y, bad).value, 1e-3);
}

TEST(Connection, ContactFormIdentityAgreesWithManualDEta) {
    const SasakianSphere S(1, 1.3);
    const Connection C(S);
    Rng rng(27);
    const Case c = random_case(S, rng);
    EXPECT_NEAR(d_eta(C, c.z, c.X, c.Y, Extension::AmbientProjected), S.g(c.z, c.X, S.phi(c.z, c.Y)), 1e-5);
}
