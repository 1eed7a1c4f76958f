#include "sasaki/trig_map.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;

namespace {

TrigMap sample_map() {
    TrigMap F(2, 4);
    Vec w1(2), w2(2), A(4), B(4);
    w1 << 1.0, 0.0;
    w2 << 0.5, 2.0;
    A << 1, 0, 0.5, 0;
    B << 0, 1, 0, -0.5;
    F.add(w1, A, B);
    F.add(w2, B, A);
    return F;
}

}  // namespace

TEST(TrigMap, DerivativesMatchCentralDifferences) {
    const TrigMap F = sample_map();
    Vec p(2);
    p << 0.3, -0.7;
    const double h = 1e-5;
    for (int dir = 0; dir < 2; ++dir) {
        Vec e = Vec::Zero(2);
        e[dir] = h;
        const Vec fd = (F.value(p + e) - F.value(p - e)) / (2 * h);
        std::vector<int> idx(2, 0);
        idx[dir] = 1;
        EXPECT_LT((F.derivative(p, idx) - fd).norm(), 1e-9);
    }
}

TEST(TrigMap, MixedSecondDerivativeIsSymmetricAndExact) {
    const TrigMap F = sample_map();
    Vec p(2);
    p << 1.1, 0.4;
    Vec expect = Vec::Zero(4);
    for (const auto& t : F.terms()) {
        const double ph = t.omega.dot(p);
        expect += -t.omega[0] * t.omega[1] * (t.A * std::cos(ph) + t.B * std::sin(ph));
    }
    EXPECT_LT((F.derivative(p, {1, 1}) - expect).norm(), 1e-14);
}

TEST(TrigMap, AddMergesEqualFrequencies) {
    TrigMap F(1, 2);
    Vec w(1), A(2), B(2);
    w << 2.0;
    A << 1, 0;
    B << 0, 1;
    F.add(w, A, B);
    F.add(w, A, B);
    EXPECT_EQ(F.terms().size(), 1u);
    EXPECT_LT((F.value(Vec::Zero(1)) - 2 * A).norm(), 1e-15);
}

TEST(TrigMap, CurveJetAgreesWithDerivative) {
    TrigMap F(1, 2);
    Vec w(1), A(2), B(2);
    w << 3.0;
    A << 1, 0;
    B << 0, 1;
    F.add(w, A, B);
    const std::vector<Vec> jet = F.curve_jet(0.4, 4);
    for (int k = 0; k <= 4; ++k) EXPECT_LT((jet[k] - F.derivative(Vec::Constant(1, 0.4), {k})).norm(), 1e-13);
    EXPECT_LT((jet[4] - 81.0 * jet[0]).norm(), 1e-12);
}

TEST(TrigMap, PrependRotationEvaluatesTheRotatedMap) {
    const TrigMap F = sample_map();
    Mat Q = Mat::Zero(4, 4);
    Q(1, 0) = 1;
    Q(0, 1) = -1;
    Q(3, 2) = 1;
    Q(2, 3) = -1;
    const double rate = 0.8;
    const TrigMap G = F.prepend_rotation(Q, rate);
    EXPECT_EQ(G.param_dim(), 3);
    Vec p(2), q(3);
    p << 0.2, 0.9;
    q << 1.3, 0.2, 0.9;
    const Vec Fp = F.value(p);
    const Vec expect = std::cos(rate * 1.3) * Fp - std::sin(rate * 1.3) * (Q * Fp);
    EXPECT_LT((G.value(q) - expect).norm(), 1e-14);
}

TEST(TrigMap, PermuteAndScaleParameters) {
    const TrigMap F = sample_map();
    Vec p(2), swapped(2), f(2);
    p << 0.5, 1.5;
    swapped << 1.5, 0.5;
    f << 2.0, 3.0;
    EXPECT_LT((F.permute({1, 0}).value(swapped) - F.value(p)).norm(), 1e-14);
    EXPECT_LT((F.scale_parameters(f).value(p) - F.value(f.cwiseProduct(p))).norm(), 1e-14);
}

TEST(TrigMap, ReportsDistinctFrequencies) {
    const TrigMap F = sample_map();
    EXPECT_EQ(F.frequencies(0), (std::vector<double>{0.5, 1.0}));
    EXPECT_EQ(F.frequencies(1), (std::vector<double>{2.0}));
}
