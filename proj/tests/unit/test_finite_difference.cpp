#include "sasaki/finite_difference.hpp"

#include <cmath>
#include <gtest/gtest.h>

using namespace sasaki;
using namespace sasaki::fd;

TEST(Fornberg, ReproducesClassicalCentralWeights) {
    const std::vector<double> w = fornberg_weights(0.0, {-2, -1, 0, 1, 2}, 1);
    const std::vector<double> expect = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(w[k], expect[k], 1e-15);
    const std::vector<double> w2 = fornberg_weights(0.0, {-1, 0, 1}, 2);
    EXPECT_NEAR(w2[0], 1.0, 1e-15);
    EXPECT_NEAR(w2[1], -2.0, 1e-15);
    EXPECT_NEAR(w2[2], 1.0, 1e-15);
}

TEST(Fornberg, WeightsAnnihilateLowDegreePolynomials) {
    const std::vector<double> nodes = {-3, -1, 0, 2, 5};
    for (int order = 1; order <= 3; ++order) {
        const std::vector<double> w = fornberg_weights(0.5, nodes, order);
        for (int deg = 0; deg < static_cast<int>(nodes.size()); ++deg) {
            double s = 0;
            for (std::size_t k = 0; k < nodes.size(); ++k) s += w[k] * std::pow(nodes[k], deg);
            // exact derivative of x^deg at 0.5
            double exact = 0;
            if (deg >= order) {
                exact = 1;
                for (int j = 0; j < order; ++j) exact *= deg - j;
                exact *= std::pow(0.5, deg - order);
            }
            EXPECT_NEAR(s, exact, 1e-10) << "order " << order << " degree " << deg;
        }
    }
}

TEST(Stencil, SizesMatchAccuracy) {
    EXPECT_EQ(stencil_points(1), 5);
    EXPECT_EQ(stencil_points(2), 5);
    EXPECT_EQ(stencil_points(3), 7);
    EXPECT_EQ(stencil_points(4), 7);
    EXPECT_EQ(central(1, 8).radius(), 4);
}

TEST(GridDifferentiator, PeriodicSineIsDifferentiatedToFourthOrder) {
    for (int N : {64, 128}) {
        const double h = 2 * M_PI / N;
        std::vector<double> f(N);
        for (int i = 0; i < N; ++i) f[i] = std::sin(i * h);
        const GridDifferentiator D(h, N, true);
        double err = 0;
        for (int i = 0; i < N; ++i) err = std::max(err, std::abs(D.derivative(f, i, 1) - std::cos(i * h)));
        EXPECT_LT(err, 30 * std::pow(h, 4));
    }
}

TEST(GridDifferentiator, OpenGridUsesShiftedStencilsNearEnds) {
    const int N = 40;
    const double h = 0.05;
    std::vector<double> f(N);
    for (int i = 0; i < N; ++i) f[i] = std::exp(i * h);
    const GridDifferentiator D(h, N, false);
    EXPECT_GT(D.margin(2), 0);
    for (int i : {0, 1, N - 1}) EXPECT_NEAR(D.derivative(f, i, 2), std::exp(i * h), 1e-4);
}
