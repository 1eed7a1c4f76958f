#pragma once

#include "sasaki/ambient.hpp"

#include <vector>

namespace sasaki::fd {

// Fornberg's algorithm: weights w[k] with f^{(order)}(x0) ≈ Σ w[k] f(nodes[k]).
std::vector<double> fornberg_weights(double x0, const std::vector<double>& nodes, int order);

struct Stencil {
    std::vector<int> offsets;
    std::vector<double> weights;  // for unit spacing; divide by h^order
    int radius() const;
};

// Centered stencil of the given derivative order and (even) accuracy order.
const Stencil& central(int order, int accuracy = 4);

// Stencil using only offsets in [lo, hi], as close to centered as possible.
Stencil shifted(int order, int accuracy, int lo, int hi);

// Number of points used for a derivative: 5 for orders 1-2, 7 for orders 3-4 at accuracy 4.
int stencil_points(int order, int accuracy = 4);

// Differentiates uniformly sampled vector data.
class GridDifferentiator {
public:
    GridDifferentiator(double spacing, int count, bool periodic, int accuracy = 4);

    // Derivative of the given order at sample i. Non-periodic data near the ends use
    // shifted stencils.
    Vec derivative(const std::vector<Vec>& samples, int i, int order) const;
    double derivative(const std::vector<double>& samples, int i, int order) const;

    int margin(int order) const;  // samples at each end where a centered stencil does not fit
    bool periodic() const { return periodic_; }

private:
    Stencil stencil_at(int i, int order) const;
    int wrap(int i) const;

    double h_;
    int count_;
    bool periodic_;
    int accuracy_;
};

}  // namespace sasaki::fd
