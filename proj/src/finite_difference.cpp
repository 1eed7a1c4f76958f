#include "sasaki/finite_difference.hpp"

#include "sasaki/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <map>
#include <mutex>

namespace sasaki::fd {

std::vector<double> fornberg_weights(double x0, const std::vector<double>& nodes, int order) {
    const int n = static_cast<int>(nodes.size());
    if (order < 0 || order >= n) throw InvalidInput(fmt::format("cannot form derivative {} from {} nodes", order, n));
    // c[j][k]: weight of node j for derivative k
    std::vector<std::vector<double>> c(n, std::vector<double>(order + 1, 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, order);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = c[j][order];
    return w;
}

int Stencil::radius() const {
    int r = 0;
    for (int o : offsets) r = std::max(r, std::abs(o));
    return r;
}

int stencil_points(int order, int accuracy) {
    // centered stencils: order + accuracy - 1 points rounded up to odd
    int p = order + accuracy - 1;
    if (p % 2 == 0) ++p;
    return p;
}

static Stencil build(int order, const std::vector<int>& offs) {
    std::vector<double> nodes(offs.begin(), offs.end());
    Stencil s;
    s.offsets = offs;
    s.weights = fornberg_weights(0.0, nodes, order);
    // drop exact zeros produced by symmetry
    Stencil t;
    for (std::size_t k = 0; k < offs.size(); ++k) {
        if (std::abs(s.weights[k]) < 1e-14) continue;
        t.offsets.push_back(offs[k]);
        t.weights.push_back(s.weights[k]);
    }
    return t;
}

const Stencil& central(int order, int accuracy) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, Stencil> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(order, accuracy);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const int r = stencil_points(order, accuracy) / 2;
    std::vector<int> offs;
    for (int k = -r; k <= r; ++k) offs.push_back(k);
    return cache.emplace(key, build(order, offs)).first->second;
}

Stencil shifted(int order, int accuracy, int lo, int hi) {
    const int p = order + accuracy;  // one-sided stencils need one extra node for the same accuracy
    if (hi - lo + 1 < p) throw InvalidInput("not enough samples for a finite-difference stencil");
    const int rc = stencil_points(order, accuracy) / 2;
    if (lo <= -rc && hi >= rc) return central(order, accuracy);
    int start = std::max(lo, std::min(-p / 2, hi - p + 1));
    std::vector<int> offs;
    for (int k = 0; k < p; ++k) offs.push_back(start + k);
    return build(order, offs);
}

GridDifferentiator::GridDifferentiator(double spacing, int count, bool periodic, int accuracy)
    : h_(spacing), count_(count), periodic_(periodic), accuracy_(accuracy) {
    if (!(spacing > 0)) throw InvalidInput("grid spacing must be positive");
    if (count < stencil_points(1, accuracy) + 2) throw InvalidInput("too few samples for finite differences");
}

int GridDifferentiator::wrap(int i) const {
    int m = i % count_;
    return m < 0 ? m + count_ : m;
}

int GridDifferentiator::margin(int order) const {
    return periodic_ ? 0 : stencil_points(order, accuracy_) / 2;
}

Stencil GridDifferentiator::stencil_at(int i, int order) const {
    if (periodic_) return central(order, accuracy_);
    if (i < 0 || i >= count_) throw InvalidInput("sample index outside the grid");
    return shifted(order, accuracy_, -i, count_ - 1 - i);
}

Vec GridDifferentiator::derivative(const std::vector<Vec>& samples, int i, int order) const {
    const Stencil st = stencil_at(i, order);
    const double scale = std::pow(h_, -order);
    Vec out = Vec::Zero(samples.at(0).size());
    for (std::size_t k = 0; k < st.offsets.size(); ++k)
        out += st.weights[k] * samples[periodic_ ? wrap(i + st.offsets[k]) : i + st.offsets[k]];
    return out * scale;
}

double GridDifferentiator::derivative(const std::vector<double>& samples, int i, int order) const {
    const Stencil st = stencil_at(i, order);
    double out = 0.0;
    for (std::size_t k = 0; k < st.offsets.size(); ++k)
        out += st.weights[k] * samples[periodic_ ? wrap(i + st.offsets[k]) : i + st.offsets[k]];
    return out * std::pow(h_, -order);
}

}  // namespace sasaki::fd
