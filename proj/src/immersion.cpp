#include "sasaki/immersion.hpp"

#include "sasaki/errors.hpp"

#include <fmt/format.h>

namespace sasaki {

int ImmersionGrid::node_count() const {
    int n = 1;
    for (const auto& ax : axes) n *= ax.count;
    return n;
}

int ImmersionGrid::flat_index(const std::vector<int>& idx) const {
    int f = 0;
    for (int d = 0; d < dim; ++d) f = f * axes[d].count + idx[d];
    return f;
}

std::vector<int> ImmersionGrid::multi_index(int flat) const {
    std::vector<int> idx(dim);
    for (int d = dim - 1; d >= 0; --d) {
        idx[d] = flat % axes[d].count;
        flat /= axes[d].count;
    }
    return idx;
}

Vec ImmersionGrid::params_at(const std::vector<int>& idx) const {
    Vec p(dim);
    for (int d = 0; d < dim; ++d) p[d] = axes[d].value(idx[d]);
    return p;
}

ImmersionGrid ImmersionGrid::from_map(std::shared_ptr<const TrigMap> map, std::vector<GridAxis> axes) {
    if (!map || map->param_dim() != static_cast<int>(axes.size()))
        throw InvalidInput("immersion map and axes disagree in dimension");
    ImmersionGrid g;
    g.dim = static_cast<int>(axes.size());
    g.ambient_dim = map->ambient_dim();
    g.axes = std::move(axes);
    const int total = g.node_count();
    g.points.reserve(total);
    for (int f = 0; f < total; ++f) {
        Vec z = map->value(g.params_at(g.multi_index(f)));
        const double r = z.squaredNorm() - 1.0;
        if (std::abs(r) >= 1e-12) throw InvalidInput(fmt::format("immersion point off the sphere (|z|^2 - 1 = {:.3e})", r));
        g.points.push_back(std::move(z));
    }
    g.analytic = std::move(map);
    return g;
}

GridAxis ImmersionGrid::periodic_axis(double period, int count) {
    if (count < 8) throw InvalidInput("grid axis needs at least 8 samples");
    return GridAxis{0.0, period / count, count, true};
}

GridAxis ImmersionGrid::open_axis(double start, double length, int count) {
    if (count < 8) throw InvalidInput("grid axis needs at least 8 samples");
    return GridAxis{start, length / (count - 1), count, false};
}

}  // namespace sasaki
