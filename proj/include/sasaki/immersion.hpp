#pragma once

#include "sasaki/trig_map.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace sasaki {

struct GridAxis {
    double start = 0.0;
    double step = 0.0;
    int count = 0;
    bool periodic = false;
    double value(int i) const { return start + i * step; }
    double period() const { return periodic ? step * count : 0.0; }
};

// A 1-, 2- or 3-parameter discretized immersion into the sphere. Points are stored
// row-major (last parameter varies fastest).
struct ImmersionGrid {
    int dim = 0;
    int ambient_dim = 0;
    std::vector<GridAxis> axes;
    std::vector<Vec> points;
    std::shared_ptr<const TrigMap> analytic;
    std::string family;
    std::map<std::string, double> family_params;
    unsigned long long seed = 0;

    int node_count() const;
    int flat_index(const std::vector<int>& idx) const;
    std::vector<int> multi_index(int flat) const;
    Vec params_at(const std::vector<int>& idx) const;

    // Samples an analytic map on the given axes and validates points on the sphere.
    static ImmersionGrid from_map(std::shared_ptr<const TrigMap> map, std::vector<GridAxis> axes);
    // Periodic axis of n samples over [0, period) or non-periodic axis with endpoint.
    static GridAxis periodic_axis(double period, int count);
    static GridAxis open_axis(double start, double length, int count);
};

}  // namespace sasaki
