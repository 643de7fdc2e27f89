#include "cavityforge/numeric.hpp"

namespace cavityforge::numeric {

std::vector<double> derivative(const TimeGrid& grid, std::span<const double> f) {
    if (f.size() != grid.n || grid.n < 3)
        throw InvalidParameterError("derivative: need >= 3 samples matching the grid");
    const double inv = 1.0 / grid.dt;
    const std::size_t n = grid.n;
    std::vector<double> d(n);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * 0.5 * inv;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) * 0.5 * inv;
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * 0.5 * inv;
    return d;
}

}  // namespace cavityforge::numeric
