#include "abraham/grid.hpp"

#include <cmath>

namespace abraham {

double grid_sum(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s;
}

double grid_integral(const ScalarField& f, const GridSpec& g) {
    return grid_sum(f) * g.cell_volume();
}

double grid_mean(const ScalarField& f) { return grid_sum(f) / f.size(); }

double l2_norm(const ScalarField& f, const GridSpec& g) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * g.cell_volume());
}

double l2_norm(const VectorField& f, const GridSpec& g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.x.size(); ++i)
        s += f.x[i] * f.x[i] + f.y[i] * f.y[i] + f.z[i] * f.z[i];
    return std::sqrt(s * g.cell_volume());
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double max_abs(const VectorField& f) {
    return std::max(max_abs(f.x), std::max(max_abs(f.y), max_abs(f.z)));
}

}  // namespace abraham
