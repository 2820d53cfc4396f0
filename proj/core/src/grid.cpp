#include "hardy/grid.hpp"

#include "hardy/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardy {

Grid1D build_grid(double X, int N, double g) {
    if (!(X > 0.0) || !std::isfinite(X)) throw ParameterError("build_grid: X must be positive");
    if (N < 16) throw ParameterError("build_grid: need N >= 16 cells, got " + std::to_string(N));
    if (!(g >= 1.0) || !std::isfinite(g)) throw ParameterError("build_grid: grading exponent must be >= 1");

    Grid1D grid;
    grid.X = X;
    grid.N = N;
    grid.g = g;
    grid.vertices.resize(N + 1);
    for (int k = 0; k <= N; ++k) grid.vertices[k] = X * std::pow(static_cast<double>(k) / N, g);
    grid.vertices[N] = X;

    grid.nodes.resize(N - 1);
    grid.weights.resize(N - 1);
    for (int k = 1; k < N; ++k) {
        grid.nodes[k - 1] = grid.vertices[k];
        grid.weights[k - 1] = 0.5 * (grid.vertices[k + 1] - grid.vertices[k - 1]);
    }
    return grid;
}

int first_node_at_or_above(const Grid1D& grid, double x) {
    return static_cast<int>(std::lower_bound(grid.nodes.begin(), grid.nodes.end(), x) - grid.nodes.begin());
}

} // namespace hardy
