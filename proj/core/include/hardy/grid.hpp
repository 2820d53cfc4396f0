#pragma once

// Graded one-dimensional mesh on (0, X).

#include <vector>

namespace hardy {

struct Grid1D {
    double X = 10.0;
    int N = 0;        // number of cells
    double g = 2.0;   // grading exponent
    std::vector<double> vertices;  // X (k/N)^g, k = 0..N
    std::vector<double> nodes;     // interior vertices, N - 1 of them
    std::vector<double> weights;   // dual-cell widths (x_{k+1} - x_{k-1}) / 2

    int size() const { return static_cast<int>(nodes.size()); }
    double cell_width(int c) const { return vertices[c + 1] - vertices[c]; }
};

// Vertices X (k/N)^g; the unknowns sit at the N - 1 interior vertices.
Grid1D build_grid(double X, int N, double g);

// Index of the first node >= x (size() if none).
int first_node_at_or_above(const Grid1D& grid, double x);

} // namespace hardy
