#pragma once

// Grid functions used as probes: boundary bumps, dilated bumps and the
// cutoff products chi * theta.

#include "hardy/grid.hpp"

#include <Eigen/Dense>

#include <string>

namespace hardy {

// C-infinity step: 0 for t <= 0, 1 for t >= 1.
double smoothstep(double t);

// Fixed smooth bump, positive exactly on (1/2, 2), maximum 1 at 5/4.
double bump(double x);

// Smooth envelope equal to 1 on [0, 1/2] and 0 on [2, inf).
double boundary_envelope(double x);

// theta(x) = S((x - r)/r): 0 on (0, r], 1 on [2r, inf).
double theta_cutoff(double x, double r);
// chi(x) = 1 - S((x - R)/R): 1 on [0, R], 0 on [2R, inf).
double chi_cutoff(double x, double R);

enum class TestFunctionKind { Bump, BoundaryBump, Dilate, CutoffProduct };

struct TestFunction {
    TestFunctionKind kind = TestFunctionKind::Bump;
    double eps = 0.0;    // BoundaryBump
    double gamma = 0.0;  // BoundaryBump: boundary exponent
    double R = 0.0;      // Dilate, CutoffProduct
    double r = 0.0;      // CutoffProduct
    Eigen::VectorXd values;
    std::string label;
};

TestFunction bump_function(const Grid1D& grid);

// eta(x) x^q (y / sqrt(1 + y^2))^{0.51}, y = x / eps: behaves like
// min(x/eps, 1)^{0.51} x^q, i.e. x^{q + 0.51} below eps. Needs at least three
// nodes below eps.
TestFunction boundary_bump(const Grid1D& grid, double eps, double q);

// Pointwise value of the boundary bump.
double boundary_bump_at(double x, double eps, double q);

// bump(x / R).
TestFunction dilate(const Grid1D& grid, double R);

// chi_R(x) theta_r(x).
TestFunction cutoff_product(const Grid1D& grid, double r, double R);

Eigen::VectorXd sample(const Grid1D& grid, double (*f)(double));

inline constexpr double kBoundaryBumpMargin = 0.51;

} // namespace hardy
