#include "hardy/testfunctions.hpp"

#include "hardy/errors.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace hardy {

namespace {

double phi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = phi(t);
    const double b = phi(1.0 - t);
    return a / (a + b);
}

double bump(double x) {
    const double z = (x - 1.25) / 0.75;
    if (std::abs(z) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - z * z));
}

double boundary_envelope(double x) { return 1.0 - smoothstep((x - 0.5) / 1.5); }

double theta_cutoff(double x, double r) { return smoothstep((x - r) / r); }

double chi_cutoff(double x, double R) { return 1.0 - smoothstep((x - R) / R); }

Eigen::VectorXd sample(const Grid1D& grid, double (*f)(double)) {
    Eigen::VectorXd v(grid.size());
    for (int i = 0; i < grid.size(); ++i) v[i] = f(grid.nodes[i]);
    return v;
}

TestFunction bump_function(const Grid1D& grid) {
    if (grid.X <= 2.0) throw ParameterError("bump_function: the bump needs X > 2");
    TestFunction tf;
    tf.kind = TestFunctionKind::Bump;
    tf.values = sample(grid, bump);
    tf.label = "bump";
    return tf;
}

double boundary_bump_at(double x, double eps, double q) {
    if (x <= 0.0) return 0.0;
    const double y = x / eps;
    return boundary_envelope(x) * std::pow(x, q) * std::pow(y / std::sqrt(1.0 + y * y), kBoundaryBumpMargin);
}

TestFunction boundary_bump(const Grid1D& grid, double eps, double q) {
    if (!(eps > 0.0)) throw ParameterError("boundary_bump: eps must be positive");
    if (grid.X <= 2.0) throw ParameterError("boundary_bump: the envelope needs X > 2");
    const int below = first_node_at_or_above(grid, eps);
    if (below < 3)
        throw ParameterError("boundary_bump: eps = " + fmt(eps) + " is resolved by only " + std::to_string(below) +
                             " nodes; need at least 3");
    TestFunction tf;
    tf.kind = TestFunctionKind::BoundaryBump;
    tf.eps = eps;
    tf.gamma = q + kBoundaryBumpMargin;
    tf.values.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        tf.values[i] = boundary_bump_at(grid.nodes[i], eps, q);
    }
    tf.label = "boundary-bump(" + fmt(eps) + ")";
    return tf;
}

TestFunction dilate(const Grid1D& grid, double R) {
    if (!(R > 0.0)) throw ParameterError("dilate: R must be positive");
    if (2.0 * R >= grid.X) throw ParameterError("dilate: support [R/2, 2R] must lie inside (0, X)");
    TestFunction tf;
    tf.kind = TestFunctionKind::Dilate;
    tf.R = R;
    tf.values.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) tf.values[i] = bump(grid.nodes[i] / R);
    tf.label = "dilate(" + fmt(R) + ")";
    return tf;
}

TestFunction cutoff_product(const Grid1D& grid, double r, double R) {
    if (!(r > 0.0) || !(R >= r)) throw ParameterError("cutoff_product: need 0 < r <= R");
    if (2.0 * R >= grid.X) throw ParameterError("cutoff_product: support must lie inside (0, X)");
    TestFunction tf;
    tf.kind = TestFunctionKind::CutoffProduct;
    tf.r = r;
    tf.R = R;
    tf.values.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.nodes[i];
        tf.values[i] = chi_cutoff(x, R) * theta_cutoff(x, r);
    }
    tf.label = "cutoff-product(" + fmt(r) + "," + fmt(R) + ")";
    return tf;
}

} // namespace hardy
