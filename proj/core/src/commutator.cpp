#include "hardy/commutator.hpp"

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/testfunctions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hardy {

namespace {

constexpr int kMinTransitionNodes = 4;

void check_cutoffs(const Grid1D& grid, double r, double R) {
    if (!(r > 0.0) || !(r <= 1.0) || !(R >= 1.0) || !(R < 0.5 * grid.X))
        throw ParameterError("commutator: need 0 < r <= 1 <= R < X/2");
    const int inside = first_node_at_or_above(grid, 2.0 * r) - first_node_at_or_above(grid, r);
    if (inside < kMinTransitionNodes)
        throw ParameterError("commutator: the transition zone [r, 2r] holds only " + std::to_string(inside) +
                             " nodes");
}

Eigen::VectorXd apply_free(const DiscreteOperator& op, const Eigen::VectorXd& v) {
    return (op.free_stiffness * v).cwiseQuotient(op.mass);
}

double squared_mass_norm(const DiscreteOperator& op, const Eigen::VectorXd& v) {
    return op.mass.dot(v.cwiseProduct(v));
}

} // namespace

double exterior_tail(const DiscreteOperator& op, const Eigen::VectorXd& f) {
    const double alpha = op.params.alpha;
    if (alpha == 2.0) return 0.0;
    const Grid1D& grid = op.grid;
    const double A = normalization_A(1, alpha);
    int last = -1;
    for (int j = 0; j < grid.size(); ++j)
        if (f[j] != 0.0) last = j;
    if (last < 0) return 0.0;
    const double X = grid.X;
    const double d0 = std::max(X - grid.nodes[last], grid.cell_width(grid.N - 1));
    auto field = [&](double x) {
        double sum = 0.0;
        for (int j = 0; j <= last; ++j) {
            if (f[j] == 0.0) continue;
            sum += grid.weights[j] * f[j] * std::pow(x - grid.nodes[j], -1.0 - alpha);
        }
        const double v = A * sum;
        return v * v;
    };
    // Doubling panels from X out to X + 2^40 d0.
    double total = 0.0;
    double a = X;
    double width = d0;
    for (int k = 0; k < 40; ++k) {
        total += quad::gauss(field, a, a + width, 20);
        a += width;
        width *= 2.0;
    }
    return total;
}

CommutatorParts commutator_parts(const DiscreteOperator& op, const Eigen::VectorXd& u, double r, double R) {
    const Grid1D& grid = op.grid;
    if (u.size() != grid.size()) throw ParameterError("commutator: vector size mismatch");
    check_cutoffs(grid, r, R);
    Eigen::VectorXd theta(grid.size());
    Eigen::VectorXd chi(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        theta[i] = theta_cutoff(grid.nodes[i], r);
        chi[i] = chi_cutoff(grid.nodes[i], R);
    }
    const Eigen::VectorXd chi_u = chi.cwiseProduct(u);
    const Eigen::VectorXd au = apply_free(op, u);
    const Eigen::VectorXd a_chi_u = apply_free(op, chi_u);
    const Eigen::VectorXd a_theta_chi_u = apply_free(op, theta.cwiseProduct(chi_u));

    const Eigen::VectorXd boundary = a_theta_chi_u - theta.cwiseProduct(a_chi_u);
    const Eigen::VectorXd outer = theta.cwiseProduct(a_chi_u - chi.cwiseProduct(au));
    const Eigen::VectorXd total = boundary + outer;

    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.size());
    CommutatorParts parts;
    parts.boundary = std::sqrt(squared_mass_norm(op, boundary) +
                               exterior_tail(op, (theta - ones).cwiseProduct(chi_u)));
    parts.outer = std::sqrt(squared_mass_norm(op, outer) + exterior_tail(op, chi_u));
    parts.total = std::sqrt(squared_mass_norm(op, total) + exterior_tail(op, theta.cwiseProduct(chi_u)));
    return parts;
}

double commutator_norm(const DiscreteOperator& op, const Eigen::VectorXd& u, double r, double R) {
    return commutator_parts(op, u, r, R).total;
}

} // namespace hardy
