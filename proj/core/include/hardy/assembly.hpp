#pragma once

// Matrix realization of the quadratic form of L_lambda on piecewise linear
// hat functions over a Grid1D, with lumped mass.

#include "hardy/coupling.hpp"
#include "hardy/grid.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace hardy {

struct DiscreteOperator {
    Grid1D grid;
    CouplingParams params;     // d = 1; p is NaN below lambda*
    Eigen::MatrixXd free_stiffness;  // the lambda = 0 form
    Eigen::VectorXd hardy_weight;    // lumped x^{-alpha}: w_i x_i^{-alpha}
    Eigen::MatrixXd stiffness;       // free_stiffness + lambda diag(hardy_weight)
    Eigen::VectorXd mass;            // lumped: grid weights
    std::vector<std::string> warnings;

    int size() const { return static_cast<int>(mass.size()); }
};

struct AssemblyOptions {
    // Add the interaction with the complementary half-line (-inf, 0), turning
    // the regional form into the full-line form of the zero extension.
    bool full_line = false;
    // Reject meshes whose neighbouring cell widths differ by more than this.
    double max_width_ratio = 4.0;
};

DiscreteOperator assemble_form(double alpha, double lambda, const Grid1D& grid, const AssemblyOptions& opts = {});

// The lambda = 0 stiffness alone.
Eigen::MatrixXd assemble_free_stiffness(double alpha, const Grid1D& grid, const AssemblyOptions& opts = {});

Eigen::VectorXd lumped_hardy_weight(double alpha, const Grid1D& grid);

// Singular integrals over two adjacent cells of widths h1 (left) and h2:
// I_mn = int_0^h1 int_0^h2 xi^m eta^n (xi + eta)^{-1-alpha}, m + n = 2.
struct AdjacentIntegrals {
    double i20 = 0.0;
    double i11 = 0.0;
    double i02 = 0.0;
};

AdjacentIntegrals adjacent_integrals(double alpha, double h1, double h2);

// u^T K u.
double form_value(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& u);

} // namespace hardy
