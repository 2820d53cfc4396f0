#pragma once

// Dense generalized eigendecomposition K v = mu M v (M diagonal) and the
// functional calculus built on it.

#include "hardy/assembly.hpp"

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace hardy {

inline constexpr int kDenseSolverCap = 4000;

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // nondecreasing
    Eigen::MatrixXd eigenvectors;  // columns, M-orthonormal
    Eigen::VectorXd mass;
    double max_residual = 0.0;          // max_k |K v - mu M v| / |K v|
    double orthonormality_error = 0.0;  // max |V^T M V - I|

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralDecomposition eigendecompose(const DiscreteOperator& op, int cap = kDenseSolverCap);
SpectralDecomposition eigendecompose(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass,
                                     int cap = kDenseSolverCap);

// Smallest eigenvalue of K v = nu W v for diagonal W > 0.
double smallest_generalized_eigenvalue(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& weight);

// <u, v_k>_M for all k.
Eigen::VectorXd spectral_coefficients(const SpectralDecomposition& dec, const Eigen::VectorXd& u);

double mass_norm(const Eigen::VectorXd& mass, const Eigen::VectorXd& u);

// |L^{s/2} u| in the mass norm, s in [0, 2].
double sobolev_norm(const SpectralDecomposition& dec, double s, const Eigen::VectorXd& u);

// L^{s/2} u for real s; negative s needs a positive spectrum.
Eigen::VectorXd power_apply(const SpectralDecomposition& dec, double s, const Eigen::VectorXd& u);

// e^{-tL} u, t >= 0.
Eigen::VectorXd heat_apply(const SpectralDecomposition& dec, double t, const Eigen::VectorXd& u);

// Kernel of L^{-s/2} at nodes (i, j): sum_k mu_k^{-s/2} v_k(i) v_k(j), s > 0.
double riesz_kernel_entry(const SpectralDecomposition& dec, double s, int i, int j);

// Kernel of e^{-tL} at nodes (i, j).
double heat_kernel_entry(const SpectralDecomposition& dec, double t, int i, int j);

struct HardyConvergenceRow {
    int N = 0;
    double nu = 0.0;
    double target = 0.0;     // |lambda*|
    double rel_error = 0.0;
    double extrapolated = std::numeric_limits<double>::quiet_NaN();  // informational only
};

// Smallest nu with Form_0(u) >= nu int u^2 x^{-alpha}; approximates -lambda*.
double hardy_quotient_min(double alpha, const Grid1D& grid);

std::vector<HardyConvergenceRow> hardy_convergence_table(double alpha, double X, double g,
                                                         const std::vector<int>& Ns);

} // namespace hardy
