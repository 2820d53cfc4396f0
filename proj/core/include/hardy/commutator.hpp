#pragma once

// Commutators of the free discrete operator with the cutoffs chi_R theta_r.

#include "hardy/assembly.hpp"

#include <Eigen/Dense>

namespace hardy {

struct CommutatorParts {
    double total = 0.0;     // |[A, chi theta] u|
    double boundary = 0.0;  // |[A, theta](chi u)|, the r-dependent piece
    double outer = 0.0;     // |theta [A, chi] u|, the R-dependent piece
};

// A = M^{-1} K_0 with K_0 the lambda = 0 stiffness of op. Norms are discrete
// mass norms on (0, X); for alpha < 2 they include the part of A(chi theta u)
// that lands on (X, inf).
CommutatorParts commutator_parts(const DiscreteOperator& op, const Eigen::VectorXd& u, double r, double R);

double commutator_norm(const DiscreteOperator& op, const Eigen::VectorXd& u, double r, double R);

// int_X^inf (A_1 sum_j w_j f_j (x - x_j)^{-1-alpha})^2 dx.
double exterior_tail(const DiscreteOperator& op, const Eigen::VectorXd& f);

} // namespace hardy
