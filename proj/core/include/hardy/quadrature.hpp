#pragma once

// Thin wrappers over the Boost.Math integrators plus fixed Gauss-Legendre
// rules. Everything takes std::function so callers do not see Boost.

#include <functional>
#include <vector>

namespace hardy::quad {

using Fn = std::function<double(double)>;
// f(x, xc): xc is the signed distance to the nearer endpoint
// (a - x on the left half, b - x on the right half).
using FnComplement = std::function<double(double, double)>;

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Cached n-point Gauss-Legendre rule.
const GaussRule& gauss_legendre(int n);

// Fixed-rule integral over [a, b].
double gauss(const Fn& f, double a, double b, int n);

// Double-exponential rule on a finite interval; tolerates integrable
// endpoint singularities.
double tanh_sinh(const Fn& f, double a, double b, double rel_tol = 1e-12, double* err = nullptr);
double tanh_sinh(const FnComplement& f, double a, double b, double rel_tol = 1e-12, double* err = nullptr);

// Adaptive 61-point Gauss-Kronrod on [a, b] for piecewise smooth integrands.
double kronrod(const Fn& f, double a, double b, double rel_tol = 1e-11, double* err = nullptr,
               unsigned max_depth = 18);

// Integral over [a, +inf) (or (-inf, b] when a = -inf) with exp-sinh.
double exp_sinh(const Fn& f, double a, double b, double rel_tol = 1e-11, double* err = nullptr);

// Adaptive Gauss-Kronrod over consecutive segments of a sorted breakpoint
// list; duplicate and out-of-order entries are ignored.
double kronrod_pieces(const Fn& f, std::vector<double> breaks, double rel_tol = 1e-11,
                      double* err = nullptr);

// Integral over [a, b] in the variable v = ln x, for 0 < a < b; suited to
// integrands that vary on every scale.
double log_kronrod(const Fn& f, double a, double b, double rel_tol = 1e-11, double* err = nullptr);

} // namespace hardy::quad
