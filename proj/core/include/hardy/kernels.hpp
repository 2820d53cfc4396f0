#pragma once

// Heat kernel envelopes, the exact alpha = 2 half-line and half-space
// kernels, Riesz kernel envelopes, the time integral behind them and the
// difference-kernel envelope J + M.
//
// Envelopes are returned with implied constant 1.

#include "hardy/coupling.hpp"

#include <vector>

namespace hardy {

struct HalfSpacePoint {
    std::vector<double> xprime;  // d - 1 transverse coordinates
    double xd = 1.0;             // distance to the boundary, > 0

    int dim() const { return static_cast<int>(xprime.size()) + 1; }
};

HalfSpacePoint point1(double xd);

// |x - y|; both points must have the same dimension.
double distance(const HalfSpacePoint& x, const HalfSpacePoint& y);

struct KernelEnvelope {
    double alpha = 2.0;
    int d = 1;
    double p = 1.0;
    double c_exp = 0.25;  // Gaussian constant, alpha = 2 only
};

struct DiffEnvelopeParams {
    double q = 0.0;       // min(p, (alpha-1)_+)
    double c_exp = 0.25;  // Gaussian constant in J, alpha = 2 only
    double c_m = 0.25;    // Gaussian constant in M, alpha = 2 only
};

DiffEnvelopeParams make_diff_params(const CouplingParams& cp, double c_exp, double c_m);

double heat_envelope(const KernelEnvelope& env, double t, const HalfSpacePoint& x, const HalfSpacePoint& y);
double log_heat_envelope(const KernelEnvelope& env, double t, const HalfSpacePoint& x, const HalfSpacePoint& y);

// Exact alpha = 2 kernel of e^{-t L_lambda} on the half-line, lambda >= -1/4.
double heat_exact_halfline(double lambda, double t, double r, double s);
double log_heat_exact_halfline(double lambda, double t, double r, double s);

double heat_exact_halfspace(int d, double lambda, double t, const HalfSpacePoint& x, const HalfSpacePoint& y);
double log_heat_exact_halfspace(int d, double lambda, double t, const HalfSpacePoint& x,
                                const HalfSpacePoint& y);

// Upper end of the admissible s range, min(2d/alpha, 2(d+2p)/alpha).
double riesz_s_max(int d, double alpha, double p);

double riesz_envelope(const CouplingParams& params, double s, const HalfSpacePoint& x, const HalfSpacePoint& y);

// Integral over tau in (0, inf) of
//   tau^{-2-s/2} B(tau) (1 ^ (tau/T)^{1/alpha})^p (1 ^ (tau/S)^{1/alpha})^p
// with B = 1 ^ tau^{d/alpha+1} for alpha < 2 and tau^{d/2+1} e^{-c tau} for
// alpha = 2.
double master_time_integral(double alpha, int d, double p, double s, double T, double S, double c_exp);

// The two-sided size of master_time_integral in each (T, S) regime; in the
// borderline case p = (alpha/2)(1 + s/2) the factor is 1 + ln(T ^ S).
double master_time_regime(double alpha, double p, double s, double T, double S);

// J_t + M_t.
double diff_envelope(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t, const HalfSpacePoint& x,
                     const HalfSpacePoint& y);

struct DiffEnvelopeParts {
    double j = 0.0;
    double m = 0.0;
};

DiffEnvelopeParts diff_envelope_parts(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t,
                                      const HalfSpacePoint& x, const HalfSpacePoint& y);

// ln(J_t + M_t), usable where the Gaussian factor underflows.
double log_diff_envelope(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t,
                         const HalfSpacePoint& x, const HalfSpacePoint& y);

} // namespace hardy
