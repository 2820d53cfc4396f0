#pragma once

// Parameter layer: the coupling function C(p), its inverse p(lambda), the
// critical coupling lambda*, the normalization A(d, -alpha), lambda_0 and
// the auxiliary function gamma(alpha, p).

namespace hardy {

struct CouplingParams {
    int d = 1;
    double alpha = 2.0;
    double lambda = 0.0;
    double p = 1.0;
    double lambda_star = -0.25;
    double lambda_zero = 0.0;  // NaN when alpha = 2
};

struct DerivedExponents {
    double q = 0.0;   // min(p, (alpha-1)_+)
    double r = 0.0;   // -min(q, 0)
    double p0 = 0.0;  // (alpha-1)_+
};

double normalization_A(int d, double alpha);

double lambda_star(double alpha);

// C(p); p in (-1, M) with M = alpha for alpha < 2 and +inf for alpha = 2.
double coupling_C(double alpha, double p);

// dC/dp by central differences (used by the root finder and the tests).
double coupling_C_derivative(double alpha, double p);

// Integral representation of gamma(alpha, p), by quadrature.
double gamma_integral(double alpha, double p);

// Closed form of gamma(alpha, p); alpha != 1.
double gamma_closed(double alpha, double p);

// Unique p >= (alpha-1)/2 with C(p) = lambda.
double exponent_p(double alpha, double lambda);

double lambda_zero(int d, double alpha);

// Fills p, lambda_star and lambda_zero from (d, alpha, lambda).
CouplingParams make_params(int d, double alpha, double lambda);

DerivedExponents derived_exponents(double alpha, double p);

// Tolerance by which lambda may fall below lambda* and still be accepted.
inline constexpr double kLambdaStarSlack = 1e-12;

} // namespace hardy
