#pragma once

// Real special functions: log-Gamma, Gamma, Beta and the exponentially
// scaled modified Bessel function e^{-z} I_mu(z).

namespace hardy {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// Gamma(x) for real x away from the poles {0, -1, -2, ...}.
double gamma_signed(double x);

// 1/Gamma(x). Entire; returns exactly 0 at the nonpositive integers.
double rgamma(double x);

double beta(double a, double b);

// sin(pi x) and cos(pi x) with exact zeros at the integers / half-integers.
double sin_pi(double x);
double cos_pi(double x);

// e^{-z} I_mu(z) for mu >= 0, z >= 0.
double bessel_i_scaled(double mu, double z);

// Switch point between the power series and the large-argument expansion.
double bessel_crossover(double mu);

namespace detail {

// Branch-level entry points, exposed so the seam can be tested.
// Orders nu > -1 are accepted; negative orders are used by the
// recurrence tests.
double bessel_i_scaled_series(double nu, double z);
double bessel_i_scaled_asymptotic(double nu, double z);
double bessel_i_scaled_any(double nu, double z);

// ln(e^{-z} I_nu(z)), finite even where the value itself underflows.
double log_bessel_i_scaled(double nu, double z);

} // namespace detail

} // namespace hardy
