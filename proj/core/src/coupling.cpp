#include "hardy/coupling.hpp"

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hardy {

namespace {

void require_alpha(double alpha, bool allow_two) {
    const bool ok = allow_two ? (alpha > 0.0 && alpha <= 2.0) : (alpha > 0.0 && alpha < 2.0);
    if (!ok)
        throw DomainError("alpha must lie in " + std::string(allow_two ? "(0,2]" : "(0,2)") + ", got " +
                          std::to_string(alpha));
}

void require_p(double alpha, double p) {
    if (!(p > -1.0)) throw DomainError("p must exceed -1, got " + std::to_string(p));
    if (alpha < 2.0 && !(p < alpha))
        throw DomainError("p must be below alpha = " + std::to_string(alpha) + ", got " + std::to_string(p));
}

// Gamma(1+p) * Gamma(z) * sin(pi (alpha/2 - z)) with z = alpha - p.
double pole_cancelled_product(double alpha, double p) {
    const double z = alpha - p;
    // sin(pi (alpha/2 - z)) written so that alpha near 2 keeps its digits.
    const double numerator = sin_pi(0.5 * (2.0 - alpha) + z);
    if (z >= 0.5) return gamma_signed(1.0 + p) * gamma_signed(z) * numerator;

    // Reflection: Gamma(z) = pi / (sin(pi z) Gamma(1 - z)).
    const double nearest = std::round(z);
    double ratio;
    if (alpha == 2.0 && std::abs(z - nearest) < 1e-4) {
        // Both sines vanish at the integers; their quotient is identically 1.
        ratio = 1.0;
    } else {
        ratio = numerator / sin_pi(z);
    }
    const double w = 1.0 - z;  // = p + 1 - alpha
    double gamma_quotient;     // Gamma(1 + p) / Gamma(w)
    if (w >= 0.5) {
        gamma_quotient = std::exp(ln_gamma(1.0 + p) - ln_gamma(w));
    } else {
        gamma_quotient = gamma_signed(1.0 + p) * rgamma(w);
    }
    return kPi * gamma_quotient * ratio;
}

} // namespace

double normalization_A(int d, double alpha) {
    if (d < 1) throw DomainError("dimension must be at least 1");
    require_alpha(alpha, false);
    return alpha * std::exp2(alpha - 1.0) * std::pow(kPi, -0.5 * d) * gamma_signed(0.5 * (d + alpha)) *
           rgamma(1.0 - 0.5 * alpha);
}

double lambda_star(double alpha) {
    require_alpha(alpha, true);
    if (alpha == 2.0) return -0.25;
    if (alpha == 1.0) return 0.0;
    const double g = gamma_signed(0.5 * (1.0 + alpha));
    return -(g / kPi) * (g - std::exp2(alpha - 1.0) * std::sqrt(kPi) * rgamma(1.0 - 0.5 * alpha));
}

double coupling_C(double alpha, double p) {
    require_alpha(alpha, true);
    require_p(alpha, p);
    const double first = gamma_signed(alpha) * sin_pi(0.5 * alpha);
    return (first + pole_cancelled_product(alpha, p)) / kPi;
}

double coupling_C_derivative(double alpha, double p) {
    double h = 1e-5 * std::max(1.0, std::abs(p));
    h = std::min(h, 0.25 * (p + 1.0));
    if (alpha < 2.0) h = std::min(h, 0.25 * (alpha - p));
    return (coupling_C(alpha, p + h) - coupling_C(alpha, p - h)) / (2.0 * h);
}

namespace {

// int_0^{1/2} t^c (1 - t)^{-1-alpha} dt by the binomial series, c > -1.
double head_moment(double alpha, double c) {
    double coef = 1.0;
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double e = c + k + 1.0;
        const double term = coef * std::exp2(-e) / e;
        sum += term;
        if (k > 4 && std::abs(term) <= 1e-18 * std::abs(sum)) break;
        coef *= (1.0 + alpha + k) / (k + 1.0);
    }
    return sum;
}

} // namespace

double gamma_integral(double alpha, double p) {
    require_alpha(alpha, false);
    require_p(alpha, p);
    const double e2 = alpha - p - 1.0;
    if (p == 0.0 || e2 == 0.0) return 0.0;
    // On (0, 1/2] the integrand (t^p - 1)(1 - t^{e2})(1 - t)^{-1-alpha}
    // expands into four moments, which carry the singularity at t = 0.
    const double head = head_moment(alpha, p) - head_moment(alpha, alpha - 1.0) - head_moment(alpha, 0.0) +
                        head_moment(alpha, e2);
    // On [1/2, 1) in u = 1 - t, then w = u^{2-alpha}/(2-alpha), which absorbs
    // the factor u^{1-alpha}.
    const double k = 2.0 - alpha;
    auto integrand = [&](double w, double wc) {
        (void)wc;
        if (!(w > 0.0)) return 0.0;
        const double u = std::pow(k * w, 1.0 / k);
        if (u == 0.0) return -p * e2;
        const double log_t = std::log1p(-u);
        const double a = std::expm1(p * log_t);
        const double b = -std::expm1(e2 * log_t);
        return (a / u) * (b / u);
    };
    double err = 0.0;
    const double w_max = std::pow(0.5, k) / k;
    const double tail = quad::tanh_sinh(quad::FnComplement(integrand), 0.0, w_max, 1e-13, &err);
    if (!(err <= 1e-9 * std::max(1.0, std::abs(tail))))
        throw NumericalError("gamma_integral: error estimate " + std::to_string(err));
    return head + tail;
}

double gamma_closed(double alpha, double p) {
    require_alpha(alpha, false);
    require_p(alpha, p);
    if (alpha == 1.0) throw DomainError("gamma_closed: alpha = 1 is excluded; use gamma_integral");
    const double bracket =
        gamma_signed(p + 1.0) * rgamma(p - alpha + 1.0) + gamma_signed(alpha - p) * rgamma(-p);
    return 1.0 / alpha - gamma_signed(1.0 - alpha) / alpha * bracket;
}

double exponent_p(double alpha, double lambda) {
    require_alpha(alpha, true);
    if (!std::isfinite(lambda)) throw DomainError("exponent_p: lambda must be finite");
    const double ls = lambda_star(alpha);
    if (lambda < ls - kLambdaStarSlack)
        throw DomainError("exponent_p: lambda = " + std::to_string(lambda) + " is below lambda* = " +
                          std::to_string(ls));
    const double p_min = 0.5 * (alpha - 1.0);
    if (lambda <= ls) return p_min;

    double lo = p_min;
    double hi;
    if (alpha < 2.0) {
        double gap = 0.5 * (alpha - p_min);
        hi = alpha - gap;
        while (coupling_C(alpha, hi) <= lambda) {
            lo = hi;
            gap *= 0.5;
            if (gap < 1e-15 * alpha) throw NumericalError("exponent_p: lambda too large to bracket");
            hi = alpha - gap;
        }
    } else {
        double step = 1.0;
        hi = p_min + step;
        while (coupling_C(alpha, hi) <= lambda) {
            lo = hi;
            step *= 2.0;
            hi = p_min + step;
            if (!std::isfinite(hi)) throw NumericalError("exponent_p: bracket overflow");
        }
    }

    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (coupling_C(alpha, mid) < lambda) lo = mid;
        else hi = mid;
    }

    double p = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = coupling_C(alpha, p) - lambda;
        if (f == 0.0) break;
        if (f < 0.0) lo = std::max(lo, p);
        else hi = std::min(hi, p);
        const double slope = coupling_C_derivative(alpha, p);
        double next = p - f / slope;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const bool done = std::abs(next - p) <= 4e-16 * std::max(1.0, std::abs(p));
        p = next;
        if (done) break;
    }
    const double residual = std::abs(coupling_C(alpha, p) - lambda);
    if (residual > 1e-10 * std::max(1.0, std::abs(lambda)))
        throw NumericalError("exponent_p: residual " + std::to_string(residual));
    return p;
}

double lambda_zero(int d, double alpha) {
    if (d < 1) throw DomainError("dimension must be at least 1");
    require_alpha(alpha, false);
    if (d == 1) return sin_pi(0.5 * alpha) * gamma_signed(alpha) / kPi;
    // Integrate out y_d < 0 first (giving 1/alpha), then the transverse
    // variables in polar coordinates.
    const double sphere = 2.0 * std::pow(kPi, 0.5 * (d - 1)) * rgamma(0.5 * (d - 1));
    const double expo = -0.5 * (d + alpha);
    auto radial = [&](double rho) { return std::pow(rho, d - 2) * std::pow(1.0 + rho * rho, expo); };
    const double j = quad::exp_sinh(radial, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
    return normalization_A(d, alpha) * sphere * j / alpha;
}

CouplingParams make_params(int d, double alpha, double lambda) {
    if (d < 1) throw DomainError("dimension must be at least 1");
    CouplingParams cp;
    cp.d = d;
    cp.alpha = alpha;
    cp.lambda = lambda;
    cp.p = exponent_p(alpha, lambda);
    cp.lambda_star = lambda_star(alpha);
    cp.lambda_zero = alpha < 2.0 ? lambda_zero(d, alpha) : std::numeric_limits<double>::quiet_NaN();
    return cp;
}

DerivedExponents derived_exponents(double alpha, double p) {
    DerivedExponents e;
    e.p0 = std::max(alpha - 1.0, 0.0);
    e.q = std::min(p, e.p0);
    e.r = std::max(0.0, -e.q);
    return e;
}

} // namespace hardy
