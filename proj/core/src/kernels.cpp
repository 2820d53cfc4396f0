#include "hardy/kernels.hpp"

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hardy {

namespace {

constexpr double kBranchTol = 1e-9;

void require_point(const HalfSpacePoint& x, const char* what) {
    if (!(x.xd > 0.0)) throw DomainError(std::string(what) + ": x_d must be positive");
}

void require_same_dim(const HalfSpacePoint& x, const HalfSpacePoint& y, int d, const char* what) {
    if (x.dim() != d || y.dim() != d)
        throw ParameterError(std::string(what) + ": points must have dimension " + std::to_string(d));
    require_point(x, what);
    require_point(y, what);
}

double squared_transverse(const HalfSpacePoint& x, const HalfSpacePoint& y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.xprime.size(); ++i) {
        const double dx = x.xprime[i] - y.xprime[i];
        sum += dx * dx;
    }
    return sum;
}

double log_min1(double v) { return std::min(0.0, std::log(v)); }

// ln of t^{-d/alpha} [ (1 ^ t^{1+d/alpha} / rho^{d+alpha}) or e^{-c rho^2/t} ].
double log_bulk(double alpha, int d, double t, double rho, double c) {
    if (alpha == 2.0) return -0.5 * d * std::log(t) - c * rho * rho / t;
    const double lt = std::log(t);
    double v = -d / alpha * lt;
    if (rho > 0.0) v += std::min(0.0, (1.0 + d / alpha) * lt - (d + alpha) * std::log(rho));
    return v;
}

double log_sum_exp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double riesz_threshold(double alpha, double s) { return 0.5 * alpha * (1.0 + 0.5 * s); }

void require_s(int d, double alpha, double p, double s) {
    const double smax = riesz_s_max(d, alpha, p);
    if (!(s > 0.0) || !(s < smax))
        throw ParameterError("s must lie in (0, " + std::to_string(smax) + "), got " + std::to_string(s));
}

} // namespace

HalfSpacePoint point1(double xd) {
    HalfSpacePoint x;
    x.xd = xd;
    return x;
}

double distance(const HalfSpacePoint& x, const HalfSpacePoint& y) {
    if (x.dim() != y.dim()) throw ParameterError("distance: dimension mismatch");
    const double dd = x.xd - y.xd;
    return std::sqrt(squared_transverse(x, y) + dd * dd);
}

DiffEnvelopeParams make_diff_params(const CouplingParams& cp, double c_exp, double c_m) {
    DiffEnvelopeParams dp;
    dp.q = derived_exponents(cp.alpha, cp.p).q;
    dp.c_exp = c_exp;
    dp.c_m = c_m;
    return dp;
}

double log_heat_envelope(const KernelEnvelope& env, double t, const HalfSpacePoint& x, const HalfSpacePoint& y) {
    if (!(t > 0.0)) throw DomainError("heat_envelope: t must be positive");
    require_same_dim(x, y, env.d, "heat_envelope");
    const double scale = std::pow(t, 1.0 / env.alpha);
    const double rho = distance(x, y);
    const double boundary = env.p * (log_min1(x.xd / scale) + log_min1(y.xd / scale));
    return boundary + log_bulk(env.alpha, env.d, t, rho, env.c_exp);
}

double heat_envelope(const KernelEnvelope& env, double t, const HalfSpacePoint& x, const HalfSpacePoint& y) {
    return std::exp(log_heat_envelope(env, t, x, y));
}

double log_heat_exact_halfline(double lambda, double t, double r, double s) {
    if (!(lambda >= -0.25)) throw DomainError("heat_exact_halfline: lambda must be >= -1/4");
    if (!(t > 0.0) || !(r > 0.0) || !(s > 0.0))
        throw DomainError("heat_exact_halfline: t, r, s must be positive");
    const double mu = std::sqrt(lambda + 0.25);
    const double z = r * s / (2.0 * t);
    const double diff = r - s;
    return -std::log(2.0 * t) + 0.5 * std::log(r * s) - diff * diff / (4.0 * t) +
           detail::log_bessel_i_scaled(mu, z);
}

double heat_exact_halfline(double lambda, double t, double r, double s) {
    return std::exp(log_heat_exact_halfline(lambda, t, r, s));
}

double log_heat_exact_halfspace(int d, double lambda, double t, const HalfSpacePoint& x,
                                const HalfSpacePoint& y) {
    if (d < 1) throw DomainError("heat_exact_halfspace: d must be at least 1");
    require_same_dim(x, y, d, "heat_exact_halfspace");
    if (!(t > 0.0)) throw DomainError("heat_exact_halfspace: t must be positive");
    const double transverse =
        -0.5 * (d - 1) * std::log(4.0 * kPi * t) - squared_transverse(x, y) / (4.0 * t);
    return transverse + log_heat_exact_halfline(lambda, t, x.xd, y.xd);
}

double heat_exact_halfspace(int d, double lambda, double t, const HalfSpacePoint& x, const HalfSpacePoint& y) {
    return std::exp(log_heat_exact_halfspace(d, lambda, t, x, y));
}

double riesz_s_max(int d, double alpha, double p) {
    return std::min(2.0 * d / alpha, 2.0 * (d + 2.0 * p) / alpha);
}

double riesz_envelope(const CouplingParams& params, double s, const HalfSpacePoint& x, const HalfSpacePoint& y) {
    const int d = params.d;
    const double alpha = params.alpha;
    const double p = params.p;
    require_s(d, alpha, p, s);
    require_same_dim(x, y, d, "riesz_envelope");
    const double rho = distance(x, y);
    const double top = std::max(x.xd, y.xd);
    const double base = std::pow(rho, 0.5 * alpha * s - d);
    if (rho <= top) {
        const double m = std::min({1.0, x.xd / rho, y.xd / rho});
        return base * std::pow(m, p);
    }
    const double product = base * std::pow(x.xd * y.xd / (rho * rho), p);
    if (alpha == 2.0) return product;
    const double thr = riesz_threshold(alpha, s);
    const double ratio = rho / top;
    if (std::abs(p - thr) <= kBranchTol) return product * (1.0 + std::log(ratio));
    if (p < thr) return product;
    return product * std::pow(ratio, 2.0 * p - alpha * (1.0 + 0.5 * s));
}

double master_time_integral(double alpha, int d, double p, double s, double T, double S, double c_exp) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("master_time_integral: alpha must lie in (0,2]");
    if (d < 1) throw DomainError("master_time_integral: d must be at least 1");
    if (!(T > 0.0) || !(S > 0.0)) throw DomainError("master_time_integral: T and S must be positive");
    if (alpha == 2.0 && !(c_exp > 0.0)) throw DomainError("master_time_integral: c must be positive");
    const double smax = riesz_s_max(d, alpha, p);
    if (!(s > 0.0) || !(s < smax))
        throw DomainError("master_time_integral: integral diverges for s = " + std::to_string(s));
    const double ia = 1.0 / alpha;
    if (std::abs(std::pow(T, -ia) - std::pow(S, -ia)) > 1.0 + 1e-12)
        throw ParameterError("master_time_integral: need |T^{-1/alpha} - S^{-1/alpha}| <= 1");

    auto integrand = [&](double tau) {
        const double lt = std::log(tau);
        double v = (-2.0 - 0.5 * s) * lt;
        if (alpha < 2.0) v += std::min(0.0, (d * ia + 1.0) * lt);
        else v += (0.5 * d + 1.0) * lt - c_exp * tau;
        v += p * (std::min(0.0, ia * (lt - std::log(T))) + std::min(0.0, ia * (lt - std::log(S))));
        return std::exp(v);
    };

    std::vector<double> br = {T, S, 1.0};
    std::sort(br.begin(), br.end());
    const double b1 = br.front();
    const double b3 = br.back();

    double head;
    double tail;
    if (alpha < 2.0) {
        const double e1 = d * ia + 2.0 * p * ia - 0.5 * s;
        head = std::pow(b1, e1) * std::pow(T * S, -p * ia) / e1;
        tail = std::pow(b3, -1.0 - 0.5 * s) / (1.0 + 0.5 * s);
    } else {
        const double a_head = 0.5 * d + p - 0.5 * s;
        head = std::pow(T * S, -0.5 * p) * std::pow(c_exp, -a_head) *
               boost::math::tgamma_lower(a_head, c_exp * b1);
        const double a_tail = 0.5 * d - 0.5 * s;
        tail = std::pow(c_exp, -a_tail) * boost::math::tgamma(a_tail, c_exp * b3);
    }

    double middle = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        if (!(br[i + 1] > br[i])) continue;
        const double la = std::log(br[i]);
        const double lb = std::log(br[i + 1]);
        // Adaptive refinement stalls on very short segments; the integrand is
        // smooth inside each one.
        if (lb - la < 1e-2) {
            middle += quad::gauss([&](double v) { return integrand(std::exp(v)) * std::exp(v); }, la, lb, 20);
        } else {
            middle += quad::log_kronrod(integrand, br[i], br[i + 1], 1e-12);
        }
    }
    return head + middle + tail;
}

double master_time_regime(double alpha, double p, double s, double T, double S) {
    const double ia = 1.0 / alpha;
    const double m = std::min(T, S);
    if (m <= 1.0) return std::pow(std::min({1.0, std::pow(T, -ia), std::pow(S, -ia)}), p);
    const double prod = std::pow(T * S, -p * ia);
    if (alpha == 2.0) return prod;
    const double thr = riesz_threshold(alpha, s);
    if (std::abs(p - thr) <= kBranchTol) return prod * (1.0 + std::log(m));
    if (p < thr) return prod;
    return prod * std::pow(m, 2.0 * p * ia - 1.0 - 0.5 * s);
}

namespace {

struct LogParts {
    double j = -std::numeric_limits<double>::infinity();
    double m = -std::numeric_limits<double>::infinity();
};

LogParts log_diff_parts(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t, const HalfSpacePoint& x,
                        const HalfSpacePoint& y) {
    if (!(t > 0.0)) throw DomainError("diff_envelope: t must be positive");
    require_same_dim(x, y, cp.d, "diff_envelope");
    const double alpha = cp.alpha;
    const double scale = std::pow(t, 1.0 / alpha);
    const double rho = distance(x, y);
    const double top = std::max(x.xd, y.xd);
    const double bottom = std::min(x.xd, y.xd);
    const bool near = rho <= 0.5 * bottom;

    LogParts out;
    if (top <= scale || !near) {
        out.j = dp.q * (log_min1(x.xd / scale) + log_min1(y.xd / scale)) +
                log_bulk(alpha, cp.d, t, rho, dp.c_exp);
    }
    if (top >= scale && near) {
        out.m = std::log(t) - alpha * std::log(top) + log_bulk(alpha, cp.d, t, rho, dp.c_m);
    }
    return out;
}

} // namespace

DiffEnvelopeParts diff_envelope_parts(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t,
                                      const HalfSpacePoint& x, const HalfSpacePoint& y) {
    const LogParts lp = log_diff_parts(dp, cp, t, x, y);
    return {std::exp(lp.j), std::exp(lp.m)};
}

double diff_envelope(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t, const HalfSpacePoint& x,
                     const HalfSpacePoint& y) {
    const DiffEnvelopeParts parts = diff_envelope_parts(dp, cp, t, x, y);
    return parts.j + parts.m;
}

double log_diff_envelope(const DiffEnvelopeParams& dp, const CouplingParams& cp, double t,
                         const HalfSpacePoint& x, const HalfSpacePoint& y) {
    const LogParts lp = log_diff_parts(dp, cp, t, x, y);
    return log_sum_exp(lp.j, lp.m);
}

} // namespace hardy
