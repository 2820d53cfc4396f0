#include "hardy/errors.hpp"
#include "hardy/kernels.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace hardy;

namespace {

double images(double t, double r, double s) {
    return (std::exp(-(r - s) * (r - s) / (4.0 * t)) - std::exp(-(r + s) * (r + s) / (4.0 * t))) /
           std::sqrt(4.0 * kPi * t);
}

// p = 2: order 3/2, where I_{3/2} is elementary.
double lambda_two(double t, double r, double s) {
    const double z = r * s / (2.0 * t);
    const double i32 = std::sqrt(2.0 / (kPi * z)) * (std::cosh(z) - std::sinh(z) / z);
    return std::sqrt(r * s) / (2.0 * t) * std::exp(-(r * r + s * s) / (4.0 * t)) * i32;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(HeatExact, ZeroCouplingIsImagesKernel) {
    for (double t : {0.01, 0.3, 2.0, 50.0})
        for (double r : {0.05, 0.7, 3.0})
            for (double s : {0.1, 1.0, 4.0}) {
                const double ref = images(t, r, s);
                if (ref < 1e-250) continue;
                EXPECT_LT(rel(heat_exact_halfline(0.0, t, r, s), ref), 1e-12) << t << ' ' << r << ' ' << s;
            }
}

TEST(HeatExact, ElementaryBesselOrder) {
    for (double t : {0.2, 1.0, 5.0})
        for (double r : {0.3, 1.1, 2.5})
            for (double s : {0.4, 2.0})
                EXPECT_LT(rel(heat_exact_halfline(2.0, t, r, s), lambda_two(t, r, s)), 1e-11);
}

TEST(HeatExact, Symmetric) {
    for (double lambda : {-0.25, -0.1, 0.0, 0.75, 6.0})
        EXPECT_DOUBLE_EQ(heat_exact_halfline(lambda, 0.7, 0.3, 1.9), heat_exact_halfline(lambda, 0.7, 1.9, 0.3));
}

TEST(HeatExact, BoundaryBehaviourIsPowerP) {
    for (double lambda : {-0.2, 0.0, 2.0}) {
        const double p = exponent_p(2.0, lambda);
        const double k1 = heat_exact_halfline(lambda, 1.0, 1e-4, 1.0);
        const double k2 = heat_exact_halfline(lambda, 1.0, 2e-4, 1.0);
        EXPECT_NEAR(std::log2(k2 / k1), p, 1e-6) << lambda;
    }
}

TEST(HeatExact, SemigroupLaw) {
    const double lambda = 0.6, t = 0.4, s = 0.9, r = 0.5, y = 1.3;
    auto f = [&](double u) { return heat_exact_halfline(lambda, t, r, u) * heat_exact_halfline(lambda, s, u, y); };
    const double conv = quad::kronrod_pieces(f, {0.0, 0.5, 1.0, 1.5, 3.0, 6.0, 12.0, 30.0}, 1e-11);
    EXPECT_LT(rel(conv, heat_exact_halfline(lambda, t + s, r, y)), 1e-8);
}

TEST(HeatExact, LogFormSurvivesUnderflow) {
    const double lk = log_heat_exact_halfline(1.0, 1e-3, 0.1, 5.0);
    EXPECT_TRUE(std::isfinite(lk));
    EXPECT_LT(lk, -1000.0);
    EXPECT_EQ(heat_exact_halfline(1.0, 1e-3, 0.1, 5.0), 0.0);
}

TEST(HeatExact, HalfSpaceFactorizes) {
    HalfSpacePoint x{{0.2, -0.4}, 0.6};
    HalfSpacePoint y{{1.0, 0.3}, 1.4};
    const double t = 0.8, lambda = 0.5;
    const double dx2 = 0.8 * 0.8 + 0.7 * 0.7;
    const double transverse = std::exp(-dx2 / (4.0 * t)) / (4.0 * kPi * t);
    EXPECT_LT(rel(heat_exact_halfspace(3, lambda, t, x, y), transverse * heat_exact_halfline(lambda, t, 0.6, 1.4)),
              1e-13);
}

TEST(HeatExact, RejectsBadArguments) {
    EXPECT_THROW(heat_exact_halfline(-0.3, 1.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(heat_exact_halfline(0.0, 0.0, 1.0, 1.0), DomainError);
    EXPECT_THROW(heat_exact_halfline(0.0, 1.0, -1.0, 1.0), DomainError);
}

TEST(HeatEnvelope, SymmetricAndLogConsistent) {
    for (double alpha : {0.7, 1.5, 2.0}) {
        const KernelEnvelope env{alpha, 1, exponent_p(alpha, 0.4), 0.25};
        for (double t : {0.01, 1.0, 30.0}) {
            const auto x = point1(0.3), y = point1(2.0);
            EXPECT_DOUBLE_EQ(heat_envelope(env, t, x, y), heat_envelope(env, t, y, x));
            EXPECT_NEAR(std::log(heat_envelope(env, t, x, y)), log_heat_envelope(env, t, x, y), 1e-12);
        }
    }
}

TEST(HeatEnvelope, BoundedRatioToExactKernel) {
    // Two-sided comparison with fixed constants; c = 1/4 for the upper side.
    for (double lambda : {-0.24, 0.0, 1.0}) {
        const KernelEnvelope up{2.0, 1, exponent_p(2.0, lambda), 0.24};
        const KernelEnvelope lo{2.0, 1, exponent_p(2.0, lambda), 0.5};
        for (double t : {0.01, 0.3, 10.0})
            for (double x : {0.01, 0.5, 4.0})
                for (double y : {0.02, 1.0, 3.0}) {
                    const double lk = log_heat_exact_halfline(lambda, t, x, y);
                    const double upper = log_heat_envelope(up, t, point1(x), point1(y)) - lk;
                    const double lower = lk - log_heat_envelope(lo, t, point1(x), point1(y));
                    EXPECT_GT(upper, -std::log(1e3)) << lambda << ' ' << t << ' ' << x << ' ' << y;
                    EXPECT_GT(lower, -std::log(1e3)) << lambda << ' ' << t << ' ' << x << ' ' << y;
                }
    }
}

TEST(RieszKernel, TimeIntegralOfImagesKernelMatchesClosedForm) {
    // int_0^inf t^{s/2-1} e^{-t L_0}(x, y) dt / Gamma(s/2) for s < 1.
    const double s = 0.5;
    const double c = std::tgamma(0.5 * (1.0 - s)) / (std::tgamma(0.5 * s) * std::sqrt(4.0 * kPi) * std::pow(2.0, s - 1.0));
    for (double x : {0.1, 1.0, 5.0})
        for (double y : {0.3, 2.0}) {
            auto f = [&](double t) { return std::pow(t, 0.5 * s - 1.0) * images(t, x, y); };
            const double num = quad::exp_sinh(f, 0.0, std::numeric_limits<double>::infinity(), 1e-11) /
                               std::tgamma(0.5 * s);
            const double ref = c * (std::pow(std::abs(x - y), s - 1.0) - std::pow(x + y, s - 1.0));
            EXPECT_LT(rel(num, ref), 1e-8) << x << ' ' << y;

            const double env = riesz_envelope(make_params(1, 2.0, 0.0), s, point1(x), point1(y));
            EXPECT_GT(ref / env, 1e-2);
            EXPECT_LT(ref / env, 1e2);
        }
}

TEST(RieszEnvelope, AdmissibleRange) {
    EXPECT_DOUBLE_EQ(riesz_s_max(1, 2.0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(riesz_s_max(1, 1.5, -0.2), 2.0 * (1.0 - 0.4) / 1.5);
    EXPECT_THROW(riesz_envelope(make_params(1, 2.0, 0.0), 1.0, point1(1.0), point1(2.0)), ParameterError);
}

TEST(DiffEnvelope, PartsAddUpAndLogAgrees) {
    const CouplingParams cp = make_params(1, 2.0, 2.0);
    const DiffEnvelopeParams dp = make_diff_params(cp, 0.25, 0.25);
    for (double t : {0.05, 1.0, 20.0})
        for (double x : {0.1, 1.0})
            for (double y : {0.2, 3.0}) {
                const auto parts = diff_envelope_parts(dp, cp, t, point1(x), point1(y));
                const double v = diff_envelope(dp, cp, t, point1(x), point1(y));
                EXPECT_GT(parts.j, 0.0);
                EXPECT_GE(parts.m, 0.0);
                EXPECT_NEAR(v, parts.j + parts.m, 1e-14 * v);
                EXPECT_NEAR(std::log(v), log_diff_envelope(dp, cp, t, point1(x), point1(y)), 1e-12);
            }
}

TEST(MasterIntegral, PositiveAndDecreasingInS) {
    // Larger S damps the factor (1 ^ (tau/S)^{1/alpha})^p.
    const double a = master_time_integral(1.5, 1, 0.5, 0.4, 2.0, 1.0, 0.25);
    const double b = master_time_integral(1.5, 1, 0.5, 0.4, 2.0, 1.5, 0.25);
    EXPECT_GT(a, 0.0);
    EXPECT_GT(a, b);
    EXPECT_THROW(master_time_integral(1.5, 1, 0.5, 2.5, 2.0, 1.0, 0.25), DomainError);
}

TEST(MasterIntegral, RegimeRatioBounded) {
    for (double T : {1e-3, 0.5, 3.0, 100.0}) {
        const double S = T;
        const double v = master_time_integral(2.0, 1, 1.0, 0.4, T, S, 0.25);
        const double r = v / master_time_regime(2.0, 1.0, 0.4, T, S);
        EXPECT_GT(r, 1.0 / 50.0) << T;
        EXPECT_LT(r, 50.0) << T;
    }
}
