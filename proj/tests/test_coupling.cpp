#include "hardy/coupling.hpp"
#include "hardy/errors.hpp"
#include "hardy/specfun.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hardy;

TEST(CouplingC, LocalCaseIsQuadratic) {
    for (double p = -0.99; p < 6.0; p += 0.0137) EXPECT_NEAR(coupling_C(2.0, p), p * (p - 1.0), 1e-11) << p;
}

TEST(CouplingC, VanishesAtZeroAndAlphaMinusOne) {
    for (double alpha : {0.3, 0.8, 1.2, 1.7, 1.95}) {
        EXPECT_NEAR(coupling_C(alpha, 0.0), 0.0, 1e-12) << alpha;
        EXPECT_NEAR(coupling_C(alpha, alpha - 1.0), 0.0, 1e-12) << alpha;
    }
}

TEST(CouplingC, SymmetricAboutCentre) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ua(0.05, 1.95);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double alpha = ua(rng);
        // Both p and alpha - 1 - p must lie in (-1, alpha).
        const double p = -1.0 + 1e-3 + uf(rng) * (alpha - 2e-3);
        EXPECT_NEAR(coupling_C(alpha, p), coupling_C(alpha, alpha - 1.0 - p), 1e-10) << alpha << ' ' << p;
    }
}

TEST(CouplingC, IncreasingOnPrincipalBranch) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
        const double top = alpha < 2.0 ? alpha - 1e-3 : 6.0;
        double prev = coupling_C(alpha, 0.5 * (alpha - 1.0));
        for (double p = 0.5 * (alpha - 1.0) + 0.01; p < top; p += 0.01) {
            const double c = coupling_C(alpha, p);
            EXPECT_GT(c, prev) << alpha << ' ' << p;
            prev = c;
        }
    }
}

TEST(CouplingC, RejectsOutOfRange) {
    EXPECT_THROW(coupling_C(0.0, 0.1), DomainError);
    EXPECT_THROW(coupling_C(2.5, 0.1), DomainError);
    EXPECT_THROW(coupling_C(1.5, -1.0), DomainError);
    EXPECT_THROW(coupling_C(1.5, 1.5), DomainError);
}

TEST(ExponentP, LocalClosedForm) {
    for (double lambda = -0.25; lambda <= 100.0; lambda += 0.173)
        EXPECT_NEAR(exponent_p(2.0, lambda), 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * lambda)), 1e-11) << lambda;
}

TEST(ExponentP, InvertsCoupling) {
    for (double alpha : {0.25, 0.5, 0.99, 1.01, 1.5, 1.9})
        for (double lambda : {lambda_star(alpha), -0.01, 0.0, 0.3, 2.0, 10.0}) {
            if (lambda < lambda_star(alpha)) continue;
            const double p = exponent_p(alpha, lambda);
            EXPECT_GE(p, 0.5 * (alpha - 1.0));
            EXPECT_NEAR(coupling_C(alpha, p), lambda, 1e-10 * std::max(1.0, std::abs(lambda))) << alpha;
        }
}

TEST(ExponentP, ZeroCouplingGivesFreeExponent) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0})
        EXPECT_NEAR(exponent_p(alpha, 0.0), std::max(alpha - 1.0, 0.0), 1e-11) << alpha;
}

TEST(ExponentP, RejectsBelowCritical) {
    EXPECT_THROW(exponent_p(2.0, -0.3), DomainError);
    EXPECT_THROW(exponent_p(1.5, lambda_star(1.5) - 1e-6), DomainError);
    EXPECT_NO_THROW(exponent_p(2.0, -0.25 - 0.5 * kLambdaStarSlack));
}

TEST(LambdaStar, Anchors) {
    EXPECT_NEAR(lambda_star(1.0), 0.0, 1e-12);
    EXPECT_EQ(lambda_star(2.0), -0.25);
    // Frozen from an independent 30-digit evaluation of C(alpha, (alpha-1)/2).
    EXPECT_NEAR(lambda_star(0.5), -0.0790465170846923, 1e-13);
    EXPECT_NEAR(lambda_star(1.5), -0.062041264812559, 1e-13);
}

TEST(LambdaStar, IsCouplingAtCentre) {
    for (double alpha = 0.05; alpha < 2.0; alpha += 0.05)
        EXPECT_NEAR(coupling_C(alpha, 0.5 * (alpha - 1.0)), lambda_star(alpha), 1e-10) << alpha;
}

TEST(LambdaStar, NonPositive) {
    for (double alpha = 0.05; alpha <= 2.0; alpha += 0.05) EXPECT_LE(lambda_star(alpha), 1e-14) << alpha;
}

TEST(GammaIntegral, MatchesClosedForm) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> ua(0.05, 1.95);
    std::uniform_real_distribution<double> uf(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double alpha = ua(rng);
        if (std::abs(alpha - 1.0) < 1e-2) continue;
        const double p = 0.5 * (alpha - 1.0) + uf(rng) * (0.5 * (alpha + 1.0) - 1e-2);
        EXPECT_NEAR(gamma_integral(alpha, p), gamma_closed(alpha, p), 1e-8 * std::max(1.0, std::abs(gamma_closed(alpha, p))))
            << alpha << ' ' << p;
    }
}

TEST(GammaIntegral, TimesNormalizationIsCoupling) {
    for (double alpha : {0.3, 0.7, 1.3, 1.8})
        for (double p : {0.5 * (alpha - 1.0), 0.0, 0.5 * alpha, alpha - 0.05}) {
            const double a1 = normalization_A(1, alpha);
            EXPECT_NEAR(a1 * gamma_integral(alpha, p), coupling_C(alpha, p), 1e-8) << alpha << ' ' << p;
        }
}

TEST(NormalizationA, OneDimensionalClosedForm) {
    for (double alpha : {0.2, 0.9, 1.4, 1.99})
        EXPECT_NEAR(normalization_A(1, alpha), sin_pi(0.5 * alpha) * std::tgamma(alpha + 1.0) / kPi, 1e-13);
}

TEST(NormalizationA, TransverseIntegrationReducesToOneDimension) {
    for (int d : {2, 3, 4})
        for (double alpha : {0.5, 1.0, 1.5}) {
            const double sphere = 2.0 * std::pow(kPi, 0.5 * (d - 1)) / std::tgamma(0.5 * (d - 1));
            const double lhs = normalization_A(d, alpha) * 0.5 * sphere * beta(0.5 * (alpha + 1.0), 0.5 * (d - 1));
            EXPECT_NEAR(lhs, normalization_A(1, alpha), 1e-12) << d << ' ' << alpha;
        }
}

TEST(MakeParams, FillsDerivedQuantities) {
    const CouplingParams cp = make_params(1, 1.5, 0.0);
    EXPECT_NEAR(cp.p, 0.5, 1e-12);
    EXPECT_NEAR(cp.lambda_star, lambda_star(1.5), 1e-15);
    EXPECT_TRUE(std::isfinite(cp.lambda_zero));
    EXPECT_TRUE(std::isnan(make_params(1, 2.0, 1.0).lambda_zero));

    const DerivedExponents de = derived_exponents(1.5, 0.2);
    EXPECT_DOUBLE_EQ(de.p0, 0.5);
    EXPECT_DOUBLE_EQ(de.q, 0.2);
    EXPECT_DOUBLE_EQ(de.r, 0.0);
    EXPECT_DOUBLE_EQ(derived_exponents(0.5, -0.1).r, 0.1);
}

TEST(LambdaZero, OneDimensionalValue) {
    // Gamma-function form of the zero-extension constant in d = 1.
    for (double alpha : {0.5, 1.0, 1.5})
        EXPECT_NEAR(lambda_zero(1, alpha), sin_pi(0.5 * alpha) * std::tgamma(alpha) / kPi, 1e-13);
    EXPECT_THROW(lambda_zero(1, 2.0), DomainError);
    EXPECT_THROW(lambda_zero(0, 1.0), DomainError);
}
