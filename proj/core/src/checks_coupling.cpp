#include "hardy/coupling.hpp"
#include "hardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hardy {

VerificationReport check_coupling_exactness(const CouplingCheckConfig& cfg) {
    VerificationReport rep;
    rep.name = "coupling_exactness";
    rep.param("alpha", 2.0);
    rep.param("points", cfg.points);

    // p on the open interval (-1, 6).
    double worst_c = 0.0;
    for (int i = 1; i <= cfg.points; ++i) {
        const double p = -1.0 + 7.0 * i / (cfg.points + 1.0);
        worst_c = std::max(worst_c, std::abs(coupling_C(2.0, p) - p * (p - 1.0)));
    }
    // lambda on [-1/4, 100], endpoints included.
    double worst_p = 0.0;
    for (int i = 0; i < cfg.points; ++i) {
        const double lambda = -0.25 + 100.25 * i / (cfg.points - 1.0);
        const double closed = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * lambda));
        worst_p = std::max(worst_p, std::abs(exponent_p(2.0, lambda) - closed));
    }
    rep.measure("max_abs_error_C", worst_c);
    rep.measure("max_abs_error_p", worst_p);
    rep.require_below("max_abs_error_C", cfg.tol);
    rep.require_below("max_abs_error_p", cfg.tol);
    rep.key = "max_abs_error_C";
    rep.finalize();
    return rep;
}

VerificationReport check_lambda_star(const LambdaStarCheckConfig& cfg) {
    VerificationReport rep;
    rep.name = "lambda_star_anchors";
    rep.param("alpha_points", cfg.alpha_points);

    rep.measure("abs_lambda_star_1", std::abs(lambda_star(1.0)));
    rep.measure("lambda_star_2_plus_quarter", lambda_star(2.0) + 0.25);
    double worst = 0.0;
    Curve curve;
    curve.name = "critical_coupling";
    curve.columns = {"alpha", "lambda_star", "C_at_center"};
    for (int i = 1; i <= cfg.alpha_points; ++i) {
        const double alpha = 2.0 * i / cfg.alpha_points;
        const double ls = lambda_star(alpha);
        const double c = coupling_C(alpha, 0.5 * (alpha - 1.0));
        worst = std::max(worst, std::abs(c - ls));
        curve.rows.push_back({alpha, ls, c});
    }
    rep.curves.push_back(curve);
    rep.measure("max_abs_error_center", worst);
    rep.require_below("abs_lambda_star_1", cfg.tol_anchor);
    rep.require("lambda_star_2_plus_quarter", 0.0, 0.0);
    rep.require_below("max_abs_error_center", cfg.tol_grid);
    rep.key = "max_abs_error_center";
    rep.finalize();
    return rep;
}

VerificationReport check_gamma_representation(const GammaCheckConfig& cfg) {
    VerificationReport rep;
    rep.name = "gamma_representation";
    rep.param("samples", cfg.samples);
    rep.param("seed", static_cast<double>(cfg.seed));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ua(0.0, 2.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double worst = 0.0;
    double worst_alpha = 0.0;
    double worst_p = 0.0;
    int done = 0;
    while (done < cfg.samples) {
        const double alpha = ua(rng);
        if (alpha <= 0.0 || std::abs(alpha - 1.0) <= 1e-3) continue;
        const double lo = 0.5 * (alpha - 1.0);
        const double hi = alpha - 1e-2;
        const double p = lo + (hi - lo) * u01(rng);
        if (p <= lo || p >= hi) continue;
        const double lhs = normalization_A(1, alpha) * gamma_integral(alpha, p);
        const double err = std::abs(lhs - coupling_C(alpha, p));
        if (err > worst) {
            worst = err;
            worst_alpha = alpha;
            worst_p = p;
        }
        ++done;
    }
    rep.measure("max_abs_error", worst);
    rep.measure("worst_alpha", worst_alpha);
    rep.measure("worst_p", worst_p);
    rep.require_below("max_abs_error", cfg.tol);
    rep.key = "max_abs_error";
    rep.finalize();
    return rep;
}

} // namespace hardy
