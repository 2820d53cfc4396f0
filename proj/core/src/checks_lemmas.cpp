#include "hardy/commutator.hpp"
#include "hardy/coupling.hpp"
#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/serialize.hpp"
#include "hardy/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace hardy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string tag2(const char* name, double a, const char* name2, double b) {
    return std::string("[") + name + "=" + format_double(a) + "," + name2 + "=" + format_double(b) + "]";
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Points c +- h 2^k from h/64 out to far.
void add_graded(std::vector<double>& br, double c, double h, double far) {
    br.push_back(c);
    for (double d = h / 64.0; d <= far; d *= 2.0) {
        br.push_back(c - d);
        br.push_back(c + d);
    }
}

// Composite 16-point Gauss over consecutive breakpoints.
double composite(const quad::Fn& f, std::vector<double> br) {
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < br.size(); ++i) total += quad::gauss(f, br[i], br[i + 1], 16);
    return total;
}

struct LemmaSample {
    double r, s, dist;  // a and b sit on the first axis, |a - b| = dist
};

double lemma_rhs(int N, double beta, const LemmaSample& q) {
    const double rs = q.r + q.s;
    return std::pow(rs, beta) / (std::pow(rs, N + beta) + std::pow(q.dist, N + beta));
}

// b = 0, a = dist e_1. For N = 2 the second coordinate is folded onto
// [0, inf) with measure 2 dx2. The integrand decays like |x|^{-2(N+beta)},
// so truncating at 1e6 times the largest length scale is harmless.
double lemma_lhs(int N, double beta, const LemmaSample& q) {
    const double e = N + beta;
    const double rb = std::pow(q.r, e);
    const double sb = std::pow(q.s, e);
    const double pref = std::pow(q.r * q.s, beta);
    const double a = q.dist;
    const double far = 1e6 * (q.r + q.s + q.dist);
    std::vector<double> br;
    add_graded(br, a, q.r, far);
    add_graded(br, 0.0, q.s, far);
    if (N == 1) {
        auto f = [&](double x) {
            return pref / ((rb + std::pow(std::abs(x - a), e)) * (sb + std::pow(std::abs(x), e)));
        };
        return composite(f, br);
    }
    if (N != 2) throw ParameterError("lemma_integral: N must be 1 or 2");
    auto slice = [&](double x1) {
        const double da = x1 - a;
        auto g = [&](double x2) {
            const double ra = std::hypot(da, x2);
            const double r0 = std::hypot(x1, x2);
            return 2.0 * pref / ((rb + std::pow(ra, e)) * (sb + std::pow(r0, e)));
        };
        std::vector<double> b2;
        const double ha = std::max(q.r, std::abs(da));
        const double h0 = std::max(q.s, std::abs(x1));
        for (double d = std::min(ha, h0) / 64.0; d <= far; d *= 2.0) b2.push_back(d);
        b2.push_back(0.0);
        b2.push_back(ha);
        b2.push_back(h0);
        b2.erase(std::remove_if(b2.begin(), b2.end(), [&](double x) { return x > far; }), b2.end());
        b2.push_back(far);
        return composite(g, b2);
    };
    return composite(slice, br);
}

// int_0^inf f for f ~ y^{-1+b} at 0 and f ~ y^{-1-a} at inf (a, b > 0), with
// kinks at c/2, c and 2c. The end pieces are mapped onto (0, 1] by
// y = (c/2) w^{1/b} and y = 2c w^{-1/a}, which cancel the power laws.
double half_line(const quad::Fn& f, double c, double a, double b) {
    auto head = [&](double w) {
        if (!(w > 0.0)) return 0.0;
        const double y = 0.5 * c * std::pow(w, 1.0 / b);
        if (!(y > 0.0)) return 0.0;
        const double v = f(y) * y / (b * w);
        return std::isfinite(v) ? v : 0.0;
    };
    auto tail = [&](double w) {
        if (!(w > 0.0)) return 0.0;
        const double y = 2.0 * c * std::pow(w, -1.0 / a);
        const double v = f(y) * y / (a * w);
        return std::isfinite(v) ? v : 0.0;
    };
    return quad::tanh_sinh(quad::Fn(head), 0.0, 1.0, 1e-11) + quad::kronrod_pieces(f, {0.5 * c, c, 2.0 * c}, 1e-11) +
           quad::tanh_sinh(quad::Fn(tail), 0.0, 1.0, 1e-11);
}

// int_0^inf t^{-beta-r} (1 v t)^{alpha+2r} / (|1-t| v (1 ^ t))^{1+alpha} dt.
double schur_reduced(double alpha, double r, double beta) {
    auto f = [&](double t) {
        const double den = std::max(std::abs(1.0 - t), std::min(1.0, t));
        return std::pow(t, -beta - r) * std::pow(std::max(1.0, t), alpha + 2.0 * r) /
               std::pow(den, 1.0 + alpha);
    };
    return half_line(f, 1.0, beta - r, 1.0 - beta - r);
}

double schur_kernel(double alpha, double r, double x, double y) {
    const double hi = std::max(x, y);
    const double lo = std::min(x, y);
    return std::pow(hi / std::sqrt(x * y), 2.0 * r) * std::pow(hi, alpha) /
           std::pow(std::max(std::abs(x - y), lo), 1.0 + alpha);
}

// First half of the Schur test: int_0^inf (x/y)^beta k(x, y) dy.
double schur_row(double alpha, double r, double beta, double x) {
    auto f = [&](double y) { return std::pow(x / y, beta) * schur_kernel(alpha, r, x, y); };
    return half_line(f, x, beta - r, 1.0 - beta - r);
}

// Second half: int_0^inf (y/x)^beta k(x, y) dx at fixed y.
double schur_column(double alpha, double r, double beta, double y) {
    auto f = [&](double x) { return std::pow(y / x, beta) * schur_kernel(alpha, r, x, y); };
    return half_line(f, y, beta - r, 1.0 - beta - r);
}

std::vector<double> log_axis(double a, double b, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(a * std::pow(b / a, n == 1 ? 0.0 : i / (n - 1.0)));
    return v;
}

} // namespace

double lemma_integral_ratio(int N, double beta, double r, double s, double dist) {
    if (N != 1 && N != 2) throw ParameterError("lemma_integral_ratio: N must be 1 or 2");
    if (!(beta > 0.0) || !(r > 0.0) || !(s > 0.0) || !(dist >= 0.0))
        throw ParameterError("lemma_integral_ratio: need beta, r, s > 0 and dist >= 0");
    const LemmaSample q{r, s, dist};
    return lemma_lhs(N, beta, q) / lemma_rhs(N, beta, q);
}

VerificationReport check_lemma_integral(const LemmaIntegralCheckConfig& cfg) {
    VerificationReport rep;
    rep.name = "lemma_integral";
    rep.param("samples", cfg.samples);
    rep.param("samples_2d", cfg.samples_2d);
    rep.param("median_factor", cfg.median_factor);
    rep.param("seed", static_cast<double>(cfg.seed));

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Curve table;
    table.name = "ratios";
    table.columns = {"N", "beta", "max_ratio", "median_ratio", "center_ratio", "far_ratio_1e3", "far_ratio_1e4"};
    for (int N : cfg.dims) {
        if (N != 1 && N != 2) throw ParameterError("lemma_integral: dims must be 1 or 2");
        for (double beta : cfg.betas) {
            if (!(beta > 0.0)) throw ParameterError("lemma_integral: beta must be positive");
            const int n = N == 1 ? cfg.samples : cfg.samples_2d;
            std::vector<double> ratios;
            for (int k = 0; k < n; ++k) {
                LemmaSample q;
                q.r = std::pow(10.0, 2.0 * u(rng));
                q.s = std::pow(10.0, 2.0 * u(rng));
                q.dist = (q.r + q.s) * std::pow(10.0, 2.0 * u(rng));
                ratios.push_back(lemma_lhs(N, beta, q) / lemma_rhs(N, beta, q));
            }
            const double mx = *std::max_element(ratios.begin(), ratios.end());
            const double md = median(ratios);
            const LemmaSample center{1.0, 1.0, 0.0};
            const LemmaSample far3{1.0, 1.0, 1e3};
            const LemmaSample far4{1.0, 1.0, 1e4};
            const double rc = lemma_lhs(N, beta, center) / lemma_rhs(N, beta, center);
            const double r3 = lemma_lhs(N, beta, far3) / lemma_rhs(N, beta, far3);
            const double r4 = lemma_lhs(N, beta, far4) / lemma_rhs(N, beta, far4);
            table.rows.push_back({static_cast<double>(N), beta, mx, md, rc, r3, r4});
            const std::string t = tag2("N", N, "beta", beta);
            rep.measure("max_ratio" + t, mx);
            rep.measure("median_ratio" + t, md);
            rep.measure("max_over_median" + t, mx / md);
            rep.measure("far_drift" + t, std::abs(r4 / r3 - 1.0));
            rep.require("max_ratio" + t, 0.0, std::numeric_limits<double>::max());
            rep.require_below("max_over_median" + t, cfg.median_factor);
        }
    }
    rep.curves.push_back(table);
    rep.note("a and b are placed on the first axis; |a - b| / (r + s) and r, s are log-uniform over four decades");
    rep.key = rep.bounds.size() > 1 ? rep.bounds[1].key : "";
    rep.finalize();
    return rep;
}

VerificationReport check_schur(const SchurCheckConfig& cfg) {
    VerificationReport rep;
    rep.name = "schur";
    rep.param("grid_points", cfg.grid_points);
    rep.param("median_factor", cfg.median_factor);

    const auto xs = log_axis(1e-3, 1e3, cfg.grid_points);
    Curve rows;
    rows.name = "row_integrals";
    rows.columns = {"alpha", "r", "beta", "x", "row_w", "row_w_inverse", "reduced"};
    Curve trend;
    trend.name = "r_trend";
    trend.columns = {"alpha", "r", "reduced_at_midpoint"};
    double worst_consistency = 0.0;
    for (double alpha : cfg.alphas) {
        for (double r : cfg.rs) {
            if (!(r >= 0.0 && r < 0.5)) throw ParameterError("schur: r must lie in [0, 1/2)");
            for (double beta : {0.5, r + 0.25 * (1.0 - 2.0 * r)}) {
                const double reduced = schur_reduced(alpha, r, beta);
                std::vector<double> both;
                for (double x : xs) {
                    const double a = schur_row(alpha, r, beta, x);
                    const double b = schur_column(alpha, r, beta, x);
                    rows.rows.push_back({alpha, r, beta, x, a, b, reduced});
                    both.push_back(a);
                    both.push_back(b);
                    worst_consistency = std::max({worst_consistency, std::abs(a / reduced - 1.0), std::abs(b / reduced - 1.0)});
                }
                const double mx = *std::max_element(both.begin(), both.end());
                const double md = median(both);
                const std::string t = tag2("alpha", alpha, "r", r) + "[beta=" + format_double(beta) + "]";
                rep.measure("sup_row" + t, mx);
                rep.measure("max_over_median" + t, mx / md);
                rep.require("sup_row" + t, 0.0, std::numeric_limits<double>::max());
                rep.require_below("max_over_median" + t, cfg.median_factor);
            }
        }
        for (double r : {0.0, 0.2, 0.4, 0.45, 0.49, 0.499})
            trend.rows.push_back({alpha, r, schur_reduced(alpha, r, 0.5)});
    }
    rep.curves.push_back(rows);
    rep.curves.push_back(trend);
    rep.measure("max_rel_dev_from_reduced", worst_consistency);
    rep.note("row integrals are scale invariant, so each equals the reduced one-dimensional integral");
    rep.key = "max_rel_dev_from_reduced";
    rep.finalize();
    return rep;
}

VerificationReport check_commutator_scaling(const CommutatorCheckConfig& cfg, SpectralCache* cache) {
    VerificationReport rep;
    rep.name = "commutator_scaling";
    rep.param("N", cfg.grid.N);
    rep.param("X", cfg.grid.X);
    rep.param("g", cfg.grid.g);
    rep.param("t", cfg.t);
    rep.param("bump_scale", cfg.bump_scale);
    rep.param("R_fixed", cfg.R_fixed);
    rep.param("r_fixed", cfg.r_fixed);
    rep.param("slope_tol", cfg.slope_tol);

    SpectralCache local;
    SpectralCache* c = cache ? cache : &local;
    Curve curve;
    curve.name = "parts";
    curve.columns = {"alpha", "lambda", "r", "R", "boundary", "outer", "total"};
    for (double alpha : cfg.alphas) {
        for (double lambda : cfg.lambdas) {
            const auto el = c->get(alpha, lambda, cfg.grid);
            const auto e0 = c->get(alpha, 0.0, cfg.grid);
            const Grid1D& grid = el->op.grid;
            const Eigen::VectorXd u = heat_apply(el->dec, cfg.t, dilate(grid, cfg.bump_scale).values);
            const double p = el->op.params.p;

            std::vector<double> bnd;
            for (double r : cfg.r_values) {
                const CommutatorParts parts = commutator_parts(e0->op, u, r, cfg.R_fixed);
                bnd.push_back(parts.boundary);
                curve.rows.push_back({alpha, lambda, r, cfg.R_fixed, parts.boundary, parts.outer, parts.total});
            }
            std::vector<double> out;
            for (double R : cfg.R_values) {
                const CommutatorParts parts = commutator_parts(e0->op, u, cfg.r_fixed, R);
                out.push_back(parts.outer);
                curve.rows.push_back({alpha, lambda, cfg.r_fixed, R, parts.boundary, parts.outer, parts.total});
            }
            const double r_slope = loglog_slope(cfg.r_values, bnd);
            const double R_slope = loglog_slope(cfg.R_values, out);
            const double r_target = p - alpha + 0.5;
            const double R_target = -alpha - 0.5;
            const std::string t = tag2("alpha", alpha, "lambda", lambda);
            rep.measure("r_slope" + t, r_slope);
            rep.measure("r_target" + t, r_target);
            rep.measure("r_slope_dev" + t, std::abs(r_slope - r_target));
            rep.measure("R_slope" + t, R_slope);
            rep.measure("R_target" + t, R_target);
            rep.measure("R_slope_dev" + t, std::abs(R_slope - R_target));
            rep.require_below("r_slope_dev" + t, cfg.slope_tol);
            rep.require_below("R_slope_dev" + t, cfg.slope_tol);
        }
    }
    rep.curves.push_back(curve);
    rep.note("u = exp(-t L_lambda) applied to a dilated bump; commutators are taken with the lambda = 0 operator");
    for (double alpha : cfg.alphas)
        if (alpha == 2.0)
            rep.note("alpha = 2: the commutator with chi is local and sees only the Gaussian tail of u, so no "
                     "power law in R is expected");
    rep.key = rep.bounds.empty() ? "" : rep.bounds.front().key;
    rep.finalize();
    return rep;
}

} // namespace hardy
