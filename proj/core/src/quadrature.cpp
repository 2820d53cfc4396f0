#include "hardy/quadrature.hpp"

#include "hardy/errors.hpp"
#include "hardy/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace hardy::quad {

namespace {

GaussRule build_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

} // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1 || n > 256) throw ParameterError("gauss_legendre: order must lie in [1, 256]");
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
    return it->second;
}

double gauss(const Fn& f, double a, double b, int n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

double tanh_sinh(const Fn& f, double a, double b, double rel_tol, double* err) {
    if (a == b) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
    if (err) *err = error;
    return value;
}

double tanh_sinh(const FnComplement& f, double a, double b, double rel_tol, double* err) {
    if (a == b) return 0.0;
    thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
    double error = 0.0;
    double l1 = 0.0;
    auto g = [&f](double x, double xc) { return f(x, xc); };
    const double value = integrator.integrate(g, a, b, rel_tol, &error, &l1);
    if (err) *err = error;
    return value;
}

double kronrod(const Fn& f, double a, double b, double rel_tol, double* err, unsigned max_depth) {
    if (a == b) return 0.0;
    double error = 0.0;
    double l1 = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, rel_tol, &error, &l1);
    if (err) *err = error;
    return value;
}

double exp_sinh(const Fn& f, double a, double b, double rel_tol, double* err) {
    thread_local boost::math::quadrature::exp_sinh<double> integrator(12);
    double error = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(f, a, b, rel_tol, &error, &l1);
    if (err) *err = error;
    return value;
}

double kronrod_pieces(const Fn& f, std::vector<double> breaks, double rel_tol, double* err) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double e = 0.0;
        total += kronrod(f, breaks[i], breaks[i + 1], rel_tol, &e);
        total_err += e;
    }
    if (err) *err = total_err;
    return total;
}

double log_kronrod(const Fn& f, double a, double b, double rel_tol, double* err) {
    if (!(a > 0.0) || !(b > a)) throw ParameterError("log_kronrod: need 0 < a < b");
    auto g = [&f](double v) {
        const double x = std::exp(v);
        return f(x) * x;
    };
    return kronrod(g, std::log(a), std::log(b), rel_tol, err);
}

} // namespace hardy::quad
