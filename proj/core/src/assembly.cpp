#include "hardy/assembly.hpp"

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace hardy {

namespace {

void check_mesh(const Grid1D& grid, double max_ratio) {
    if (grid.size() < 1 || static_cast<int>(grid.vertices.size()) != grid.N + 1)
        throw ParameterError("assemble_form: malformed grid");
    for (int c = 0; c + 1 < grid.N; ++c) {
        const double a = grid.cell_width(c);
        const double b = grid.cell_width(c + 1);
        if (!(a > 0.0) || !(b > 0.0)) throw ParameterError("assemble_form: degenerate cell");
        const double ratio = std::max(a / b, b / a);
        if (ratio > max_ratio)
            throw ParameterError("assemble_form: neighbouring cells " + std::to_string(c) + ", " +
                                 std::to_string(c + 1) + " differ in width by a factor " + std::to_string(ratio) +
                                 "; refine the mesh");
    }
}

// F_n(rho) = int_0^rho v^n (1 + v)^{-1-alpha} dv.
double duhamel_f(double alpha, int n, double rho) {
    const auto& rule = quad::gauss_legendre(32);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = 0.5 * rho * (rule.nodes[i] + 1.0);
        sum += rule.weights[i] * std::pow(v, n) * std::pow(1.0 + v, -1.0 - alpha);
    }
    return 0.5 * rho * sum;
}

// Gauss points on one cell with the values of its two hats.
struct CellRule {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> left;   // hat of the left vertex
    std::vector<double> right;  // hat of the right vertex
};

CellRule cell_rule(double a, double b, int n) {
    const auto& rule = quad::gauss_legendre(n);
    CellRule cr;
    const double h = b - a;
    for (int i = 0; i < n; ++i) {
        const double t = 0.5 * (rule.nodes[i] + 1.0);
        cr.x.push_back(a + h * t);
        cr.w.push_back(0.5 * h * rule.weights[i]);
        cr.left.push_back(1.0 - t);
        cr.right.push_back(t);
    }
    return cr;
}

constexpr std::array<int, 5> kFarOrders = {2, 3, 4, 7, 12};

int far_order_slot(double q) {
    if (q >= 0.5) return 4;
    if (q >= 0.25) return 3;
    if (q >= 0.1) return 2;
    if (q >= 0.01) return 1;
    return 0;
}

// Adds value to K at vertex pair (a, b), skipping the boundary vertices.
inline void add_vertex(Eigen::MatrixXd& K, int N, int a, int b, double value) {
    if (a <= 0 || a >= N || b <= 0 || b >= N) return;
    K(a - 1, b - 1) += value;
}

void assemble_laplacian(const Grid1D& grid, Eigen::MatrixXd& K) {
    const int N = grid.N;
    for (int c = 0; c < N; ++c) {
        const double k = 1.0 / grid.cell_width(c);
        add_vertex(K, N, c, c, k);
        add_vertex(K, N, c + 1, c + 1, k);
        add_vertex(K, N, c, c + 1, -k);
        add_vertex(K, N, c + 1, c, -k);
    }
}

void assemble_regional(double alpha, const Grid1D& grid, const AssemblyOptions& opts, Eigen::MatrixXd& K) {
    const int N = grid.N;
    const auto& v = grid.vertices;
    const double A = normalization_A(1, alpha);

    // Same-cell blocks.
    for (int c = 0; c < N; ++c) {
        const double h = grid.cell_width(c);
        const double e = A * std::pow(h, 1.0 - alpha) / ((2.0 - alpha) * (3.0 - alpha));
        add_vertex(K, N, c, c, e);
        add_vertex(K, N, c + 1, c + 1, e);
        add_vertex(K, N, c, c + 1, -e);
        add_vertex(K, N, c + 1, c, -e);
    }

    // Adjacent cells c, c+1 sharing vertex c+1.
    for (int c = 0; c + 1 < N; ++c) {
        const double h1 = grid.cell_width(c);
        const double h2 = grid.cell_width(c + 1);
        const AdjacentIntegrals I = adjacent_integrals(alpha, h1, h2);
        const std::array<double, 3> g1 = {-1.0 / h1, 1.0 / h1, 0.0};
        const std::array<double, 3> g2 = {0.0, -1.0 / h2, 1.0 / h2};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                const double val = I.i20 * g1[a] * g1[b] + I.i11 * (g1[a] * g2[b] + g2[a] * g1[b]) +
                                   I.i02 * g2[a] * g2[b];
                add_vertex(K, N, c + a, c + b, A * val);
            }
        }
    }

    // Diagonal kill terms: u(x)^2 times the kernel mass outside the near range.
    for (int c = 0; c < N; ++c) {
        const double h = grid.cell_width(c);
        const double a_c = v[std::max(c - 1, 0)];
        const double b_c = v[std::min(c + 2, N)];
        const bool exact_right = (c == N - 1);
        const bool exact_left = opts.full_line && c == 0;
        auto kappa = [&](double x) {
            double val = 0.0;
            if (a_c > 0.0) {
                val += std::pow(x - a_c, -alpha);
                if (!opts.full_line) val -= std::pow(x, -alpha);
            } else if (opts.full_line && !exact_left) {
                val += std::pow(x, -alpha);
            }
            if (!exact_right) val += std::pow(b_c - x, -alpha);
            return val / alpha;
        };
        const CellRule cr = cell_rule(v[c], v[c + 1], 16);
        double ll = 0.0;
        double lr = 0.0;
        double rr = 0.0;
        for (std::size_t i = 0; i < cr.x.size(); ++i) {
            const double kv = cr.w[i] * kappa(cr.x[i]);
            ll += kv * cr.left[i] * cr.left[i];
            lr += kv * cr.left[i] * cr.right[i];
            rr += kv * cr.right[i] * cr.right[i];
        }
        // int_0^h (s/h)^2 s^{-alpha} ds / alpha for the hat vanishing at the
        // singular endpoint.
        const double endpoint = std::pow(h, 1.0 - alpha) / (alpha * (3.0 - alpha));
        if (exact_right) ll += endpoint;
        if (exact_left) rr += endpoint;
        add_vertex(K, N, c, c, A * ll);
        add_vertex(K, N, c, c + 1, A * lr);
        add_vertex(K, N, c + 1, c, A * lr);
        add_vertex(K, N, c + 1, c + 1, A * rr);
    }

    // Far cell pairs by tensor Gauss rules.
    std::array<std::vector<CellRule>, kFarOrders.size()> rules;
    for (std::size_t s = 0; s < kFarOrders.size(); ++s) {
        rules[s].reserve(N);
        for (int c = 0; c < N; ++c) rules[s].push_back(cell_rule(v[c], v[c + 1], kFarOrders[s]));
    }
    const double expo = -1.0 - alpha;
    for (int c = 0; c < N; ++c) {
        const double hc = grid.cell_width(c);
        for (int d = c + 2; d < N; ++d) {
            const double hd = grid.cell_width(d);
            const double gap = v[d] - v[c + 1];
            const int slot = far_order_slot(std::max(hc, hd) / gap);
            const CellRule& rc = rules[slot][c];
            const CellRule& rd = rules[slot][d];
            double g_ll = 0.0;
            double g_lr = 0.0;
            double g_rl = 0.0;
            double g_rr = 0.0;
            for (std::size_t i = 0; i < rc.x.size(); ++i) {
                double sl = 0.0;
                double sr = 0.0;
                for (std::size_t j = 0; j < rd.x.size(); ++j) {
                    const double k = rd.w[j] * std::exp(expo * std::log(rd.x[j] - rc.x[i]));
                    sl += k * rd.left[j];
                    sr += k * rd.right[j];
                }
                const double wl = rc.w[i] * rc.left[i];
                const double wr = rc.w[i] * rc.right[i];
                g_ll += wl * sl;
                g_lr += wl * sr;
                g_rl += wr * sl;
                g_rr += wr * sr;
            }
            const std::array<int, 2> ia = {c, c + 1};
            const std::array<int, 2> ib = {d, d + 1};
            const double g[2][2] = {{g_ll, g_lr}, {g_rl, g_rr}};
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    add_vertex(K, N, ia[a], ib[b], -A * g[a][b]);
                    add_vertex(K, N, ib[b], ia[a], -A * g[a][b]);
                }
            }
        }
    }
}

} // namespace

AdjacentIntegrals adjacent_integrals(double alpha, double h1, double h2) {
    const double rho = h2 / h1;
    const double e = 3.0 - alpha;
    const double a = std::pow(h1, e);
    const double b = std::pow(h2, e);
    AdjacentIntegrals I;
    I.i20 = (a * duhamel_f(alpha, 0, rho) + b * duhamel_f(alpha, 2, 1.0 / rho)) / e;
    I.i11 = (a * duhamel_f(alpha, 1, rho) + b * duhamel_f(alpha, 1, 1.0 / rho)) / e;
    I.i02 = (a * duhamel_f(alpha, 2, rho) + b * duhamel_f(alpha, 0, 1.0 / rho)) / e;
    return I;
}

Eigen::VectorXd lumped_hardy_weight(double alpha, const Grid1D& grid) {
    Eigen::VectorXd w(grid.size());
    for (int i = 0; i < grid.size(); ++i) w[i] = grid.weights[i] * std::pow(grid.nodes[i], -alpha);
    return w;
}

Eigen::MatrixXd assemble_free_stiffness(double alpha, const Grid1D& grid, const AssemblyOptions& opts) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("assemble_form: alpha must lie in (0,2]");
    check_mesh(grid, opts.max_width_ratio);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(grid.size(), grid.size());
    if (alpha == 2.0) {
        if (opts.full_line) throw ParameterError("assemble_form: the full-line option needs alpha < 2");
        assemble_laplacian(grid, K);
    } else {
        assemble_regional(alpha, grid, opts, K);
    }
    // Remove rounding asymmetry from the two-sided accumulation.
    K = 0.5 * (K + K.transpose()).eval();
    return K;
}

DiscreteOperator assemble_form(double alpha, double lambda, const Grid1D& grid, const AssemblyOptions& opts) {
    if (!std::isfinite(lambda)) throw DomainError("assemble_form: lambda must be finite");
    DiscreteOperator op;
    op.grid = grid;
    const double ls = lambda_star(alpha);
    if (lambda >= ls - kLambdaStarSlack) {
        op.params = make_params(1, alpha, lambda);
    } else {
        op.params.d = 1;
        op.params.alpha = alpha;
        op.params.lambda = lambda;
        op.params.lambda_star = ls;
        op.params.p = std::numeric_limits<double>::quiet_NaN();
        op.params.lambda_zero = alpha < 2.0 ? lambda_zero(1, alpha) : std::numeric_limits<double>::quiet_NaN();
        op.warnings.push_back("lambda = " + std::to_string(lambda) + " is below lambda* = " + std::to_string(ls) +
                              "; the form is indefinite");
    }
    op.free_stiffness = assemble_free_stiffness(alpha, grid, opts);
    op.hardy_weight = lumped_hardy_weight(alpha, grid);
    op.stiffness = op.free_stiffness;
    op.stiffness.diagonal() += lambda * op.hardy_weight;
    op.mass = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), grid.size());
    return op;
}

double form_value(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& u) { return u.dot(stiffness * u); }

} // namespace hardy
