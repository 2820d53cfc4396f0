#include "hardy/spectral.hpp"

#include "hardy/errors.hpp"

#include <cblas.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace hardy {

namespace {

void require_square(const Eigen::MatrixXd& K, const Eigen::VectorXd& m, int cap) {
    const Eigen::Index n = K.rows();
    if (K.cols() != n || m.size() != n) throw ParameterError("eigendecompose: dimension mismatch");
    if (n == 0) throw ParameterError("eigendecompose: empty operator");
    if (n > cap)
        throw ParameterError("eigendecompose: size " + std::to_string(n) + " exceeds the dense-solver cap " +
                             std::to_string(cap));
    if ((m.array() <= 0.0).any()) throw ParameterError("eigendecompose: mass must be positive");
}

bool is_integer(double v) { return std::floor(v) == v; }

// Scales coefficients c_k by f(mu_k) and maps back: V diag(f) c.
template <class F>
Eigen::VectorXd apply_function(const SpectralDecomposition& dec, const Eigen::VectorXd& u, F f) {
    Eigen::VectorXd c = spectral_coefficients(dec, u);
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= f(dec.eigenvalues[k]);
    return dec.eigenvectors * c;
}

void check_power(const SpectralDecomposition& dec, double exponent, const char* what) {
    const double mu_min = dec.eigenvalues[0];
    if (mu_min < 0.0 && !is_integer(exponent))
        throw DomainError(std::string(what) + ": negative eigenvalue " + std::to_string(mu_min) +
                          " with a fractional power");
    if (mu_min <= 0.0 && exponent < 0.0)
        throw DomainError(std::string(what) + ": nonpositive eigenvalue with a negative power");
}

} // namespace

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& mass, int cap) {
    require_square(stiffness, mass, cap);
    const int n = static_cast<int>(stiffness.rows());
    const Eigen::VectorXd dinv = mass.array().rsqrt();

    Eigen::MatrixXd a = dinv.asDiagonal() * stiffness * dinv.asDiagonal();
    Eigen::VectorXd w(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, a.data(), n, w.data());
    if (info != 0) throw NumericalError("eigendecompose: dsyevd failed with info = " + std::to_string(info));

    SpectralDecomposition dec;
    dec.eigenvalues = w;
    dec.mass = mass;
    dec.eigenvectors = dinv.asDiagonal() * a;

    // Residuals K V - M V diag(mu), column by column.
    Eigen::MatrixXd kv(n, n);
    cblas_dgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, n, n, n, 1.0, stiffness.data(), n,
                dec.eigenvectors.data(), n, 0.0, kv.data(), n);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const double scale = kv.col(k).norm();
        const double res = (kv.col(k) - w[k] * mass.cwiseProduct(dec.eigenvectors.col(k))).norm();
        if (scale > 0.0) worst = std::max(worst, res / scale);
        else worst = std::max(worst, res);
    }
    dec.max_residual = worst;

    Eigen::MatrixXd b = mass.array().sqrt().matrix().asDiagonal() * dec.eigenvectors;
    Eigen::MatrixXd gram(n, n);
    cblas_dsyrk(CblasColMajor, CblasUpper, CblasTrans, n, n, 1.0, b.data(), n, 0.0, gram.data(), n);
    double orth = 0.0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i <= j; ++i) orth = std::max(orth, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
    dec.orthonormality_error = orth;
    return dec;
}

SpectralDecomposition eigendecompose(const DiscreteOperator& op, int cap) {
    return eigendecompose(op.stiffness, op.mass, cap);
}

double smallest_generalized_eigenvalue(const Eigen::MatrixXd& stiffness, const Eigen::VectorXd& weight) {
    require_square(stiffness, weight, kDenseSolverCap);
    const int n = static_cast<int>(stiffness.rows());
    const Eigen::VectorXd dinv = weight.array().rsqrt();
    Eigen::MatrixXd a = dinv.asDiagonal() * stiffness * dinv.asDiagonal();
    lapack_int found = 0;
    double w[1] = {0.0};
    double z[1] = {0.0};
    lapack_int isuppz[2] = {0, 0};
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1, 1, 0.0, &found, w, z, 1, isuppz);
    if (info != 0 || found != 1)
        throw NumericalError("smallest_generalized_eigenvalue: dsyevr failed with info = " + std::to_string(info));
    return w[0];
}

Eigen::VectorXd spectral_coefficients(const SpectralDecomposition& dec, const Eigen::VectorXd& u) {
    if (u.size() != dec.mass.size()) throw ParameterError("spectral calculus: vector size mismatch");
    return dec.eigenvectors.transpose() * dec.mass.cwiseProduct(u);
}

double mass_norm(const Eigen::VectorXd& mass, const Eigen::VectorXd& u) {
    return std::sqrt(mass.dot(u.cwiseProduct(u)));
}

double sobolev_norm(const SpectralDecomposition& dec, double s, const Eigen::VectorXd& u) {
    if (!(s >= 0.0 && s <= 2.0)) throw ParameterError("sobolev_norm: s must lie in [0, 2]");
    if (s == 0.0) return mass_norm(dec.mass, u);
    check_power(dec, s, "sobolev_norm");
    const Eigen::VectorXd c = spectral_coefficients(dec, u);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
        const double mu = dec.eigenvalues[k];
        sum += (s == 2.0 ? mu * mu : std::pow(std::max(mu, 0.0), s)) * c[k] * c[k];
    }
    return std::sqrt(sum);
}

Eigen::VectorXd power_apply(const SpectralDecomposition& dec, double s, const Eigen::VectorXd& u) {
    if (!std::isfinite(s)) throw ParameterError("power_apply: s must be finite");
    if (s == 0.0) return u;
    const double e = 0.5 * s;
    check_power(dec, e, "power_apply");
    return apply_function(dec, u, [e](double mu) { return std::pow(mu, e); });
}

Eigen::VectorXd heat_apply(const SpectralDecomposition& dec, double t, const Eigen::VectorXd& u) {
    if (!(t >= 0.0)) throw ParameterError("heat_apply: t must be nonnegative");
    if (t == 0.0) return u;
    return apply_function(dec, u, [t](double mu) { return std::exp(-t * mu); });
}

double riesz_kernel_entry(const SpectralDecomposition& dec, double s, int i, int j) {
    if (!(s > 0.0)) throw ParameterError("riesz_kernel_entry: s must be positive");
    const int n = dec.size();
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParameterError("riesz_kernel_entry: index out of range");
    check_power(dec, -0.5 * s, "riesz_kernel_entry");
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        sum += std::pow(dec.eigenvalues[k], -0.5 * s) * dec.eigenvectors(i, k) * dec.eigenvectors(j, k);
    return sum;
}

double heat_kernel_entry(const SpectralDecomposition& dec, double t, int i, int j) {
    if (!(t > 0.0)) throw ParameterError("heat_kernel_entry: t must be positive");
    const int n = dec.size();
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParameterError("heat_kernel_entry: index out of range");
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        sum += std::exp(-t * dec.eigenvalues[k]) * dec.eigenvectors(i, k) * dec.eigenvectors(j, k);
    return sum;
}

double hardy_quotient_min(double alpha, const Grid1D& grid) {
    const Eigen::MatrixXd k0 = assemble_free_stiffness(alpha, grid);
    return smallest_generalized_eigenvalue(k0, lumped_hardy_weight(alpha, grid));
}

std::vector<HardyConvergenceRow> hardy_convergence_table(double alpha, double X, double g,
                                                         const std::vector<int>& Ns) {
    const double target = std::abs(lambda_star(alpha));
    std::vector<HardyConvergenceRow> rows;
    for (int N : Ns) {
        HardyConvergenceRow row;
        row.N = N;
        row.nu = hardy_quotient_min(alpha, build_grid(X, N, g));
        row.target = target;
        row.rel_error = target > 0.0 ? std::abs(row.nu - target) / target : std::abs(row.nu);
        rows.push_back(row);
    }
    // nu(N) ~ nu_inf + b / ln^2(X / h_min) from consecutive rows.
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double l0 = std::log(std::pow(static_cast<double>(rows[k - 1].N), g));
        const double l1 = std::log(std::pow(static_cast<double>(rows[k].N), g));
        const double a0 = 1.0 / (l0 * l0);
        const double a1 = 1.0 / (l1 * l1);
        rows[k].extrapolated = (rows[k].nu * a0 - rows[k - 1].nu * a1) / (a0 - a1);
    }
    return rows;
}

} // namespace hardy
