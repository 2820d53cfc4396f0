#include "hardy/assembly.hpp"
#include "hardy/commutator.hpp"
#include "hardy/errors.hpp"
#include "hardy/serialize.hpp"
#include "hardy/spectral.hpp"
#include "hardy/specfun.hpp"
#include "hardy/testfunctions.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace hardy;

namespace {

Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) u[i] = g(rng);
    return u;
}

// Full-line form of a piecewise linear u with slope jumps kappa_j at the
// vertices v_j, from |xi|^alpha |u^|^2 = |xi|^{alpha-4} |(u'')^|^2.
double fourier_form(double alpha, const Grid1D& grid, const Eigen::VectorXd& u) {
    const int N = grid.N;
    std::vector<double> val(N + 1, 0.0);
    for (int i = 0; i < grid.size(); ++i) val[i + 1] = u[i];
    std::vector<double> kappa(N + 1, 0.0);
    double prev = 0.0;
    for (int c = 0; c <= N; ++c) {
        const double slope = c < N ? (val[c + 1] - val[c]) / grid.cell_width(c) : 0.0;
        kappa[c] = slope - prev;
        prev = slope;
    }
    double sum = 0.0;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            if (i == j) continue;
            sum += kappa[i] * kappa[j] * std::pow(std::abs(grid.vertices[i] - grid.vertices[j]), 3.0 - alpha);
        }
    return std::tgamma(alpha - 3.0) * cos_pi(0.5 * (alpha - 3.0)) * sum / kPi;
}

} // namespace

TEST(Grid, GradedVertices) {
    const Grid1D g = build_grid(10.0, 40, 2.0);
    ASSERT_EQ(g.vertices.size(), 41u);
    ASSERT_EQ(g.size(), 39);
    EXPECT_DOUBLE_EQ(g.vertices.front(), 0.0);
    EXPECT_DOUBLE_EQ(g.vertices.back(), 10.0);
    EXPECT_NEAR(g.nodes[0], 10.0 / 1600.0, 1e-15);
    double wsum = 0.0;
    for (double w : g.weights) wsum += w;
    EXPECT_NEAR(wsum, 0.5 * (g.vertices[40] + g.vertices[39] - g.vertices[1]), 1e-12);
    EXPECT_EQ(first_node_at_or_above(g, 0.0), 0);
    EXPECT_EQ(first_node_at_or_above(g, 11.0), g.size());
}

TEST(Assembly, LocalCaseHasExactSineSpectrum) {
    // Uniform mesh, lumped mass: mu_k = (4/h^2) sin^2(k pi / 2N).
    const int N = 64;
    const double X = 2.0, h = X / N;
    const auto dec = eigendecompose(assemble_form(2.0, 0.0, build_grid(X, N, 1.0)));
    for (int k = 1; k < N; ++k) {
        const double s = std::sin(k * kPi / (2.0 * N));
        EXPECT_NEAR(dec.eigenvalues[k - 1], 4.0 / (h * h) * s * s, 1e-9 * (1.0 + dec.eigenvalues[k - 1])) << k;
    }
}

TEST(Assembly, FullLineFormMatchesFourierFormula) {
    for (double alpha : {0.3, 0.5, 1.5, 1.8}) {
        const Grid1D grid = build_grid(3.0, 16, 1.5);
        AssemblyOptions opts;
        opts.full_line = true;
        const DiscreteOperator op = assemble_form(alpha, 0.0, grid, opts);
        for (std::uint64_t seed : {1u, 2u, 3u}) {
            const Eigen::VectorXd u = random_vector(grid.size(), seed + 10 * static_cast<std::uint64_t>(alpha * 10));
            const double ref = fourier_form(alpha, grid, u);
            EXPECT_NEAR(form_value(op.stiffness, u), ref, 1e-9 * std::abs(ref)) << alpha;
        }
    }
}

TEST(Assembly, FullLineDominatesRegional) {
    const Grid1D grid = build_grid(5.0, 30, 2.0);
    AssemblyOptions opts;
    opts.full_line = true;
    for (double alpha : {0.5, 1.5}) {
        const auto reg = assemble_free_stiffness(alpha, grid);
        const auto full = assemble_free_stiffness(alpha, grid, opts);
        const Eigen::VectorXd u = random_vector(grid.size(), 4);
        EXPECT_GT(form_value(full, u), form_value(reg, u));
        EXPECT_TRUE(reg.isApprox(reg.transpose(), 0.0));
    }
}

TEST(Assembly, CouplingAddsLumpedHardyWeight) {
    const Grid1D grid = build_grid(10.0, 50, 2.0);
    const DiscreteOperator op = assemble_form(1.5, 0.7, grid);
    const Eigen::VectorXd w = lumped_hardy_weight(1.5, grid);
    for (int i = 0; i < grid.size(); ++i)
        EXPECT_NEAR(w[i], grid.weights[i] * std::pow(grid.nodes[i], -1.5), 1e-12 * w[i]);
    const Eigen::MatrixXd diff = op.stiffness - op.free_stiffness;
    EXPECT_NEAR((diff - Eigen::MatrixXd(0.7 * w.asDiagonal())).norm(), 0.0, 1e-10 * diff.norm());
    EXPECT_TRUE(op.mass.isApprox(Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), grid.size())));
}

TEST(Assembly, AdjacentIntegralsSymmetry) {
    const auto a = adjacent_integrals(1.3, 0.2, 0.5);
    const auto b = adjacent_integrals(1.3, 0.5, 0.2);
    EXPECT_NEAR(a.i20, b.i02, 1e-13);
    EXPECT_NEAR(a.i11, b.i11, 1e-13);
}

TEST(Assembly, RejectsBadInput) {
    // Below the critical coupling assembly still succeeds; optimality probes need it.
    EXPECT_NO_THROW(assemble_form(1.5, lambda_star(1.5) - 0.01, build_grid(10.0, 20, 2.0)));
    AssemblyOptions opts;
    opts.full_line = true;
    EXPECT_THROW(assemble_form(2.0, 0.0, build_grid(10.0, 20, 2.0), opts), ParameterError);
    EXPECT_THROW(build_grid(-1.0, 20, 2.0), ParameterError);
}

class SpectralTest : public ::testing::Test {
protected:
    void SetUp() override {
        grid = build_grid(10.0, 120, 2.0);
        op = assemble_form(1.5, 0.4, grid);
        dec = eigendecompose(op);
        u = boundary_bump(grid, 0.05, 0.5).values;
    }
    Grid1D grid;
    DiscreteOperator op;
    SpectralDecomposition dec;
    Eigen::VectorXd u;
};

TEST_F(SpectralTest, OrthonormalAndAccurate) {
    EXPECT_LT(dec.orthonormality_error, 1e-10);
    EXPECT_LT(dec.max_residual, 1e-10);
    for (int k = 1; k < dec.size(); ++k) EXPECT_LE(dec.eigenvalues[k - 1], dec.eigenvalues[k]);
    EXPECT_GT(dec.eigenvalues[0], 0.0);
}

TEST_F(SpectralTest, FormAndOperatorIdentities) {
    EXPECT_NEAR(sobolev_norm(dec, 0.0, u), mass_norm(op.mass, u), 1e-12 * mass_norm(op.mass, u));
    const double n1 = sobolev_norm(dec, 1.0, u);
    EXPECT_NEAR(n1 * n1, form_value(op.stiffness, u), 1e-10 * n1 * n1);
    const Eigen::VectorXd lu = (op.stiffness * u).cwiseQuotient(op.mass);
    EXPECT_NEAR(sobolev_norm(dec, 2.0, u), mass_norm(op.mass, lu), 1e-10 * mass_norm(op.mass, lu));
}

TEST_F(SpectralTest, FunctionalCalculusComposes) {
    const Eigen::VectorXd a = heat_apply(dec, 0.3, heat_apply(dec, 0.2, u));
    const Eigen::VectorXd b = heat_apply(dec, 0.5, u);
    EXPECT_LT((a - b).norm(), 1e-12 * b.norm());
    const Eigen::VectorXd back = power_apply(dec, -0.8, power_apply(dec, 0.8, u));
    EXPECT_LT((back - u).norm(), 1e-9 * u.norm());
    EXPECT_LT((heat_apply(dec, 0.0, u) - u).norm(), 1e-12 * u.norm());
}

TEST_F(SpectralTest, KernelEntries) {
    const Eigen::MatrixXd kinv = op.stiffness.inverse();
    for (int i : {0, 7, 60})
        for (int j : {3, 60, 110}) {
            EXPECT_NEAR(riesz_kernel_entry(dec, 2.0, i, j), kinv(i, j), 1e-8 * std::abs(kinv(i, j)));
            const double kij = riesz_kernel_entry(dec, 1.0, i, j);
            EXPECT_NEAR(kij, riesz_kernel_entry(dec, 1.0, j, i), 1e-13 * std::abs(kij));
            Eigen::VectorXd e = Eigen::VectorXd::Zero(grid.size());
            e[j] = 1.0;
            const double via_apply = heat_apply(dec, 0.1, e)[i] / op.mass[j];
            EXPECT_NEAR(heat_kernel_entry(dec, 0.1, i, j), via_apply, 1e-10 * (1.0 + std::abs(via_apply)));
        }
}

TEST(Spectral, SobolevNormIsSpectralSum) {
    const Grid1D grid = build_grid(10.0, 60, 2.0);
    const auto dec = eigendecompose(assemble_form(2.0, 1.0, grid));
    const Eigen::VectorXd u = dilate(grid, 1.0).values;
    const Eigen::VectorXd c = spectral_coefficients(dec, u);
    for (double s : {0.3, 1.1, 1.7}) {
        double sum = 0.0;
        for (int k = 0; k < dec.size(); ++k) sum += std::pow(dec.eigenvalues[k], s) * c[k] * c[k];
        EXPECT_NEAR(sobolev_norm(dec, s, u), std::sqrt(sum), 1e-12 * std::sqrt(sum));
    }
    EXPECT_THROW(sobolev_norm(dec, 2.5, u), ParameterError);
}

TEST(HardyMinimum, AboveCriticalAndDecreasing) {
    for (double alpha : {1.5, 2.0}) {
        const double a = hardy_quotient_min(alpha, build_grid(10.0, 100, 2.0));
        const double b = hardy_quotient_min(alpha, build_grid(10.0, 200, 2.0));
        EXPECT_GT(b, -lambda_star(alpha));
        EXPECT_LT(b, a);
    }
}

TEST(HardyMinimum, ConvergenceTable) {
    const auto rows = hardy_convergence_table(2.0, 10.0, 2.0, {50, 100, 200});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_TRUE(std::isnan(rows[0].extrapolated));
    for (const auto& r : rows) {
        EXPECT_DOUBLE_EQ(r.target, 0.25);
        EXPECT_NEAR(r.rel_error, std::abs(r.nu - 0.25) / 0.25, 1e-14);
    }
}

TEST(TestFunctions, Shapes) {
    EXPECT_EQ(smoothstep(0.0), 0.0);
    EXPECT_EQ(smoothstep(1.0), 1.0);
    EXPECT_NEAR(smoothstep(0.5), 0.5, 1e-15);
    EXPECT_EQ(bump(0.5), 0.0);
    EXPECT_EQ(bump(2.0), 0.0);
    EXPECT_NEAR(bump(1.25), 1.0, 1e-15);
    EXPECT_EQ(boundary_envelope(0.3), 1.0);
    EXPECT_EQ(boundary_envelope(2.5), 0.0);
    EXPECT_EQ(theta_cutoff(0.05, 0.1), 0.0);
    EXPECT_EQ(theta_cutoff(0.25, 0.1), 1.0);
    EXPECT_EQ(chi_cutoff(1.0, 1.0), 1.0);
    EXPECT_EQ(chi_cutoff(2.0, 1.0), 0.0);
}

TEST(TestFunctions, BoundaryBumpExponent) {
    // Below eps the bump behaves like x^{q + 0.51}.
    const double eps = 0.1, q = 0.3;
    const double a = boundary_bump_at(1e-6, eps, q);
    const double b = boundary_bump_at(2e-6, eps, q);
    EXPECT_NEAR(std::log2(b / a), q + kBoundaryBumpMargin, 1e-6);
    const Grid1D grid = build_grid(10.0, 100, 2.0);
    EXPECT_THROW(boundary_bump(grid, 1e-4, q), ParameterError);
    EXPECT_NO_THROW(boundary_bump(grid, 0.01, q));
}

TEST(Commutator, VanishesForConstantCutoffRegion) {
    // chi theta = 1 on the support of u leaves only the nonlocal tail.
    const Grid1D grid = build_grid(10.0, 200, 2.0);
    const DiscreteOperator op = assemble_form(2.0, 0.0, grid);
    const Eigen::VectorXd u = dilate(grid, 0.5).values;  // support (0.25, 1)
    const CommutatorParts parts = commutator_parts(op, u, 0.05, 2.0);
    EXPECT_LT(parts.total, 1e-12);
    EXPECT_NEAR(commutator_norm(op, u, 0.05, 2.0), parts.total, 1e-15);
}

TEST(Serialize, OperatorRoundTrip) {
    const DiscreteOperator op = assemble_form(1.5, 0.3, build_grid(10.0, 40, 2.0));
    std::stringstream ss;
    write_operator_csv(ss, op);
    const DiscreteOperator back = read_operator_csv(ss);
    EXPECT_EQ(back.stiffness, op.stiffness);
    EXPECT_EQ(back.mass, op.mass);
    EXPECT_EQ(back.params.lambda, 0.3);
}

TEST(Serialize, SpectrumRoundTrip) {
    const DiscreteOperator op = assemble_form(2.0, 1.0, build_grid(10.0, 30, 2.0));
    const auto dec = eigendecompose(op);
    std::stringstream ss;
    write_spectrum_csv(ss, header_of(op), dec, true);
    const SpectrumFile f = read_spectrum_csv(ss);
    EXPECT_EQ(f.header.N, 30);
    EXPECT_EQ(f.eigenvalues, dec.eigenvalues);
    EXPECT_EQ(f.eigenvectors, dec.eigenvectors);
}

TEST(Serialize, DoublesRoundTripExactly) {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, kPi})
        EXPECT_EQ(std::stod(format_double(v)), v);
    EXPECT_EQ(format_double(std::nan("")), "nan");
}

TEST(Serialize, CsvTable) {
    std::istringstream in("# a comment\nx,y\n1,2.5\n3,-4e-3\n");
    const CsvTable t = read_csv(in);
    ASSERT_EQ(t.comments.size(), 1u);
    EXPECT_EQ(t.column("y"), 1);
    EXPECT_EQ(t.column("z"), -1);
    EXPECT_DOUBLE_EQ(t.number(1, 1), -4e-3);
    std::ostringstream out;
    write_csv(out, t);
    std::istringstream again(out.str());
    const CsvTable t2 = read_csv(again);
    EXPECT_EQ(t2.rows, t.rows);
    EXPECT_EQ(t2.columns, t.columns);
}
