#pragma once

// Named numerical checks. Each returns a finalized VerificationReport whose
// verdict is derived from the bounds it declares.

#include "hardy/assembly.hpp"
#include "hardy/report.hpp"
#include "hardy/spectral.hpp"
#include "hardy/testfunctions.hpp"

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

namespace hardy {

struct GridSpec {
    int N = 2000;
    double X = 10.0;
    double g = 2.0;

    Grid1D build() const { return build_grid(X, N, g); }
};

// Operators and eigendecompositions shared between checks, keyed by
// (alpha, lambda, N, X, g). Safe to call from several threads; each entry is
// computed once.
class SpectralCache {
public:
    struct Entry {
        DiscreteOperator op;
        SpectralDecomposition dec;
    };

    std::shared_ptr<const Entry> get(double alpha, double lambda, const GridSpec& grid);

private:
    using Key = std::tuple<double, double, int, double, double>;
    std::mutex mutex_;
    std::map<Key, std::shared_future<std::shared_ptr<const Entry>>> entries_;
};

// eps_max 2^{-k} for k = 0, 1, ... while the grid keeps at least three nodes
// below eps, at most max_count values.
std::vector<double> eps_halvings(const Grid1D& grid, double eps_max, int max_count = 64);

// Boundary bumps with boundary exponent q + 0.51 over eps_halvings.
std::vector<TestFunction> boundary_family(const Grid1D& grid, double q, double eps_max, int max_count = 64);

// Slope of the least-squares line through (ln x, ln y).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// ---- coupling layer ----

struct CouplingCheckConfig {
    int points = 1000;
    double tol = 1e-11;
};
// C(2, p) = p(p - 1) and p(2, lambda) = (1 + sqrt(1 + 4 lambda))/2.
VerificationReport check_coupling_exactness(const CouplingCheckConfig& cfg = {});

struct LambdaStarCheckConfig {
    int alpha_points = 40;
    double tol_anchor = 1e-12;
    double tol_grid = 1e-10;
};
VerificationReport check_lambda_star(const LambdaStarCheckConfig& cfg = {});

struct GammaCheckConfig {
    int samples = 200;
    double tol = 1e-7;
    std::uint64_t seed = 1;
};
// A(1, -alpha) gamma_integral(alpha, p) against C(alpha, p).
VerificationReport check_gamma_representation(const GammaCheckConfig& cfg = {});

// ---- kernels ----

struct ExactKernelCheckConfig {
    int grid_points = 10;  // per axis of the (t, r, s) grid on [1e-2, 1e2]
    double tol_images = 1e-12;
    int semigroup_samples = 20;
    double tol_semigroup = 1e-6;
    std::uint64_t seed = 2;
};
// lambda = 0 against the method of images, and the semigroup law.
VerificationReport check_exact_kernel(const ExactKernelCheckConfig& cfg = {});

struct HeatEnvelopeCheckConfig {
    std::vector<double> lambdas = {-0.24, 0.0, 1.0, 5.0};
    int grid_points = 13;  // per axis of (t, x, y) on [1e-2, 1e2]
    double cap = 1e3;      // on k2 / k1
};
VerificationReport check_heat_envelope(const HeatEnvelopeCheckConfig& cfg = {});

struct DifferenceCheckConfig {
    std::vector<double> lambdas = {0.5, 2.0};
    int grid_points = 13;
    double cap = 1e3;
    int duhamel_samples = 5;
    double tol_duhamel = 0.05;
    std::uint64_t seed = 3;
};
VerificationReport check_difference_bound(const DifferenceCheckConfig& cfg = {});

struct MasterIntegralSet {
    double alpha;
    double p;
    double s;
};

struct MasterIntegralCheckConfig {
    // Defaults cover p below, at and above (alpha/2)(1 + s/2) for two alphas,
    // plus alpha = 2.
    std::vector<MasterIntegralSet> sets = {{1.5, 0.5, 0.4},  {1.5, 0.9, 0.4}, {1.5, 1.3, 0.4},
                                           {0.8, 0.2, 0.4},  {0.8, 0.48, 0.4}, {0.8, 0.7, 0.4},
                                           {2.0, 1.0, 0.4}};
    int d = 1;
    double c_exp = 0.25;
    int grid_points = 9;
    double max_aspect = 1e4;  // largest T / S
    double window = 50.0;
};
VerificationReport check_master_integral(const MasterIntegralCheckConfig& cfg = {});

struct RieszCheckConfig {
    std::vector<double> lambdas = {-0.2, 0.0, 1.0};
    double s = 0.5;
    int grid_points = 15;  // per axis on [1e-2, 1e2]
    double cap = 1e2;
};
// alpha = 2, d = 1 time quadrature of the exact kernel against riesz_envelope.
VerificationReport check_riesz_consistency(const RieszCheckConfig& cfg = {});

struct PointwiseCheckConfig {
    double lambda = 1.0;
    double t = 0.5;
    double c_exp = 0.125;
    int grid_points = 60;  // x on [1e-4, 20]
    double cap = 1e3;
};
VerificationReport check_pointwise_bounds(const PointwiseCheckConfig& cfg = {});

// ---- discrete operators ----

struct HardySharpnessCheckConfig {
    std::vector<double> alphas = {0.5, 1.0, 1.5, 2.0};
    std::vector<int> Ns = {250, 500, 1000, 2000};
    double X = 10.0;
    double g = 2.0;
    double rel_tol = 0.05;
    // Used when lambda* = 0, where a relative error is undefined.
    double abs_tol_zero = 0.0125;
};
VerificationReport check_hardy_sharpness(const HardySharpnessCheckConfig& cfg = {});

struct SobolevCheckConfig {
    double alpha = 2.0;
    double lambda = 0.0;
    double s = 1.0;
    GridSpec grid;
    double eps_max = 0.5;
    double cap = 1e3;
    int min_halvings = 4;     // blow-up checks
    int fit_points = 8;       // smallest eps values used in slope fits
    double slope_tol = 0.2;   // generalized-Hardy necessity slope
    double identity_tol = 1e-10;
    // Above the equivalence threshold: grids with the first cell halved
    // refinements times, ending at grid.N.
    int refinements = 5;
    double heat_time = 0.2;
};

// |L_lambda^{s/2} u| / |L_0^{s/2} u| over the family. Below the threshold
// (1 + 2 min(p, (alpha-1)_+))/alpha the spread max/min must stay below cap;
// above it heat-smoothed data must show growth of the ratio (inverse ratio
// when p < (alpha-1)_+) over min_halvings halvings of the first grid cell.
VerificationReport check_equivalence(const SobolevCheckConfig& cfg, SpectralCache* cache = nullptr);
VerificationReport check_equivalence(const SobolevCheckConfig& cfg, const std::vector<TestFunction>& family,
                                     SpectralCache* cache = nullptr);

// |x^{-alpha s/2} u| / |L_lambda^{s/2} u| over the family: bounded below the
// threshold (1 + 2p)/alpha, growing at the weight-integral rate at or above
// it. Runs with s >= 2/alpha below the threshold carry a note.
VerificationReport check_generalized_hardy(const SobolevCheckConfig& cfg, SpectralCache* cache = nullptr);
VerificationReport check_generalized_hardy(const SobolevCheckConfig& cfg, const std::vector<TestFunction>& family,
                                           SpectralCache* cache = nullptr);

// |(L_lambda^{s/2} - L_0^{s/2}) u| / |x^{-alpha s/2} u| over a mixed family
// of boundary bumps, dilations and cutoff products.
VerificationReport check_reversed_hardy(const SobolevCheckConfig& cfg, SpectralCache* cache = nullptr);
VerificationReport check_reversed_hardy(const SobolevCheckConfig& cfg, const std::vector<TestFunction>& family,
                                        SpectralCache* cache = nullptr);

// The default family of check_reversed_hardy: 40 members when the grid
// resolves them.
std::vector<TestFunction> mixed_family(const Grid1D& grid, double q);

// ---- lemmas ----

struct LemmaIntegralCheckConfig {
    std::vector<int> dims = {1, 2};
    std::vector<double> betas = {0.5, 1.0, 2.0};
    int samples = 300;      // per (N, beta) for N = 1
    int samples_2d = 60;    // per (N, beta) for N >= 2
    double median_factor = 10.0;
    std::uint64_t seed = 4;
};
VerificationReport check_lemma_integral(const LemmaIntegralCheckConfig& cfg = {});

// Left side over right side of the two-bump integral inequality in R^N,
// centres |a - b| = dist apart, N in {1, 2}.
double lemma_integral_ratio(int N, double beta, double r, double s, double dist);

struct SchurCheckConfig {
    std::vector<double> alphas = {1.0, 2.0};
    std::vector<double> rs = {0.0, 0.2, 0.4};
    int grid_points = 25;  // x on [1e-3, 1e3]
    double median_factor = 10.0;
};
VerificationReport check_schur(const SchurCheckConfig& cfg = {});

struct CommutatorCheckConfig {
    std::vector<double> alphas = {1.5, 2.0};
    std::vector<double> lambdas = {0.0, 1.0};
    // X = 40 leaves room for R up to 16; the far-field rate in R only
    // emerges once R is large against the support of u.
    GridSpec grid{2000, 40.0, 2.0};
    double t = 0.02;          // u = e^{-t L_lambda} bump(x / bump_scale)
    double bump_scale = 0.125;
    double R_fixed = 2.0;
    double r_fixed = 0.05;
    std::vector<double> r_values = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
    std::vector<double> R_values = {2.0, 2.5, 3.2, 4.0, 5.0, 6.4, 8.0, 10.0, 12.5, 16.0};
    double slope_tol = 0.15;
};
VerificationReport check_commutator_scaling(const CommutatorCheckConfig& cfg, SpectralCache* cache = nullptr);

} // namespace hardy
