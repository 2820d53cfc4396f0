#include "cli.hpp"

#include "hardy/coupling.hpp"
#include "hardy/kernels.hpp"
#include "hardy/serialize.hpp"
#include "hardy/specfun.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace hardy;
using hardy::cli::run_cli;

namespace {

struct CliResult {
    int rc;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = run_cli(args, out, err);
    return {rc, out.str(), err.str()};
}

CsvTable table(const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
}

// "key = value" lines from the plain format.
double plain_value(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(key + " = ", 0) == 0) return std::stod(line.substr(key.size() + 3));
    return std::nan("");
}

} // namespace

TEST(CliExponent, LocalZeroCoupling) {
    const CliResult r = run({"exponent", "--alpha", "2", "--lambda", "0"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    EXPECT_NEAR(plain_value(r.out, "p"), 1.0, 1e-12);
    EXPECT_DOUBLE_EQ(plain_value(r.out, "lambda_star"), -0.25);
}

TEST(CliExponent, CriticalCouplingAtAlphaOne) {
    const CliResult r = run({"exponent", "--alpha", "1", "--lambda-star"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    EXPECT_NEAR(plain_value(r.out, "lambda"), 0.0, 1e-12);
    EXPECT_NEAR(plain_value(r.out, "p"), 0.0, 1e-6);
}

TEST(CliExponent, CsvMatchesLibrary) {
    const CliResult r = run({"exponent", "--alpha", "1.5", "--lambda", "0.3", "--format", "csv"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    const CsvTable t = table(r.out);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_NEAR(t.number(0, t.column("p")), exponent_p(1.5, 0.3), 1e-15);
    EXPECT_NEAR(t.number(0, t.column("lambda_zero")), lambda_zero(1, 1.5), 1e-15);
}

TEST(CliExponent, BadParametersExitTwo) {
    EXPECT_EQ(run({"exponent", "--alpha", "2", "--lambda-zero"}).rc, cli::kBadParams);
    EXPECT_EQ(run({"exponent", "--alpha", "3", "--lambda", "0"}).rc, cli::kBadParams);
    EXPECT_EQ(run({"exponent", "--alpha", "2", "--lambda", "-1"}).rc, cli::kBadParams);
    EXPECT_EQ(run({"exponent", "--alpha", "2", "--lambda", "0", "--lambda-star"}).rc, cli::kBadParams);
    EXPECT_EQ(run({"nonsense"}).rc, cli::kBadParams);
}

TEST(CliExponent, HelpIsSuccess) { EXPECT_EQ(run({"--help"}).rc, cli::kOk); }

TEST(CliKernel, HeatExactCsvRoundTrip) {
    const CliResult r = run({"kernel", "heat-exact", "--alpha", "2", "--lambda", "2", "--t", "0.5,2", "--x", "0.3",
                       "--y", "lin:0.5:1.5:3", "--format", "csv"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    const CsvTable t = table(r.out);
    ASSERT_FALSE(t.comments.empty());
    ASSERT_EQ(t.rows.size(), 6u);
    const int ct = t.column("t"), cx = t.column("x"), cy = t.column("y"), cv = t.column("value");
    ASSERT_GE(ct, 0);
    ASSERT_GE(cv, 0);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double ref = heat_exact_halfline(2.0, t.number(i, ct), t.number(i, cx), t.number(i, cy));
        EXPECT_DOUBLE_EQ(t.number(i, cv), ref);
    }
}

TEST(CliKernel, LogEnvelopeJson) {
    const CliResult r = run({"kernel", "heat-envelope", "--alpha", "1.5", "--t", "1", "--x", "0.1", "--y", "2", "--log",
                       "--format", "json"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_TRUE(j[0].contains("log_value"));
}

TEST(CliKernel, RieszOutsideRangeIsBadParams) {
    EXPECT_EQ(run({"kernel", "riesz-envelope", "--alpha", "2", "--s", "1.5", "--x", "1", "--y", "2"}).rc,
              cli::kBadParams);
}

TEST(CliDiscretize, SpectrumRoundTrip) {
    const CliResult r = run({"discretize", "--alpha", "2", "--lambda", "0", "--N", "40", "--X", "4", "--g", "1",
                       "--spectrum", "--count", "5"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    std::istringstream in(r.out);
    const SpectrumFile f = read_spectrum_csv(in);
    EXPECT_EQ(f.header.N, 40);
    ASSERT_EQ(f.eigenvalues.size(), 5);
    for (int k = 1; k < 5; ++k) EXPECT_GT(f.eigenvalues[k], f.eigenvalues[k - 1]);
    // Uniform lumped mesh: mu_1 = (4/h^2) sin^2(pi / 2N) with h = 0.1.
    EXPECT_NEAR(f.eigenvalues[0], 400.0 * std::pow(std::sin(kPi / 80.0), 2), 1e-9);
}

TEST(CliDiscretize, HardyMinTable) {
    const CliResult r = run({"discretize", "--alpha", "2", "--hardy-min", "--Ns", "50,100", "--format", "csv"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    const CsvTable t = table(r.out);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_DOUBLE_EQ(t.number(0, t.column("target")), 0.25);
    EXPECT_GT(t.number(1, t.column("nu")), 0.25);
}

TEST(CliDiscretize, RejectsTwoModes) {
    EXPECT_EQ(run({"discretize", "--spectrum", "--hardy-min"}).rc, cli::kBadParams);
    EXPECT_EQ(run({"discretize", "--N", "1", "--spectrum"}).rc, cli::kBadParams);
}

TEST(CliVerify, ListAndSingleCheck) {
    const CliResult list = run({"verify", "--list"});
    ASSERT_EQ(list.rc, cli::kOk);
    EXPECT_NE(list.out.find("commutator_scaling"), std::string::npos);

    const CliResult r = run({"verify", "coupling_exactness"});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_EQ(j[0]["verdict"], "pass");
    EXPECT_NE(r.err.find("PASS"), std::string::npos);
}

TEST(CliVerify, FailingCheckExitsOne) {
    const std::string path = ::testing::TempDir() + "hardy_cli_fail.ini";
    {
        std::ofstream f(path);
        f << "[heat_envelope]\ncap = 1.0000001\ngrid_points = 3\n";
    }
    const CliResult r = run({"verify", "heat_envelope", "--config", path, "--format", "csv"});
    std::remove(path.c_str());
    EXPECT_EQ(r.rc, cli::kFailed) << r.err;
    const CsvTable t = table(r.out);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][t.column("verdict")], "fail");
}

TEST(CliVerify, UnknownCheckIsBadParams) { EXPECT_EQ(run({"verify", "no_such_check"}).rc, cli::kBadParams); }

TEST(CliOutput, WritesFile) {
    const std::string path = ::testing::TempDir() + "hardy_cli_out.csv";
    const CliResult r = run({"exponent", "--alpha", "2", "--lambda", "2", "--format", "csv", "-o", path});
    ASSERT_EQ(r.rc, cli::kOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path);
    const CsvTable t = read_csv(f);
    std::remove(path.c_str());
    EXPECT_NEAR(t.number(0, t.column("p")), 2.0, 1e-12);
}

TEST(ParseAxis, Forms) {
    EXPECT_EQ(cli::parse_axis("1,2.5,3"), (std::vector<double>{1.0, 2.5, 3.0}));
    const auto lin = cli::parse_axis("lin:0:1:5");
    ASSERT_EQ(lin.size(), 5u);
    EXPECT_DOUBLE_EQ(lin[2], 0.5);
    EXPECT_DOUBLE_EQ(lin.back(), 1.0);
    const auto lg = cli::parse_axis("log:1e-2:1e2:5");
    ASSERT_EQ(lg.size(), 5u);
    EXPECT_NEAR(lg[2], 1.0, 1e-14);
    EXPECT_NEAR(lg.back(), 100.0, 1e-12);
    EXPECT_THROW(cli::parse_axis("log:0:1:3"), std::exception);
    EXPECT_THROW(cli::parse_axis("lin:0:1"), std::exception);
    EXPECT_THROW(cli::parse_axis("a,b"), std::exception);
}
