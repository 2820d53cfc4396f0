#include "cli.hpp"

#include "hardy/assembly.hpp"
#include "hardy/campaign.hpp"
#include "hardy/coupling.hpp"
#include "hardy/errors.hpp"
#include "hardy/kernels.hpp"
#include "hardy/report.hpp"
#include "hardy/serialize.hpp"
#include "hardy/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace hardy::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// A table of numbers that can go out as CSV, JSON or key = value lines.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void emit_csv(std::ostream& os, const Table& t) {
    CsvTable csv;
    csv.comments = t.comments;
    csv.columns = t.columns;
    for (const auto& r : t.rows) {
        std::vector<std::string> cells;
        for (double v : r) cells.push_back(format_double(v));
        csv.rows.push_back(std::move(cells));
    }
    write_csv(os, csv);
}

void emit_json(std::ostream& os, const Table& t) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : t.rows) {
        ordered_json obj;
        for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = r[c];
        arr.push_back(obj);
    }
    os << arr.dump(2) << '\n';
}

void emit_plain(std::ostream& os, const Table& t) {
    for (const auto& r : t.rows) {
        for (std::size_t c = 0; c < t.columns.size(); ++c) os << t.columns[c] << " = " << format_double(r[c]) << '\n';
        if (t.rows.size() > 1) os << '\n';
    }
}

void emit(std::ostream& os, const Table& t, const std::string& format) {
    if (format == "csv") emit_csv(os, t);
    else if (format == "json") emit_json(os, t);
    else emit_plain(os, t);
}

// Output stream for -o, falling back to the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw ParameterError("cannot open " + path + " for writing");
        os_ = file_.get();
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

double to_number(const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw ParameterError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw ParameterError("not a number: '" + s + "'");
    return v;
}

struct ExponentArgs {
    double alpha = 2.0;
    int d = 1;
    double lambda = 0.0;
    bool star = false;
    bool zero = false;
};

Table exponent_table(const ExponentArgs& a) {
    double lambda = a.lambda;
    if (a.star) lambda = lambda_star(a.alpha);
    if (a.zero) lambda = lambda_zero(a.d, a.alpha);
    const CouplingParams cp = make_params(a.d, a.alpha, lambda);
    const DerivedExponents de = derived_exponents(a.alpha, cp.p);
    Table t;
    t.columns = {"alpha", "d", "lambda", "p", "lambda_star", "lambda_zero", "q", "r", "residual"};
    const double residual = coupling_C(a.alpha, cp.p) - lambda;
    t.rows.push_back({a.alpha, static_cast<double>(a.d), lambda, cp.p, cp.lambda_star, cp.lambda_zero, de.q, de.r,
                      residual});
    return t;
}

struct KernelArgs {
    std::string kind;
    double alpha = 2.0;
    int d = 1;
    double lambda = 0.0;
    std::string times = "1";
    std::string xs = "log:0.01:10:13";
    std::string ys = "1";
    double offset = 0.0;
    double c_exp = 0.25;
    double c_m = 0.25;
    bool log_value = false;
};

HalfSpacePoint make_point(int d, double xd, double transverse) {
    HalfSpacePoint pt;
    pt.xd = xd;
    pt.xprime.assign(d - 1, 0.0);
    if (d > 1) pt.xprime[0] = transverse;
    return pt;
}

Table kernel_table(const KernelArgs& a) {
    if (a.d < 1) throw ParameterError("--d must be at least 1");
    const bool riesz = a.kind == "riesz-envelope";
    if (a.kind == "heat-exact" && a.alpha != 2.0) throw ParameterError("heat-exact exists for alpha = 2 only");
    const CouplingParams cp = make_params(a.d, a.alpha, a.lambda);
    const KernelEnvelope env{a.alpha, a.d, cp.p, a.c_exp};
    const DiffEnvelopeParams dp = make_diff_params(cp, a.c_exp, a.c_m);

    auto value = [&](double ts, const HalfSpacePoint& x, const HalfSpacePoint& y) {
        if (a.kind == "heat-exact") {
            if (a.d == 1) return a.log_value ? log_heat_exact_halfline(a.lambda, ts, x.xd, y.xd)
                                             : heat_exact_halfline(a.lambda, ts, x.xd, y.xd);
            return a.log_value ? log_heat_exact_halfspace(a.d, a.lambda, ts, x, y)
                               : heat_exact_halfspace(a.d, a.lambda, ts, x, y);
        }
        if (a.kind == "heat-envelope")
            return a.log_value ? log_heat_envelope(env, ts, x, y) : heat_envelope(env, ts, x, y);
        if (riesz) {
            const double v = riesz_envelope(cp, ts, x, y);
            return a.log_value ? std::log(v) : v;
        }
        return a.log_value ? log_diff_envelope(dp, cp, ts, x, y) : diff_envelope(dp, cp, ts, x, y);
    };

    Table t;
    t.comments.push_back("# kernel=" + a.kind + ",alpha=" + format_double(a.alpha) + ",d=" + std::to_string(a.d) +
                         ",lambda=" + format_double(a.lambda) + ",p=" + format_double(cp.p));
    t.columns.push_back(riesz ? "s" : "t");
    auto coords = [&](const char* base) {
        if (a.d == 1) {
            t.columns.push_back(base);
            return;
        }
        for (int i = 1; i <= a.d; ++i) t.columns.push_back(base + std::to_string(i));
    };
    coords("x");
    coords("y");
    t.columns.push_back(a.log_value ? "log_value" : "value");

    const auto ts = parse_axis(a.times);
    const auto xs = parse_axis(a.xs);
    const auto ys = parse_axis(a.ys);
    for (double tv : ts) {
        for (double xv : xs) {
            for (double yv : ys) {
                const HalfSpacePoint x = make_point(a.d, xv, 0.0);
                const HalfSpacePoint y = make_point(a.d, yv, a.offset);
                std::vector<double> row{tv};
                row.insert(row.end(), x.xprime.begin(), x.xprime.end());
                row.push_back(x.xd);
                row.insert(row.end(), y.xprime.begin(), y.xprime.end());
                row.push_back(y.xd);
                row.push_back(value(tv, x, y));
                t.rows.push_back(std::move(row));
            }
        }
    }
    return t;
}

struct DiscretizeArgs {
    double alpha = 2.0;
    double lambda = 0.0;
    int N = 500;
    double X = 10.0;
    double g = 2.0;
    bool spectrum = false;
    bool hardy_min = false;
    int count = 0;
    bool vectors = false;
    std::vector<int> Ns = {250, 500, 1000, 2000};
};

Table spectrum_table(const DiscretizeArgs& a, const SpectralDecomposition& dec) {
    Table t;
    t.columns = {"k", "eigenvalue"};
    const int n = a.count > 0 ? std::min(a.count, dec.size()) : dec.size();
    for (int k = 0; k < n; ++k) t.rows.push_back({static_cast<double>(k), dec.eigenvalues[k]});
    return t;
}

Table hardy_table(const DiscretizeArgs& a) {
    Table t;
    t.comments.push_back("# alpha=" + format_double(a.alpha) + ",X=" + format_double(a.X) + ",g=" + format_double(a.g));
    t.columns = {"N", "nu", "target", "rel_error", "extrapolated"};
    for (const auto& r : hardy_convergence_table(a.alpha, a.X, a.g, a.Ns))
        t.rows.push_back({static_cast<double>(r.N), r.nu, r.target, r.rel_error, r.extrapolated});
    return t;
}

void run_discretize(const DiscretizeArgs& a, const std::string& format, std::ostream& os) {
    if (a.spectrum == a.hardy_min) throw ParameterError("discretize needs exactly one of --spectrum, --hardy-min");
    if (a.hardy_min) {
        emit(os, hardy_table(a), format);
        return;
    }
    const DiscreteOperator op = assemble_form(a.alpha, a.lambda, build_grid(a.X, a.N, a.g));
    SpectralDecomposition dec = eigendecompose(op);
    if (format == "json") {
        emit_json(os, spectrum_table(a, dec));
        return;
    }
    if (a.count > 0 && a.count < dec.size()) {
        dec.eigenvalues = dec.eigenvalues.head(a.count).eval();
        dec.eigenvectors = dec.eigenvectors.leftCols(a.count).eval();
    }
    write_spectrum_csv(os, header_of(op), dec, a.vectors);
}

struct VerifyArgs {
    std::string check = "all";
    std::string config;
    int threads = 0;
    long long seed = -1;
    bool list = false;
};

int run_verify(const VerifyArgs& a, const std::string& format, std::ostream& os, std::ostream& err) {
    if (a.list) {
        for (const auto& n : check_names()) os << n << '\n';
        return kOk;
    }
    CampaignConfig cfg = a.config.empty() ? CampaignConfig{} : load_campaign_config(a.config);
    if (a.check != "all") {
        const auto& names = check_names();
        if (std::find(names.begin(), names.end(), a.check) == names.end())
            throw ParameterError("unknown check '" + a.check + "'; see verify --list");
        cfg.only = {a.check};
    }
    if (a.threads > 0) cfg.threads = a.threads;
    if (a.seed >= 0) cfg.seed = static_cast<std::uint64_t>(a.seed);

    const std::vector<VerificationReport> reports = run_all(cfg);
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.verdict;
        err << (r.verdict ? "PASS " : "FAIL ") << r.name << '\n';
        for (const auto& v : r.violations()) err << "     " << v << '\n';
    }
    if (format == "csv") {
        write_summary_csv(os, reports);
    } else if (format == "plain") {
        for (const auto& r : reports)
            os << r.name << ' ' << (r.verdict ? "PASS" : "FAIL") << ' ' << r.key << " = "
               << format_double(r.value(r.key)) << '\n';
    } else {
        write_json(os, reports);
    }
    return ok ? kOk : kFailed;
}

} // namespace

std::vector<double> parse_axis(const std::string& spec) {
    if (spec.empty()) throw ParameterError("empty sample axis");
    std::vector<std::string> parts;
    const bool ranged = spec.rfind("log:", 0) == 0 || spec.rfind("lin:", 0) == 0;
    std::stringstream ss(ranged ? spec.substr(4) : spec);
    std::string item;
    while (std::getline(ss, item, ranged ? ':' : ',')) parts.push_back(item);
    std::vector<double> out;
    if (!ranged) {
        for (const auto& p : parts) out.push_back(to_number(p));
        return out;
    }
    if (parts.size() != 3) throw ParameterError("axis '" + spec + "': expected kind:lo:hi:n");
    const double lo = to_number(parts[0]);
    const double hi = to_number(parts[1]);
    const double nd = to_number(parts[2]);
    const int n = static_cast<int>(nd);
    if (n < 1 || n != nd) throw ParameterError("axis '" + spec + "': n must be a positive integer");
    const bool log = spec[1] == 'o';
    if (log && !(lo > 0.0 && hi > 0.0)) throw ParameterError("axis '" + spec + "': log axis needs positive ends");
    for (int i = 0; i < n; ++i) {
        const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        out.push_back(log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hardy operators on the half-space: exponents, kernels, discretizations and checks", "hardy"};
    app.require_subcommand(1);
    std::string output;

    ExponentArgs ea;
    auto* exp = app.add_subcommand("exponent", "Boundary exponent p and related constants");
    exp->add_option("--alpha", ea.alpha, "Order alpha in (0, 2]")->required()->check(CLI::Range(0.0, 2.0));
    exp->add_option("--d", ea.d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    auto* lam = exp->add_option("--lambda", ea.lambda, "Coupling constant");
    auto* star = exp->add_flag("--lambda-star", ea.star, "Use lambda = lambda*");
    auto* zero = exp->add_flag("--lambda-zero", ea.zero, "Use lambda = lambda_0 (alpha < 2)");
    lam->excludes(star)->excludes(zero);
    star->excludes(zero);

    KernelArgs ka;
    auto* ker = app.add_subcommand("kernel", "Tabulate a kernel or envelope on a sample grid");
    ker->add_option("kind", ka.kind, "Kernel")
        ->required()
        ->check(CLI::IsMember({"heat-exact", "heat-envelope", "riesz-envelope", "diff-envelope"}));
    ker->add_option("--alpha", ka.alpha, "Order alpha in (0, 2]")->check(CLI::Range(0.0, 2.0))->capture_default_str();
    ker->add_option("--d", ka.d, "Dimension")->check(CLI::PositiveNumber)->capture_default_str();
    ker->add_option("--lambda", ka.lambda, "Coupling constant")->capture_default_str();
    ker->add_option("--t,--s", ka.times, "Times t, or orders s for riesz-envelope (axis syntax)")
        ->capture_default_str();
    ker->add_option("--x", ka.xs, "Distances x_d to the boundary (axis syntax)")->capture_default_str();
    ker->add_option("--y", ka.ys, "Distances y_d to the boundary (axis syntax)")->capture_default_str();
    ker->add_option("--offset", ka.offset, "Transverse offset of y from x (d > 1)")->capture_default_str();
    ker->add_option("--c-exp", ka.c_exp, "Gaussian constant of the envelope")->capture_default_str();
    ker->add_option("--c-m", ka.c_m, "Gaussian constant of the M term (diff-envelope)")->capture_default_str();
    ker->add_flag("--log", ka.log_value, "Write the natural log of the value");
    ker->footer("Axis syntax: 'a,b,c', 'log:lo:hi:n' or 'lin:lo:hi:n'.");

    DiscretizeArgs da;
    auto* dis = app.add_subcommand("discretize", "Discretized form: spectrum or Hardy-minimum table");
    dis->add_option("--alpha", da.alpha, "Order alpha in (0, 2]")->check(CLI::Range(0.0, 2.0))->capture_default_str();
    dis->add_option("--lambda", da.lambda, "Coupling constant")->capture_default_str();
    dis->add_option("--N", da.N, "Number of cells")->check(CLI::Range(2, kDenseSolverCap))->capture_default_str();
    dis->add_option("--X", da.X, "Domain length")->check(CLI::PositiveNumber)->capture_default_str();
    dis->add_option("--g", da.g, "Grading exponent")->check(CLI::Range(1.0, 4.0))->capture_default_str();
    dis->add_flag("--spectrum", da.spectrum, "Eigenvalues of the discrete operator");
    dis->add_flag("--hardy-min", da.hardy_min, "Convergence table of the discrete Hardy minimum");
    dis->add_option("--count", da.count, "Keep the lowest count eigenvalues")->check(CLI::NonNegativeNumber);
    dis->add_flag("--vectors", da.vectors, "Also write eigenvector components (CSV)");
    dis->add_option("--Ns", da.Ns, "Cell counts for --hardy-min")->delimiter(',')->capture_default_str();

    VerifyArgs va;
    auto* ver = app.add_subcommand("verify", "Run named checks or the whole campaign");
    ver->add_option("check", va.check, "Check name or 'all'")->capture_default_str();
    ver->add_option("--config", va.config, "Campaign config file")->check(CLI::ExistingFile);
    ver->add_option("--threads", va.threads, "Concurrent checks")->check(CLI::NonNegativeNumber);
    ver->add_option("--seed", va.seed, "Campaign seed offset")->check(CLI::NonNegativeNumber);
    ver->add_flag("--list", va.list, "List check names");

    // Each subcommand has its own set of formats and its own default.
    std::string exp_format = "plain", ker_format = "csv", dis_format = "csv", ver_format = "json";
    auto add_io = [&](CLI::App* sub, std::string& var, std::vector<std::string> formats) {
        sub->add_option("--format", var, "Output format")->check(CLI::IsMember(formats))->capture_default_str();
        sub->add_option("-o,--output", output, "Output file (default stdout)");
    };
    add_io(exp, exp_format, {"plain", "csv", "json"});
    add_io(ker, ker_format, {"csv", "json"});
    add_io(dis, dis_format, {"csv", "json"});
    add_io(ver, ver_format, {"json", "csv", "plain"});

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadParams;
    }

    try {
        Sink sink(output, out);
        std::ostream& os = sink.stream();
        if (*exp) {
            emit(os, exponent_table(ea), exp_format);
            return kOk;
        }
        if (*ker) {
            emit(os, kernel_table(ka), ker_format);
            return kOk;
        }
        if (*dis) {
            run_discretize(da, dis_format, os);
            return kOk;
        }
        return run_verify(va, ver_format, os, err);
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kBadParams;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kBadParams;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailed;
    }
}

} // namespace hardy::cli
