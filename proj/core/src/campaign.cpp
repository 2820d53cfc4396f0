#include "hardy/campaign.hpp"

#include "hardy/coupling.hpp"
#include "hardy/errors.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

namespace hardy {

std::shared_ptr<const SpectralCache::Entry> SpectralCache::get(double alpha, double lambda, const GridSpec& grid) {
    const Key key{alpha, lambda, grid.N, grid.X, grid.g};
    std::promise<std::shared_ptr<const Entry>> promise;
    std::shared_future<std::shared_ptr<const Entry>> future;
    bool owner = false;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            future = promise.get_future().share();
            entries_.emplace(key, future);
            owner = true;
        } else {
            future = it->second;
        }
    }
    if (owner) {
        try {
            auto entry = std::make_shared<Entry>();
            entry->op = assemble_form(alpha, lambda, grid.build());
            entry->dec = eigendecompose(entry->op);
            promise.set_value(entry);
        } catch (...) {
            promise.set_exception(std::current_exception());
        }
    }
    return future.get();
}

std::vector<SobolevRun> CampaignConfig::default_sobolev_runs() {
    std::vector<SobolevRun> runs;
    auto add = [&](SobolevKind kind, const std::string& label, double lambda, double s, double cap) {
        SobolevRun run;
        run.kind = kind;
        run.label = label;
        run.cfg.alpha = 2.0;
        run.cfg.lambda = lambda;
        run.cfg.s = s;
        run.cfg.cap = cap;
        runs.push_back(run);
    };
    add(SobolevKind::Equivalence, "lambda1-s1", 1.0, 1.0, 10.0);
    add(SobolevKind::Equivalence, "lambda1-s1.3", 1.0, 1.3, 10.0);
    add(SobolevKind::Equivalence, "lambda3-s1", 3.0, 1.0, 10.0);
    add(SobolevKind::Equivalence, "lambda3-s1.3", 3.0, 1.3, 10.0);
    add(SobolevKind::Equivalence, "lambda1-s2", 1.0, 2.0, 1e3);
    add(SobolevKind::Equivalence, "lambda-0.24-s1.5", -0.24, 1.5, 1e3);
    add(SobolevKind::GeneralizedHardy, "lambda0-s1.2", 0.0, 1.2, 1e3);
    add(SobolevKind::GeneralizedHardy, "lambda0-s1.6", 0.0, 1.6, 1e3);
    add(SobolevKind::ReversedHardy, "lambda1-s1.3", 1.0, 1.3, 1e3);
    add(SobolevKind::ReversedHardy, "lambda1-s2", 1.0, 2.0, 1e3);
    SobolevRun frac;
    frac.kind = SobolevKind::Equivalence;
    frac.label = "alpha1.5-lambda0.5-s0.8";
    frac.cfg.alpha = 1.5;
    frac.cfg.lambda = 0.5;
    frac.cfg.s = 0.8;
    runs.push_back(frac);
    return runs;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = {
        "coupling_exactness", "lambda_star_anchors", "gamma_representation", "exact_kernel",
        "heat_envelope",      "difference_bound",    "master_integral",      "riesz_consistency",
        "pointwise_bounds",   "hardy_sharpness",     "equivalence",          "generalized_hardy",
        "reversed_hardy",     "lemma_integral",      "schur",                "commutator_scaling"};
    return names;
}

const char* kind_name(SobolevKind kind) {
    switch (kind) {
    case SobolevKind::Equivalence: return "equivalence";
    case SobolevKind::GeneralizedHardy: return "generalized_hardy";
    case SobolevKind::ReversedHardy: return "reversed_hardy";
    }
    return "";
}

namespace {

using boost::property_tree::ptree;

template <class T>
T parse_value(const std::string& key, const std::string& text) {
    try {
        return boost::lexical_cast<T>(boost::trim_copy(text));
    } catch (const boost::bad_lexical_cast&) {
        throw ParameterError("config: bad value for " + key + ": '" + text + "'");
    }
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(","));
    std::vector<T> out;
    for (const auto& part : parts)
        if (!boost::trim_copy(part).empty()) out.push_back(parse_value<T>(key, part));
    return out;
}

// Key -> setter for one section.
using Setters = std::map<std::string, std::function<void(const std::string&)>>;

template <class T>
void bind_value(Setters& s, const std::string& key, T& target) {
    s[key] = [&target, key](const std::string& v) { target = parse_value<T>(key, v); };
}

template <class T>
void bind_list(Setters& s, const std::string& key, std::vector<T>& target) {
    s[key] = [&target, key](const std::string& v) { target = parse_list<T>(key, v); };
}

void bind_grid(Setters& s, GridSpec& g) {
    bind_value(s, "N", g.N);
    bind_value(s, "X", g.X);
    bind_value(s, "g", g.g);
}

void apply(const std::string& section, const ptree& tree, Setters& setters) {
    for (const auto& [key, node] : tree) {
        auto it = setters.find(key);
        if (it == setters.end()) throw ParameterError("config: unknown key '" + key + "' in [" + section + "]");
        it->second(node.data());
    }
}

void bind_sobolev(Setters& s, SobolevCheckConfig& c) {
    bind_value(s, "alpha", c.alpha);
    bind_value(s, "lambda", c.lambda);
    bind_value(s, "s", c.s);
    bind_grid(s, c.grid);
    bind_value(s, "eps_max", c.eps_max);
    bind_value(s, "cap", c.cap);
    bind_value(s, "min_halvings", c.min_halvings);
    bind_value(s, "fit_points", c.fit_points);
    bind_value(s, "slope_tol", c.slope_tol);
    bind_value(s, "identity_tol", c.identity_tol);
}

Setters section_setters(const std::string& name, CampaignConfig& c) {
    Setters s;
    if (name == "campaign") {
        bind_value(s, "seed", c.seed);
        bind_value(s, "threads", c.threads);
        s["only"] = [&c](const std::string& v) { c.only = parse_list<std::string>("only", v); };
    } else if (name == "coupling_exactness") {
        bind_value(s, "points", c.coupling.points);
        bind_value(s, "tol", c.coupling.tol);
    } else if (name == "lambda_star_anchors") {
        bind_value(s, "alpha_points", c.lambda_star.alpha_points);
        bind_value(s, "tol_anchor", c.lambda_star.tol_anchor);
        bind_value(s, "tol_grid", c.lambda_star.tol_grid);
    } else if (name == "gamma_representation") {
        bind_value(s, "samples", c.gamma.samples);
        bind_value(s, "tol", c.gamma.tol);
        bind_value(s, "seed", c.gamma.seed);
    } else if (name == "exact_kernel") {
        bind_value(s, "grid_points", c.exact_kernel.grid_points);
        bind_value(s, "tol_images", c.exact_kernel.tol_images);
        bind_value(s, "semigroup_samples", c.exact_kernel.semigroup_samples);
        bind_value(s, "tol_semigroup", c.exact_kernel.tol_semigroup);
        bind_value(s, "seed", c.exact_kernel.seed);
    } else if (name == "heat_envelope") {
        bind_list(s, "lambdas", c.heat_envelope.lambdas);
        bind_value(s, "grid_points", c.heat_envelope.grid_points);
        bind_value(s, "cap", c.heat_envelope.cap);
    } else if (name == "difference_bound") {
        bind_list(s, "lambdas", c.difference.lambdas);
        bind_value(s, "grid_points", c.difference.grid_points);
        bind_value(s, "cap", c.difference.cap);
        bind_value(s, "duhamel_samples", c.difference.duhamel_samples);
        bind_value(s, "tol_duhamel", c.difference.tol_duhamel);
        bind_value(s, "seed", c.difference.seed);
    } else if (name == "master_integral") {
        s["sets"] = [&c](const std::string& v) {
            c.master.sets.clear();
            for (const auto& item : parse_list<std::string>("sets", v)) {
                std::vector<std::string> f;
                boost::split(f, item, boost::is_any_of(":"));
                if (f.size() != 3) throw ParameterError("config: master_integral sets are alpha:p:s");
                c.master.sets.push_back(
                    {parse_value<double>("sets", f[0]), parse_value<double>("sets", f[1]),
                     parse_value<double>("sets", f[2])});
            }
        };
        bind_value(s, "d", c.master.d);
        bind_value(s, "c_exp", c.master.c_exp);
        bind_value(s, "grid_points", c.master.grid_points);
        bind_value(s, "max_aspect", c.master.max_aspect);
        bind_value(s, "window", c.master.window);
    } else if (name == "riesz_consistency") {
        bind_list(s, "lambdas", c.riesz.lambdas);
        bind_value(s, "s", c.riesz.s);
        bind_value(s, "grid_points", c.riesz.grid_points);
        bind_value(s, "cap", c.riesz.cap);
    } else if (name == "pointwise_bounds") {
        bind_value(s, "lambda", c.pointwise.lambda);
        bind_value(s, "t", c.pointwise.t);
        bind_value(s, "c_exp", c.pointwise.c_exp);
        bind_value(s, "grid_points", c.pointwise.grid_points);
        bind_value(s, "cap", c.pointwise.cap);
    } else if (name == "hardy_sharpness") {
        bind_list(s, "alphas", c.hardy.alphas);
        bind_list(s, "Ns", c.hardy.Ns);
        bind_value(s, "X", c.hardy.X);
        bind_value(s, "g", c.hardy.g);
        bind_value(s, "rel_tol", c.hardy.rel_tol);
        bind_value(s, "abs_tol_zero", c.hardy.abs_tol_zero);
    } else if (name == "lemma_integral") {
        bind_list(s, "dims", c.lemma.dims);
        bind_list(s, "betas", c.lemma.betas);
        bind_value(s, "samples", c.lemma.samples);
        bind_value(s, "samples_2d", c.lemma.samples_2d);
        bind_value(s, "median_factor", c.lemma.median_factor);
        bind_value(s, "seed", c.lemma.seed);
    } else if (name == "schur") {
        bind_list(s, "alphas", c.schur.alphas);
        bind_list(s, "rs", c.schur.rs);
        bind_value(s, "grid_points", c.schur.grid_points);
        bind_value(s, "median_factor", c.schur.median_factor);
    } else if (name == "commutator_scaling") {
        bind_list(s, "alphas", c.commutator.alphas);
        bind_list(s, "lambdas", c.commutator.lambdas);
        bind_grid(s, c.commutator.grid);
        bind_value(s, "t", c.commutator.t);
        bind_value(s, "R_fixed", c.commutator.R_fixed);
        bind_value(s, "r_fixed", c.commutator.r_fixed);
        bind_list(s, "r_values", c.commutator.r_values);
        bind_list(s, "R_values", c.commutator.R_values);
        bind_value(s, "slope_tol", c.commutator.slope_tol);
    } else {
        throw ParameterError("config: unknown section [" + name + "]");
    }
    return s;
}

bool sobolev_section(const std::string& name, SobolevKind& kind, std::string& label) {
    for (SobolevKind k : {SobolevKind::Equivalence, SobolevKind::GeneralizedHardy, SobolevKind::ReversedHardy}) {
        const std::string base = kind_name(k);
        if (name == base || boost::starts_with(name, base + "-")) {
            kind = k;
            label = name == base ? "custom" : name.substr(base.size() + 1);
            return true;
        }
    }
    return false;
}

std::uint64_t shifted(std::uint64_t seed, std::uint64_t offset) { return seed + offset; }

VerificationReport failed_report(const std::string& name, const std::string& what) {
    VerificationReport rep;
    rep.name = name;
    rep.note("error: " + what);
    rep.finalize();
    rep.verdict = false;
    return rep;
}

} // namespace

CampaignConfig load_campaign_config(std::istream& is) {
    ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(is, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
    CampaignConfig cfg;
    std::vector<bool> replaced(3, false);
    for (const auto& [name, section] : tree) {
        if (section.empty() && !section.data().empty())
            throw ParameterError("config: key '" + name + "' outside any section");
        SobolevKind kind;
        std::string label;
        if (sobolev_section(name, kind, label)) {
            const int k = static_cast<int>(kind);
            if (!replaced[k]) {
                std::erase_if(cfg.sobolev, [kind](const SobolevRun& r) { return r.kind == kind; });
                replaced[k] = true;
            }
            SobolevRun run;
            run.kind = kind;
            run.label = label;
            Setters s;
            bind_sobolev(s, run.cfg);
            apply(name, section, s);
            cfg.sobolev.push_back(run);
            continue;
        }
        Setters s = section_setters(name, cfg);
        apply(name, section, s);
    }
    if (cfg.threads < 1) throw ParameterError("config: threads must be at least 1");
    for (const auto& n : cfg.only)
        if (std::find(check_names().begin(), check_names().end(), n) == check_names().end())
            throw ParameterError("config: unknown check '" + n + "'");
    return cfg;
}

CampaignConfig load_campaign_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("config: cannot open " + path);
    return load_campaign_config(in);
}

std::vector<VerificationReport> run_all(const CampaignConfig& cfg) {
    auto selected = [&](const std::string& name) {
        return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), name) != cfg.only.end();
    };
    SpectralCache cache;
    std::vector<std::pair<std::string, std::function<VerificationReport()>>> jobs;
    auto job = [&](const std::string& name, std::function<VerificationReport()> fn) {
        if (selected(name)) jobs.emplace_back(name, std::move(fn));
    };

    job("coupling_exactness", [&] { return check_coupling_exactness(cfg.coupling); });
    job("lambda_star_anchors", [&] { return check_lambda_star(cfg.lambda_star); });
    job("gamma_representation", [&] {
        GammaCheckConfig c = cfg.gamma;
        c.seed = shifted(cfg.seed, c.seed);
        return check_gamma_representation(c);
    });
    job("exact_kernel", [&] {
        ExactKernelCheckConfig c = cfg.exact_kernel;
        c.seed = shifted(cfg.seed, c.seed);
        return check_exact_kernel(c);
    });
    job("heat_envelope", [&] { return check_heat_envelope(cfg.heat_envelope); });
    job("difference_bound", [&] {
        DifferenceCheckConfig c = cfg.difference;
        c.seed = shifted(cfg.seed, c.seed);
        return check_difference_bound(c);
    });
    job("master_integral", [&] { return check_master_integral(cfg.master); });
    job("riesz_consistency", [&] { return check_riesz_consistency(cfg.riesz); });
    job("pointwise_bounds", [&] { return check_pointwise_bounds(cfg.pointwise); });
    job("hardy_sharpness", [&] { return check_hardy_sharpness(cfg.hardy); });
    for (const SobolevRun& run : cfg.sobolev) {
        const std::string name = kind_name(run.kind);
        job(name, [&run, &cache, name] {
            VerificationReport rep;
            switch (run.kind) {
            case SobolevKind::Equivalence: rep = check_equivalence(run.cfg, &cache); break;
            case SobolevKind::GeneralizedHardy: rep = check_generalized_hardy(run.cfg, &cache); break;
            case SobolevKind::ReversedHardy: rep = check_reversed_hardy(run.cfg, &cache); break;
            }
            rep.name = name + "[" + run.label + "]";
            return rep;
        });
    }
    job("lemma_integral", [&] {
        LemmaIntegralCheckConfig c = cfg.lemma;
        c.seed = shifted(cfg.seed, c.seed);
        return check_lemma_integral(c);
    });
    job("schur", [&] { return check_schur(cfg.schur); });
    job("commutator_scaling", [&] { return check_commutator_scaling(cfg.commutator, &cache); });

    std::vector<VerificationReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                out[i] = jobs[i].second();
            } catch (const std::exception& e) {
                out[i] = failed_report(jobs[i].first, e.what());
            }
        }
    };
    const int n = std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

} // namespace hardy
