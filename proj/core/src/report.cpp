#include "hardy/report.hpp"

#include "hardy/serialize.hpp"

#include "json.hpp"

#include <cmath>
#include <ostream>

namespace hardy {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

ordered_json pairs(const std::vector<std::pair<std::string, double>>& kv) {
    ordered_json o = ordered_json::object();
    for (const auto& [k, v] : kv) o[k] = number(v);
    return o;
}

bool satisfied(const Bound& b, double v) { return !std::isnan(v) && v >= b.lo && v <= b.hi; }

std::string cap_text(const Bound& b) {
    const bool lo = std::isfinite(b.lo);
    const bool hi = std::isfinite(b.hi);
    if (lo && hi) return "[" + format_double(b.lo) + ";" + format_double(b.hi) + "]";
    if (hi) return "<=" + format_double(b.hi);
    if (lo) return ">=" + format_double(b.lo);
    return "any";
}

} // namespace

void VerificationReport::param(const std::string& k, double v) { params.emplace_back(k, v); }

void VerificationReport::measure(const std::string& k, double v) {
    for (auto& kv : measured) {
        if (kv.first == k) {
            kv.second = v;
            return;
        }
    }
    measured.emplace_back(k, v);
}

void VerificationReport::require(const std::string& k, double lo, double hi) { bounds.push_back({k, lo, hi}); }

void VerificationReport::require_below(const std::string& k, double hi) {
    require(k, -std::numeric_limits<double>::infinity(), hi);
}

void VerificationReport::note(const std::string& text) { notes.push_back(text); }

double VerificationReport::value(const std::string& k) const {
    for (const auto& kv : measured)
        if (kv.first == k) return kv.second;
    return std::numeric_limits<double>::quiet_NaN();
}

bool VerificationReport::has(const std::string& k) const {
    for (const auto& kv : measured)
        if (kv.first == k) return true;
    return false;
}

bool VerificationReport::finalize() {
    verdict = !bounds.empty();
    for (const Bound& b : bounds)
        if (!has(b.key) || !satisfied(b, value(b.key))) verdict = false;
    if (key.empty() && !bounds.empty()) key = bounds.front().key;
    return verdict;
}

std::vector<std::string> VerificationReport::violations() const {
    std::vector<std::string> out;
    for (const Bound& b : bounds) {
        if (!has(b.key)) out.push_back(b.key + " not measured");
        else if (!satisfied(b, value(b.key)))
            out.push_back(b.key + " = " + format_double(value(b.key)) + " outside " + cap_text(b));
    }
    return out;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json o;
        o["name"] = r.name;
        o["params"] = pairs(r.params);
        o["measured"] = pairs(r.measured);
        ordered_json tol = ordered_json::array();
        for (const Bound& b : r.bounds) tol.push_back({{"key", b.key}, {"lo", number(b.lo)}, {"hi", number(b.hi)}});
        o["tolerances"] = tol;
        ordered_json curves = ordered_json::array();
        for (const Curve& c : r.curves) {
            ordered_json rows = ordered_json::array();
            for (const auto& row : c.rows) {
                ordered_json jr = ordered_json::array();
                for (double v : row) jr.push_back(number(v));
                rows.push_back(jr);
            }
            curves.push_back({{"name", c.name}, {"columns", c.columns}, {"rows", rows}});
        }
        o["curves"] = curves;
        o["notes"] = r.notes;
        o["verdict"] = r.verdict ? "pass" : "fail";
        arr.push_back(o);
    }
    return arr.dump(2);
}

void write_json(std::ostream& os, const std::vector<VerificationReport>& reports) {
    os << reports_to_json(reports) << '\n';
}

void write_summary_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
    CsvTable t;
    t.columns = {"check_name", "key_measured", "value", "cap", "verdict"};
    for (const auto& r : reports) {
        std::string cap = "any";
        for (const Bound& b : r.bounds)
            if (b.key == r.key) cap = cap_text(b);
        t.rows.push_back({r.name, r.key, format_double(r.value(r.key)), cap, r.verdict ? "pass" : "fail"});
    }
    write_csv(os, t);
}

} // namespace hardy
