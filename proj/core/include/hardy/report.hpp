#pragma once

// Result of one named check: inputs, measured values, declared bounds and
// the verdict derived from them.

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace hardy {

struct Bound {
    std::string key;  // measured value it applies to
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
};

// Named table of numbers, e.g. a ratio curve or a convergence table.
struct Curve {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct VerificationReport {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    std::vector<std::pair<std::string, double>> measured;
    std::vector<Bound> bounds;
    std::vector<Curve> curves;
    std::vector<std::string> notes;
    std::string key;  // headline measured value for the CSV summary
    bool verdict = false;

    void param(const std::string& k, double v);
    void measure(const std::string& k, double v);
    // Appends a bound; lo <= value <= hi must hold.
    void require(const std::string& k, double lo, double hi);
    void require_below(const std::string& k, double hi);
    void note(const std::string& text);

    // NaN if the key is missing.
    double value(const std::string& k) const;
    bool has(const std::string& k) const;
    // Sets verdict: every bound is met and every bounded key was measured.
    bool finalize();
    // Bounds that fail, formatted for display.
    std::vector<std::string> violations() const;
};

// One JSON array with an object per report.
std::string reports_to_json(const std::vector<VerificationReport>& reports);
void write_json(std::ostream& os, const std::vector<VerificationReport>& reports);

// Columns check_name,key_measured,value,cap,verdict.
void write_summary_csv(std::ostream& os, const std::vector<VerificationReport>& reports);

} // namespace hardy
