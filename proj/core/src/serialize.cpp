#include "hardy/serialize.hpp"

#include "hardy/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace hardy {

namespace {

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    while (first < last && *first == ' ') ++first;
    if (first < last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) {
        if (s == "nan" || s == "NaN") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ParameterError("csv: not a number: '" + s + "'");
    }
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    if (v != std::floor(v)) throw ParameterError("csv: not an integer: '" + s + "'");
    return static_cast<int>(v);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string quote_field(const std::string& f) {
    if (f.find_first_of(",\"\n") == std::string::npos) return f;
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_header(const OperatorHeader& h) {
    return "# N=" + std::to_string(h.N) + ",alpha=" + format_double(h.alpha) + ",lambda=" + format_double(h.lambda) +
           ",X=" + format_double(h.X) + ",g=" + format_double(h.g);
}

OperatorHeader parse_header(const std::string& line) {
    if (line.rfind("#", 0) != 0) throw ParameterError("csv: missing metadata line");
    std::string body = line.substr(1);
    std::map<std::string, std::string> kv;
    for (const std::string& item : split_csv_line(body)) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        std::string key = item.substr(0, eq);
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        kv[key] = item.substr(eq + 1);
    }
    for (const char* k : {"N", "alpha", "lambda", "X", "g"})
        if (!kv.count(k)) throw ParameterError(std::string("csv: metadata lacks ") + k);
    OperatorHeader h;
    h.N = parse_int(kv["N"]);
    h.alpha = parse_double(kv["alpha"]);
    h.lambda = parse_double(kv["lambda"]);
    h.X = parse_double(kv["X"]);
    h.g = parse_double(kv["g"]);
    return h;
}

OperatorHeader header_of(const DiscreteOperator& op) {
    OperatorHeader h;
    h.N = op.grid.N;
    h.alpha = op.params.alpha;
    h.lambda = op.params.lambda;
    h.X = op.grid.X;
    h.g = op.grid.g;
    return h;
}

void write_operator_csv(std::ostream& os, const DiscreteOperator& op) {
    os << format_header(header_of(op)) << '\n' << "i,j,value\n";
    const Eigen::MatrixXd& K = op.free_stiffness;
    for (Eigen::Index j = 0; j < K.cols(); ++j)
        for (Eigen::Index i = 0; i <= j; ++i)
            if (K(i, j) != 0.0) os << i << ',' << j << ',' << format_double(K(i, j)) << '\n';
}

DiscreteOperator read_operator_csv(std::istream& is) {
    const CsvTable t = read_csv(is);
    if (t.comments.empty()) throw ParameterError("csv: missing metadata line");
    const OperatorHeader h = parse_header(t.comments.front());
    const int ci = t.column("i");
    const int cj = t.column("j");
    const int cv = t.column("value");
    if (ci < 0 || cj < 0 || cv < 0) throw ParameterError("csv: operator file needs columns i,j,value");

    DiscreteOperator op;
    op.grid = build_grid(h.X, h.N, h.g);
    const int n = op.grid.size();
    const double ls = lambda_star(h.alpha);
    if (h.lambda >= ls - kLambdaStarSlack) {
        op.params = make_params(1, h.alpha, h.lambda);
    } else {
        op.params.alpha = h.alpha;
        op.params.lambda = h.lambda;
        op.params.lambda_star = ls;
        op.params.p = std::numeric_limits<double>::quiet_NaN();
        op.warnings.push_back("lambda below lambda*");
    }
    op.free_stiffness = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const int i = static_cast<int>(t.number(r, ci));
        const int j = static_cast<int>(t.number(r, cj));
        if (i < 0 || j < 0 || i >= n || j >= n) throw ParameterError("csv: index out of range");
        const double v = t.number(r, cv);
        op.free_stiffness(i, j) = v;
        op.free_stiffness(j, i) = v;
    }
    op.hardy_weight = lumped_hardy_weight(h.alpha, op.grid);
    op.stiffness = op.free_stiffness;
    op.stiffness.diagonal() += h.lambda * op.hardy_weight;
    op.mass = Eigen::Map<const Eigen::VectorXd>(op.grid.weights.data(), n);
    return op;
}

void write_spectrum_csv(std::ostream& os, const OperatorHeader& h, const SpectralDecomposition& dec,
                        bool with_vectors) {
    os << format_header(h) << '\n' << "k,eigenvalue";
    const int n = dec.size();
    if (with_vectors)
        for (int i = 0; i < n; ++i) os << ",v" << i;
    os << '\n';
    for (int k = 0; k < n; ++k) {
        os << k << ',' << format_double(dec.eigenvalues[k]);
        if (with_vectors)
            for (int i = 0; i < n; ++i) os << ',' << format_double(dec.eigenvectors(i, k));
        os << '\n';
    }
}

SpectrumFile read_spectrum_csv(std::istream& is) {
    const CsvTable t = read_csv(is);
    if (t.comments.empty()) throw ParameterError("csv: missing metadata line");
    SpectrumFile f;
    f.header = parse_header(t.comments.front());
    const int ce = t.column("eigenvalue");
    if (ce < 0) throw ParameterError("csv: spectrum file needs an eigenvalue column");
    const int n = static_cast<int>(t.rows.size());
    f.eigenvalues.resize(n);
    const int nvec = static_cast<int>(t.columns.size()) - 2;
    if (nvec > 0) f.eigenvectors.resize(nvec, n);
    for (int k = 0; k < n; ++k) {
        f.eigenvalues[k] = t.number(k, ce);
        for (int i = 0; i < nvec; ++i) f.eigenvectors(i, k) = t.number(k, i + 2);
    }
    return f;
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

double CsvTable::number(std::size_t row, int col) const {
    if (row >= rows.size() || col < 0 || static_cast<std::size_t>(col) >= rows[row].size())
        throw ParameterError("csv: cell out of range");
    return parse_double(rows[row][col]);
}

CsvTable read_csv(std::istream& is) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
            continue;
        }
        auto fields = split_csv_line(line);
        if (!have_header) {
            t.columns = std::move(fields);
            have_header = true;
        } else {
            if (fields.size() != t.columns.size())
                throw ParameterError("csv: row has " + std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(t.columns.size()));
            t.rows.push_back(std::move(fields));
        }
    }
    if (!have_header) throw ParameterError("csv: no header row");
    return t;
}

void write_csv(std::ostream& os, const CsvTable& table) {
    for (const auto& c : table.comments) os << c << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << quote_field(table.columns[i]);
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote_field(row[i]);
        os << '\n';
    }
}

} // namespace hardy
