#pragma once

// Text serialization of operators and spectra.
//
// Every file starts with one metadata line
//   # N=<cells>,alpha=<a>,lambda=<l>,X=<X>,g=<g>
// followed by a CSV header row and data rows. Operators store the upper
// triangle of the lambda = 0 stiffness as (i,j,value); the grid, mass and
// Hardy weight are rebuilt from the metadata. Spectra store (k,eigenvalue)
// and optionally the eigenvector components as further columns v0, v1, ...

#include "hardy/assembly.hpp"
#include "hardy/spectral.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hardy {

struct OperatorHeader {
    int N = 0;
    double alpha = 0.0;
    double lambda = 0.0;
    double X = 0.0;
    double g = 0.0;
};

std::string format_header(const OperatorHeader& h);
OperatorHeader parse_header(const std::string& line);
OperatorHeader header_of(const DiscreteOperator& op);

// Shortest round-trip decimal form of v.
std::string format_double(double v);

void write_operator_csv(std::ostream& os, const DiscreteOperator& op);
DiscreteOperator read_operator_csv(std::istream& is);

void write_spectrum_csv(std::ostream& os, const OperatorHeader& h, const SpectralDecomposition& dec,
                        bool with_vectors = false);

struct SpectrumFile {
    OperatorHeader header;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // empty when the file had none
};

SpectrumFile read_spectrum_csv(std::istream& is);

// Generic table: comment lines starting with '#' are collected separately.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
    double number(std::size_t row, int col) const;
};

CsvTable read_csv(std::istream& is);
void write_csv(std::ostream& os, const CsvTable& table);

} // namespace hardy
