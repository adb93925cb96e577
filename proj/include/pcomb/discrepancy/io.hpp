#ifndef PCOMB_DISCREPANCY_IO_HPP
#define PCOMB_DISCREPANCY_IO_HPP

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "types.hpp"

namespace pcomb {

// Matrix Market: coordinate or array layout, real or integer field, general
// symmetry. Entries that are not listed in coordinate layout are zero.
inline Eigen::MatrixXd read_matrix_market(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw invalid_argument("empty Matrix Market input");
    std::string lower = line;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    std::istringstream hdr(lower);
    std::string banner, object, layout, field, symmetry;
    hdr >> banner >> object >> layout >> field >> symmetry;
    if (banner != "%%matrixmarket" || object != "matrix")
        throw invalid_argument("missing %%MatrixMarket matrix header");
    if (layout != "coordinate" && layout != "array") throw invalid_argument("unsupported layout: " + layout);
    if (field != "real" && field != "integer" && field != "double")
        throw invalid_argument("unsupported field: " + field);
    if (symmetry != "general" && symmetry != "symmetric")
        throw invalid_argument("unsupported symmetry: " + symmetry);
    const bool sym = symmetry == "symmetric";

    auto next_data_line = [&](std::string& out) {
        while (std::getline(in, out)) {
            auto p = out.find_first_not_of(" \t\r");
            if (p == std::string::npos || out[p] == '%') continue;
            return true;
        }
        return false;
    };

    if (!next_data_line(line)) throw invalid_argument("missing size line");
    std::istringstream sz(line);
    long rows = -1, cols = -1, nnz = -1;
    if (layout == "coordinate") {
        if (!(sz >> rows >> cols >> nnz)) throw invalid_argument("bad size line");
    } else if (!(sz >> rows >> cols)) {
        throw invalid_argument("bad size line");
    }
    if (rows < 0 || cols < 0) throw invalid_argument("negative dimensions");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);

    if (layout == "coordinate") {
        for (long k = 0; k < nnz; ++k) {
            if (!next_data_line(line)) throw invalid_argument("fewer entries than declared");
            std::istringstream es(line);
            long i, j;
            double v;
            if (!(es >> i >> j >> v)) throw invalid_argument("bad entry line: " + line);
            if (i < 1 || i > rows || j < 1 || j > cols) throw invalid_argument("entry index out of range");
            m(i - 1, j - 1) = v;
            if (sym) m(j - 1, i - 1) = v;
        }
    } else {
        for (long j = 0; j < cols; ++j)
            for (long i = sym ? j : 0; i < rows; ++i) {
                if (!next_data_line(line)) throw invalid_argument("fewer entries than declared");
                double v;
                std::istringstream es(line);
                if (!(es >> v)) throw invalid_argument("bad entry line: " + line);
                m(i, j) = v;
                if (sym) m(j, i) = v;
            }
    }
    return m;
}

inline void write_matrix_market(std::ostream& out, const Eigen::MatrixXd& m)
{
    long nnz = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) nnz += m(i, j) != 0.0;
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
}

// One edge per line, whitespace-separated 1-based vertex ids. Blank lines and
// lines starting with '#' are skipped. n defaults to the largest id seen.
inline Hypergraph read_hypergraph(std::istream& in, std::size_t n = 0)
{
    std::vector<std::vector<std::size_t>> edges;
    std::size_t max_id = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto p = line.find_first_not_of(" \t\r");
        if (p == std::string::npos || line[p] == '#') continue;
        std::istringstream ls(line);
        std::vector<std::size_t> e;
        std::string tok;
        while (ls >> tok) {
            std::size_t used = 0;
            unsigned long long id = 0;
            try {
                id = std::stoull(tok, &used);
            } catch (const std::exception&) {
                throw invalid_argument("bad vertex id: " + tok);
            }
            if (used != tok.size() || id == 0) throw invalid_argument("vertex ids are positive integers: " + tok);
            e.push_back(static_cast<std::size_t>(id - 1));
            max_id = std::max<std::size_t>(max_id, id);
        }
        edges.push_back(std::move(e));
    }
    if (n == 0) n = max_id;
    if (max_id > n) throw invalid_argument("vertex id exceeds declared ground set");
    return Hypergraph(n, std::move(edges));
}

inline void write_hypergraph(std::ostream& out, const Hypergraph& h)
{
    for (const auto& e : h.edges()) {
        for (std::size_t k = 0; k < e.size(); ++k) out << (k ? " " : "") << e[k] + 1;
        out << '\n';
    }
}

} // namespace pcomb

#endif // PCOMB_DISCREPANCY_IO_HPP
