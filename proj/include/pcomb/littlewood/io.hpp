#ifndef PCOMB_LITTLEWOOD_IO_HPP
#define PCOMB_LITTLEWOOD_IO_HPP

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "../core/error.hpp"

namespace pcomb {

// One signed integer per line, lowest degree first.
inline void write_coefficients(std::ostream& out, const std::vector<int>& coeffs)
{
    for (int c : coeffs) out << c << '\n';
}

inline std::vector<int> read_coefficients(std::istream& in)
{
    std::vector<int> c;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw invalid_argument("bad coefficient: " + tok);
        }
        if (used != tok.size()) throw invalid_argument("bad coefficient: " + tok);
        c.push_back(v);
    }
    return c;
}

} // namespace pcomb

#endif // PCOMB_LITTLEWOOD_IO_HPP
