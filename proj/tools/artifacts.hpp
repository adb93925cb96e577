#ifndef PCOMB_TOOLS_ARTIFACTS_HPP
#define PCOMB_TOOLS_ARTIFACTS_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pcomb::cli {

// Column-oriented table written as CSV with a header row.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    bool empty() const { return header.empty(); }

    std::string csv(const std::string& preamble) const
    {
        std::ostringstream out;
        out << std::setprecision(17);
        out << preamble;
        for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
        out << '\n';
        for (const auto& r : rows) {
            for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << r[k];
            out << '\n';
        }
        return out.str();
    }
};

inline std::string xml_escape(const std::string& s)
{
    std::string o;
    for (char c : s) {
        switch (c) {
        case '<': o += "&lt;"; break;
        case '>': o += "&gt;"; break;
        case '&': o += "&amp;"; break;
        case '-': o += "&#45;"; break;  // keeps "--" out of comments
        default: o += c;
        }
    }
    return o;
}

// Plot frame: data box [x0, x1] x [y0, y1] mapped onto a fixed canvas.
class Svg {
public:
    Svg(double x0, double x1, double y0, double y1, std::string title, std::string xlabel, std::string ylabel)
        : x0_(x0), x1_(x1 > x0 ? x1 : x0 + 1), y0_(y0), y1_(y1 > y0 ? y1 : y0 + 1)
    {
        body_ << std::setprecision(6);
        body_ << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << xml_escape(title)
              << "</text>\n";
        body_ << "<text x=\"" << width / 2 << "\" y=\"" << height - 8 << "\" text-anchor=\"middle\" font-size=\"12\">"
              << xml_escape(xlabel) << "</text>\n";
        body_ << "<text x=\"14\" y=\"" << height / 2 << "\" transform=\"rotate(-90 14 " << height / 2
              << ")\" text-anchor=\"middle\" font-size=\"12\">" << xml_escape(ylabel) << "</text>\n";
        body_ << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << width - left - right << "\" height=\""
              << height - top - bottom << "\" fill=\"none\" stroke=\"black\"/>\n";
        for (int k = 0; k <= 4; ++k) {
            const double xv = x0_ + (x1_ - x0_) * k / 4, yv = y0_ + (y1_ - y0_) * k / 4;
            body_ << "<text x=\"" << px(xv) << "\" y=\"" << height - bottom + 16 << "\" text-anchor=\"middle\" font-size=\"10\">"
                  << xv << "</text>\n";
            body_ << "<text x=\"" << left - 4 << "\" y=\"" << py(yv) + 3 << "\" text-anchor=\"end\" font-size=\"10\">" << yv
                  << "</text>\n";
        }
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& colour)
    {
        body_ << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1\" points=\"";
        for (const auto& [x, y] : pts) body_ << px(x) << ',' << py(y) << ' ';
        body_ << "\"/>\n";
    }

    void hline(double y, const std::string& colour)
    {
        body_ << "<line x1=\"" << left << "\" x2=\"" << width - right << "\" y1=\"" << py(y) << "\" y2=\"" << py(y)
              << "\" stroke=\"" << colour << "\" stroke-dasharray=\"4 3\"/>\n";
    }

    void circle(double x, double y, double r_data, const std::string& colour)
    {
        const double r = r_data * (width - left - right) / (x1_ - x0_);
        body_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << r << "\" fill=\"none\" stroke=\"" << colour
              << "\"/>\n";
    }

    std::string str(const std::string& metadata) const
    {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
        out << "<metadata>" << xml_escape(metadata) << "</metadata>\n";
        out << body_.str() << "</svg>\n";
        return out.str();
    }

    static constexpr int width = 720, height = 480, left = 60, right = 20, top = 30, bottom = 40;

private:
    double px(double x) const { return left + (x - x0_) / (x1_ - x0_) * (width - left - right); }
    double py(double y) const { return height - bottom - (y - y0_) / (y1_ - y0_) * (height - top - bottom); }

    double x0_, x1_, y0_, y1_;
    std::ostringstream body_;
};

} // namespace pcomb::cli

#endif // PCOMB_TOOLS_ARTIFACTS_HPP
