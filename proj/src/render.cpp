#include "varj/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "varj/error.hpp"

namespace varj {

double round_sig10(double v) {
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return std::strtod(buf, nullptr);
}

std::string format_sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_density_svg(const std::string& path, const std::vector<double>& xs,
                       const std::vector<std::pair<std::string, std::vector<double>>>& curves) {
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    const int width = 720, height = 480;
    const int ml = 60, mr = 20, mt = 20, mb = 40;

    double ymax = 0.0;
    for (const auto& [name, ys] : curves) {
        if (ys.size() != xs.size()) fail("length-mismatch", "curve '" + name + "' does not match the grid");
        for (double y : ys) ymax = std::max(ymax, y);
    }
    if (!(ymax > 0.0)) ymax = 1.0;
    const double xmin = xs.front(), xmax = xs.back();

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
    auto py = [&](double y) { return height - mb - y / ymax * (height - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double x = xmin + (xmax - xmin) * i / 4.0;
        svg << "<text x=\"" << px(x) << "\" y=\"" << height - mb + 16
            << "\" font-size=\"11\" text-anchor=\"middle\">" << format_sig10(round_sig10(x))
            << "</text>\n";
        const double y = ymax * i / 4.0;
        svg << "<text x=\"" << ml - 6 << "\" y=\"" << py(y) + 4
            << "\" font-size=\"11\" text-anchor=\"end\">" << format_sig10(round_sig10(y))
            << "</text>\n";
    }
    int ci = 0;
    for (const auto& [name, ys] : curves) {
        const char* color = kColors[ci % 5];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < xs.size(); ++i) {
            svg << px(xs[i]) << "," << py(ys[i]) << " ";
        }
        svg << "\"/>\n";
        svg << "<text x=\"" << width - mr - 150 << "\" y=\"" << mt + 16 + 16 * ci
            << "\" font-size=\"12\" fill=\"" << color << "\">" << name << "</text>\n";
        ++ci;
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) fail("io-error", "cannot open '" + path + "' for writing");
    out << svg.str();
    if (!out) fail("io-error", "failed to write '" + path + "'");
}

}  // namespace varj
