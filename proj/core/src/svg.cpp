#include "mixkin/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "mixkin/csv.hpp"
#include "mixkin/errors.hpp"

namespace mixkin {

namespace {
constexpr int kWidth = 720, kHeight = 480;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}
} // namespace

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<double>& x, const std::vector<SvgSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (double v : x) {
        xmin = std::min(xmin, v);
        xmax = std::max(xmax, v);
    }
    for (const auto& s : series) {
        for (double v : s.y) {
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) {
        ymax = ymin + 1.0;
        ymin -= 1.0;
    }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
        << "font-family=\"sans-serif\">" << title << "</text>\n";

    // axes and ticks
    out << "<g stroke=\"#333\" stroke-width=\"1\" font-size=\"11\" font-family=\"sans-serif\">\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + ph << "\" x2=\"" << kLeft + pw
        << "\" y2=\"" << kTop + ph << "\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kTop + ph << "\"/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 5.0;
        const double yv = ymin + (ymax - ymin) * t / 5.0;
        out << "<line x1=\"" << px(xv) << "\" y1=\"" << kTop + ph << "\" x2=\"" << px(xv)
            << "\" y2=\"" << kTop + ph + 4 << "\"/>\n";
        out << "<text x=\"" << px(xv) << "\" y=\"" << kTop + ph + 18
            << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"#333\">" << fmt_tick(xv)
            << "</text>\n";
        out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << py(yv) << "\" x2=\"" << kLeft
            << "\" y2=\"" << py(yv) << "\"/>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(yv) + 4
            << "\" text-anchor=\"end\" stroke=\"none\" fill=\"#333\">" << fmt_tick(yv)
            << "</text>\n";
    }
    out << "</g>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const std::size_t npts = std::min(x.size(), series[s].y.size());
        for (std::size_t i = 0; i < npts; ++i) {
            out << px(x[i]) << ',' << py(series[s].y[i]) << ' ';
        }
        out << "\"/>\n";
        const double ly = kTop + 14.0 * static_cast<double>(s);
        out << "<line x1=\"" << kLeft + pw - 120 << "\" y1=\"" << ly << "\" x2=\""
            << kLeft + pw - 100 << "\" y2=\"" << ly << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << kLeft + pw - 95 << "\" y=\"" << ly + 4
            << "\" font-size=\"11\" font-family=\"sans-serif\">" << series[s].label << "</text>\n";
    }
    out << "</svg>\n";
}

} // namespace mixkin
