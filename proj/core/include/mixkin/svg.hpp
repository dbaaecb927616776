#ifndef MIXKIN_SVG_HPP
#define MIXKIN_SVG_HPP

#include <string>
#include <vector>

namespace mixkin {

struct SvgSeries {
    std::string label;
    std::vector<double> y;
};

/// Minimal self-contained line chart; one polyline per series plus axes,
/// tick labels and a legend.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<double>& x, const std::vector<SvgSeries>& series);

} // namespace mixkin

#endif
