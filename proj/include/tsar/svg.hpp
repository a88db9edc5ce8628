#ifndef TSAR_SVG_HPP
#define TSAR_SVG_HPP

#include "tsar/estimation.hpp"

#include <string>
#include <vector>

namespace tsar {

/// Minimal built-in SVG emitter: polyline plus axes, no external plotting
/// dependency. Figures are a convenience; CSV stays the data contract.
void write_svg_line_plot(const std::string& path, const std::vector<double>& xs,
                         const std::vector<double>& ys, const std::string& title);

/// Box plot from five-number summaries, one box per label.
void write_svg_box_plot(const std::string& path,
                        const std::vector<std::string>& labels,
                        const std::vector<FiveNumber>& boxes,
                        const std::string& title);

} // namespace tsar

#endif
