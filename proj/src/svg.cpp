#include "tsar/svg.hpp"

#include "tsar/common.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tsar {

namespace {

constexpr int kWidth = 900;
constexpr int kHeight = 420;
constexpr int kMargin = 50;

struct Range {
    double lo, hi;
    double map(double v, double pix_lo, double pix_hi) const {
        const double span = hi > lo ? hi - lo : 1.0;
        return pix_lo + (v - lo) / span * (pix_hi - pix_lo);
    }
};

Range span_of(const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double lo = *mn, hi = *mx;
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.04 * (hi - lo);
    return {lo - pad, hi + pad};
}

std::string fmt(double v) {
    std::ostringstream s;
    s.precision(4);
    s << v;
    return s.str();
}

void write_frame(std::ostream& out, const Range& xr, const Range& yr,
                 const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
    // axes
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin
        << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
        << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n";
    // corner labels
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(xr.lo) << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 16
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(xr.hi) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(yr.lo) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(yr.hi) << "</text>\n";
}

} // namespace

void write_svg_line_plot(const std::string& path, const std::vector<double>& xs,
                         const std::vector<double>& ys, const std::string& title) {
    if (xs.size() != ys.size() || xs.empty())
        throw ValidationError("svg plot: x/y size mismatch or empty");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    const Range xr = span_of(xs), yr = span_of(ys);
    write_frame(out, xr, yr, title);
    out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double px = xr.map(xs[i], kMargin, kWidth - kMargin);
        const double py = yr.map(ys[i], kHeight - kMargin, kMargin);
        out << fmt(px) << ',' << fmt(py) << ' ';
    }
    out << "\"/>\n</svg>\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

void write_svg_box_plot(const std::string& path,
                        const std::vector<std::string>& labels,
                        const std::vector<FiveNumber>& boxes,
                        const std::string& title) {
    if (labels.size() != boxes.size() || boxes.empty())
        throw ValidationError("svg box plot: label/box mismatch or empty");
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    std::vector<double> extremes;
    for (const auto& b : boxes) {
        extremes.push_back(b.min);
        extremes.push_back(b.max);
    }
    const Range yr = span_of(extremes);
    const Range xr{0.0, static_cast<double>(boxes.size())};
    write_frame(out, xr, yr, title);

    const double slot = (kWidth - 2.0 * kMargin) / static_cast<double>(boxes.size());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const auto& b = boxes[i];
        const double cx = kMargin + slot * (static_cast<double>(i) + 0.5);
        const double half = 0.22 * slot;
        auto y = [&](double v) { return yr.map(v, kHeight - kMargin, kMargin); };
        out << "<line x1=\"" << cx << "\" y1=\"" << y(b.min) << "\" x2=\"" << cx
            << "\" y2=\"" << y(b.max) << "\" stroke=\"black\"/>\n";
        out << "<rect x=\"" << cx - half << "\" y=\"" << y(b.q3) << "\" width=\""
            << 2 * half << "\" height=\"" << y(b.q1) - y(b.q3)
            << "\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - half << "\" y1=\"" << y(b.median) << "\" x2=\""
            << cx + half << "\" y2=\"" << y(b.median)
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << cx << "\" y=\"" << kHeight - kMargin + 16
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
            << labels[i] << "</text>\n";
    }
    out << "</svg>\n";
    if (!out) throw IoError("write to '" + path + "' failed");
}

} // namespace tsar
