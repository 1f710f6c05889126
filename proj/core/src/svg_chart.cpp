#include "leosim/svg_chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "leosim/results_io.hpp"

namespace leosim {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool empty() const { return lo > hi; }
};

}  // namespace

std::pair<double, double> range_with_margin(double lo, double hi, double margin) {
    if (lo > hi) std::swap(lo, hi);
    if (hi - lo == 0.0) return {lo - 1.0, hi + 1.0};
    const double pad = (hi - lo) * margin;
    return {lo - pad, hi + pad};
}

std::string LineChart::render() const {
    const double left = 70, right = width - 70.0, top = 40, bottom = height - 60.0;

    Extent xs, yl, yr;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xs.add(x);
            (s.right_axis ? yr : yl).add(y);
        }
    const auto [x0, x1] = xs.empty() ? std::pair{0.0, 1.0} : range_with_margin(xs.lo, xs.hi);
    const auto [l0, l1] = yl.empty() ? std::pair{0.0, 1.0} : range_with_margin(yl.lo, yl.hi);
    const auto [r0, r1] = yr.empty() ? std::pair{0.0, 1.0} : range_with_margin(yr.lo, yr.hi);

    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
    auto py = [&](double y, bool r) {
        const double lo = r ? r0 : l0, hi = r ? r1 : l1;
        return bottom - (y - lo) / (hi - lo) * (bottom - top);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
       << "</text>\n";
    os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left << "\" height=\"" << bottom - top
       << "\" fill=\"none\" stroke=\"#333\"/>\n";

    for (int i = 0; i <= 4; ++i) {
        const double fx = x0 + (x1 - x0) * i / 4.0;
        const double fl = l0 + (l1 - l0) * i / 4.0;
        const double fr = r0 + (r1 - r0) * i / 4.0;
        const double gy = bottom - (bottom - top) * i / 4.0;
        os << "<text x=\"" << px(fx) << "\" y=\"" << bottom + 16 << "\" text-anchor=\"middle\">"
           << format_number(fx, 4) << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << gy + 4 << "\" text-anchor=\"end\">" << format_number(fl, 4)
           << "</text>\n";
        if (!yr.empty())
            os << "<text x=\"" << right + 6 << "\" y=\"" << gy + 4 << "\">" << format_number(fr, 3) << "</text>\n";
        os << "<line x1=\"" << left << "\" x2=\"" << right << "\" y1=\"" << gy << "\" y2=\"" << gy
           << "\" stroke=\"#ddd\"/>\n";
    }
    os << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">"
       << escape(x_label) << "</text>\n";
    os << "<text transform=\"translate(18," << (top + bottom) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
       << escape(left_label) << "</text>\n";
    if (!yr.empty())
        os << "<text transform=\"translate(" << width - 14 << "," << (top + bottom) / 2
           << ") rotate(90)\" text-anchor=\"middle\">" << escape(right_label) << "</text>\n";

    int legend = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\""
           << (s.right_axis ? " stroke-dasharray=\"6 3\"" : "") << " points=\"";
        bool first = true;
        for (const auto& [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            os << (first ? "" : " ") << px(x) << "," << py(y, s.right_axis);
            first = false;
        }
        os << "\"/>\n";
        for (const auto& [x, y] : s.points)
            if (std::isfinite(x) && std::isfinite(y))
                os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y, s.right_axis) << "\" r=\"3\" fill=\"" << s.color
                   << "\"/>\n";
        const double ly = top + 14 + 16 * legend++;
        os << "<line x1=\"" << left + 10 << "\" x2=\"" << left + 30 << "\" y1=\"" << ly << "\" y2=\"" << ly
           << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + 36 << "\" y=\"" << ly + 4 << "\">" << escape(s.label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace leosim
