#include "crimenews/svg.hpp"

#include <algorithm>
#include <cmath>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::svg {
namespace {

constexpr double kMargin = 60.0;

struct Axis {
    double lo = 0.0;
    double hi = 1.0;

    double map(double v, double from, double to) const {
        if (hi == lo) return (from + to) / 2.0;
        return from + (v - lo) / (hi - lo) * (to - from);
    }
};

Axis range_of(auto begin, auto end, auto get) {
    Axis a{0.0, 0.0};
    bool first = true;
    for (auto it = begin; it != end; ++it) {
        const double v = get(*it);
        if (first) {
            a.lo = a.hi = v;
            first = false;
        } else {
            a.lo = std::min(a.lo, v);
            a.hi = std::max(a.hi, v);
        }
    }
    return a;
}

// Two decimals is enough for pixel coordinates and keeps files small.
std::string px(double v) {
    const double r = std::round(v * 100.0) / 100.0;
    return io::format_double(r == 0.0 ? 0.0 : r);
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string open(std::string_view title, std::string_view x_label, std::string_view y_label, const Axis& x,
                 const Axis& y) {
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-size=\"18\">" + xml_escape(title) + "</text>\n";
    s += "<line x1=\"60\" y1=\"540\" x2=\"740\" y2=\"540\" stroke=\"black\"/>\n";
    s += "<line x1=\"60\" y1=\"60\" x2=\"60\" y2=\"540\" stroke=\"black\"/>\n";
    s += "<text x=\"400\" y=\"580\" text-anchor=\"middle\" font-size=\"14\">" + xml_escape(x_label) + "</text>\n";
    s += "<text x=\"20\" y=\"300\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 300)\">" +
         xml_escape(y_label) + "</text>\n";
    s += "<text x=\"60\" y=\"556\" font-size=\"10\">" + io::format_double(x.lo) + "</text>\n";
    s += "<text x=\"740\" y=\"556\" text-anchor=\"end\" font-size=\"10\">" + io::format_double(x.hi) + "</text>\n";
    s += "<text x=\"56\" y=\"540\" text-anchor=\"end\" font-size=\"10\">" + io::format_double(y.lo) + "</text>\n";
    s += "<text x=\"56\" y=\"66\" text-anchor=\"end\" font-size=\"10\">" + io::format_double(y.hi) + "</text>\n";
    return s;
}

}  // namespace

std::string_view color_for(long long group) {
    if (group < 0) return kNoiseColor;
    return kPalette[static_cast<std::size_t>(group) % kPalette.size()];
}

std::string scatter(std::span<const Point> points, std::string_view title, std::string_view x_label,
                    std::string_view y_label) {
    const Axis x = range_of(points.begin(), points.end(), [](const Point& p) { return p.x; });
    const Axis y = range_of(points.begin(), points.end(), [](const Point& p) { return p.y; });
    std::string s = open(title, x_label, y_label, x, y);
    for (const auto& p : points) {
        s += "<circle cx=\"" + px(x.map(p.x, kMargin, kWidth - kMargin)) + "\" cy=\"" +
             px(y.map(p.y, kHeight - kMargin, kMargin)) + "\" r=\"3\" fill=\"" + std::string(color_for(p.group)) +
             "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string line(std::span<const double> xs, std::span<const double> ys, std::string_view title,
                 std::string_view x_label, std::string_view y_label, std::optional<std::size_t> highlight) {
    if (xs.size() != ys.size()) raise(ErrorCode::InvalidArgument, "x and y lengths differ");
    const Axis x = range_of(xs.begin(), xs.end(), [](double v) { return v; });
    const Axis y = range_of(ys.begin(), ys.end(), [](double v) { return v; });
    std::string s = open(title, x_label, y_label, x, y);
    std::string path;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!path.empty()) path += ' ';
        path += px(x.map(xs[i], kMargin, kWidth - kMargin)) + "," + px(y.map(ys[i], kHeight - kMargin, kMargin));
    }
    s += "<polyline points=\"" + path + "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const bool mark = highlight && *highlight == i;
        s += "<circle cx=\"" + px(x.map(xs[i], kMargin, kWidth - kMargin)) + "\" cy=\"" +
             px(y.map(ys[i], kHeight - kMargin, kMargin)) + "\" r=\"" + (mark ? "6" : "3") + "\" fill=\"" +
             (mark ? "#d62728" : "#1f77b4") + "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

}  // namespace crimenews::svg
