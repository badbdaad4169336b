#pragma once

// Self-contained SVG scatter plot: one colour per class plus a legend.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace sylsep {

struct ScatterPoint {
    double x;
    double y;
    int cls;
};

namespace svg_detail {

inline constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += ch;
        }
    }
    return out;
}

}  // namespace svg_detail

inline std::string render_scatter_svg(const std::vector<ScatterPoint>& points, const std::vector<std::string>& class_labels,
                                      const std::string& x_title = "LD1", const std::string& y_title = "LD2") {
    using svg_detail::num;
    constexpr double width = 640, height = 480, left = 60, right = 130, top = 20, bottom = 50;
    const double pw = width - left - right, ph = height - top - bottom;

    double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
    if (!points.empty()) {
        x0 = x1 = points.front().x;
        y0 = y1 = points.front().y;
        for (const auto& p : points) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
    }
    auto pad = [](double& lo, double& hi) {
        const double span = hi - lo;
        const double m = span > 0 ? 0.05 * span : 1.0;
        lo -= m;
        hi += m;
    };
    pad(x0, x1);
    pad(y0, y1);
    auto sx = [&](double v) { return left + (v - x0) / (x1 - x0) * pw; };
    auto sy = [&](double v) { return top + ph - (v - y0) / (y1 - y0) * ph; };

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
           "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + num(width) + "\" height=\"" + num(height) + "\" fill=\"white\"/>\n";
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = x0 + (x1 - x0) * t / 4.0, fy = y0 + (y1 - y0) * t / 4.0;
        out += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(top + ph + 16) +
               "\" font-size=\"10\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
        out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(sy(fy) + 3) +
               "\" font-size=\"10\" text-anchor=\"end\">" + num(fy) + "</text>\n";
    }
    out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 10) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + svg_detail::escape(x_title) + "</text>\n";
    out += "<text x=\"14\" y=\"" + num(top + ph / 2) + "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 " +
           num(top + ph / 2) + ")\">" + svg_detail::escape(y_title) + "</text>\n";

    constexpr std::size_t palette_size = std::size(svg_detail::kPalette);
    for (const auto& p : points) {
        const char* colour = svg_detail::kPalette[static_cast<std::size_t>(p.cls) % palette_size];
        out += "<circle cx=\"" + num(sx(p.x)) + "\" cy=\"" + num(sy(p.y)) + "\" r=\"3\" fill=\"" + colour +
               "\" fill-opacity=\"0.7\"/>\n";
    }
    for (std::size_t k = 0; k < class_labels.size(); ++k) {
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        out += "<circle cx=\"" + num(left + pw + 16) + "\" cy=\"" + num(ly) + "\" r=\"5\" fill=\"" +
               svg_detail::kPalette[k % palette_size] + "\"/>\n";
        out += "<text x=\"" + num(left + pw + 26) + "\" y=\"" + num(ly + 4) + "\" font-size=\"12\">" +
               svg_detail::escape(class_labels[k]) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace sylsep
