#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "optomech/errors.hpp"

namespace optomech {

/// One polyline of an SVG plot.
struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f6fb2";
};

/// Plot description for the built-in renderer: one shared x axis (linear or
/// logarithmic), any number of line series, fixed canvas size.
struct SvgPlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<SvgSeries> series;
    int width = 720;
    int height = 480;
};

namespace detail {

[[nodiscard]] inline std::string svg_num(double v) {
    std::array<char, 48> buf{};
    const int n = std::snprintf(buf.data(), buf.size(), "%.6g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n > 0 ? n : 0));
}

[[nodiscard]] inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
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

}  // namespace detail

/// Render a plot as a standalone SVG 1.1 document: plain axes with a few
/// ticks, one polyline per series, and a legend line of series labels.
/// Non-finite points (and non-positive x on a log axis) are skipped, breaking
/// the polyline there. Output is deterministic for identical input.
[[nodiscard]] inline std::string svg_render(const SvgPlot& plot) {
    const double ml = 70, mr = 20, mt = 40, mb = 55;  // margins
    const double w = plot.width, h = plot.height;
    const double pw = w - ml - mr, ph = h - mt - mb;

    const auto x_coord = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    const auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0.0);
    };

    // Data ranges in plot coordinates.
    double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
    bool any = false;
    for (const auto& s : plot.series) {
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) continue;
            const double cx = x_coord(s.x[i]);
            if (!any) {
                x_lo = x_hi = cx;
                y_lo = y_hi = s.y[i];
                any = true;
            } else {
                x_lo = std::min(x_lo, cx);
                x_hi = std::max(x_hi, cx);
                y_lo = std::min(y_lo, s.y[i]);
                y_hi = std::max(y_hi, s.y[i]);
            }
        }
    }
    if (!any) throw NumericalError("svg_render: no plottable points");
    if (x_hi - x_lo < 1e-12 * std::max(1.0, std::abs(x_lo))) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi - y_lo < 1e-12 * std::max(1.0, std::abs(y_lo))) {
        y_lo -= 0.5;
        y_hi += 0.5;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }

    const auto px = [&](double cx) { return ml + (cx - x_lo) / (x_hi - x_lo) * pw; };
    const auto py = [&](double y) { return mt + (y_hi - y) / (y_hi - y_lo) * ph; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(plot.width) + "\" height=\"" + std::to_string(plot.height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Frame.
    out += "<rect x=\"" + detail::svg_num(ml) + "\" y=\"" + detail::svg_num(mt) + "\" width=\"" +
           detail::svg_num(pw) + "\" height=\"" + detail::svg_num(ph) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    // Ticks: 6 on each axis, value labels in the margin.
    for (int i = 0; i <= 5; ++i) {
        const double t = static_cast<double>(i) / 5.0;
        const double cx = x_lo + t * (x_hi - x_lo);
        const double xv = plot.log_x ? std::pow(10.0, cx) : cx;
        const double gx = px(cx);
        out += "<line x1=\"" + detail::svg_num(gx) + "\" y1=\"" + detail::svg_num(mt + ph) +
               "\" x2=\"" + detail::svg_num(gx) + "\" y2=\"" + detail::svg_num(mt + ph + 5) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::svg_num(gx) + "\" y=\"" + detail::svg_num(mt + ph + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + detail::svg_num(xv) + "</text>\n";

        const double yv = y_lo + t * (y_hi - y_lo);
        const double gy = py(yv);
        out += "<line x1=\"" + detail::svg_num(ml - 5) + "\" y1=\"" + detail::svg_num(gy) +
               "\" x2=\"" + detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(gy) +
               "\" stroke=\"black\"/>\n";
        out += "<text x=\"" + detail::svg_num(ml - 8) + "\" y=\"" + detail::svg_num(gy + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + detail::svg_num(yv) + "</text>\n";
    }

    // Series polylines, broken at unusable points.
    for (const auto& s : plot.series) {
        std::string points;
        const auto flush = [&]() {
            if (points.empty()) return;
            out += "<polyline fill=\"none\" stroke=\"" + s.color +
                   "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
            points.clear();
        };
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
            if (!usable(s.x[i], s.y[i])) {
                flush();
                continue;
            }
            if (!points.empty()) points += " ";
            points += detail::svg_num(px(x_coord(s.x[i]))) + "," + detail::svg_num(py(s.y[i]));
        }
        flush();
    }

    // Title, axis labels, legend.
    out += "<text x=\"" + detail::svg_num(w / 2) + "\" y=\"22\" font-size=\"14\" "
           "text-anchor=\"middle\">" + detail::xml_escape(plot.title) + "</text>\n";
    out += "<text x=\"" + detail::svg_num(ml + pw / 2) + "\" y=\"" + detail::svg_num(h - 12) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + detail::xml_escape(plot.x_label) +
           "</text>\n";
    out += "<text x=\"16\" y=\"" + detail::svg_num(mt + ph / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           detail::svg_num(mt + ph / 2) + ")\">" + detail::xml_escape(plot.y_label) + "</text>\n";
    double legend_x = ml + 8;
    for (const auto& s : plot.series) {
        if (s.label.empty()) continue;
        out += "<rect x=\"" + detail::svg_num(legend_x) + "\" y=\"" + detail::svg_num(mt + 6) +
               "\" width=\"10\" height=\"10\" fill=\"" + s.color + "\"/>\n";
        out += "<text x=\"" + detail::svg_num(legend_x + 14) + "\" y=\"" +
               detail::svg_num(mt + 15) + "\" font-size=\"11\">" + detail::xml_escape(s.label) +
               "</text>\n";
        legend_x += 14.0 + 7.0 * static_cast<double>(s.label.size()) + 16.0;
    }
    out += "</svg>\n";
    return out;
}

/// Write the rendered plot to `path`, failing loudly on I/O errors.
inline void svg_write(const std::string& path, const SvgPlot& plot) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(ConfigErrc::io, 0, "cannot open '" + path + "' for writing");
    f << svg_render(plot);
    f.flush();
    if (!f) throw ConfigError(ConfigErrc::io, 0, "failed while writing '" + path + "'");
}

}  // namespace optomech
