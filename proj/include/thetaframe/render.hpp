#pragma once
// Deterministic SVG rendering: the semicircle lattice portrait of a
// coefficient grid (grayscale parity backgrounds, half-disk markers encoding
// |f| and Arg f) and simple polyline curve plots with dashed overlays.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thetaframe/core.hpp"
#include "thetaframe/frame.hpp"

namespace thetaframe {

struct RenderStyle {
    double cell_px = 40.0;       // pixels per lattice step
    double radius_scale = 0.5;   // marker radius per unit |f|, in cells
    double magnify = 1.0;        // radius multiplier (the paper's "x30")
    // background gray per parity class, lightest (even m, even n) to darkest
    // (odd, odd), as fractions of white
    std::array<double, 4> grayscale = {0.95, 0.85, 0.75, 0.65};
    bool show_axes = true;
};

namespace detail {

// Fixed-notation with 6 significant digits; trailing zeros trimmed.  This is
// the only number formatter used in SVG output, which makes renders
// byte-deterministic across platforms.
inline std::string fmt6(double x) {
    if (x == 0.0) return "0";  // covers -0.0
    const int lead = static_cast<int>(std::floor(std::log10(std::abs(x))));
    int decimals = 5 - lead;
    if (decimals < 0) decimals = 0;
    if (decimals > 17) decimals = 17;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s(buf);
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

inline std::string gray_hex(double level) {
    int v = static_cast<int>(std::lround(level * 255.0));
    v = std::min(255, std::max(0, v));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", v, v, v);
    return buf;
}

inline int parity_index(int m, int n) {
    return ((m % 2 != 0) ? 2 : 0) + ((n % 2 != 0) ? 1 : 0);
}

inline std::string style_comment(const RenderStyle& st) {
    std::string s = "cell_px=" + fmt6(st.cell_px) + " radius_scale=" + fmt6(st.radius_scale) +
                    " magnify=" + fmt6(st.magnify) + " grayscale=" + fmt6(st.grayscale[0]);
    for (int i = 1; i < 4; ++i) s += "," + fmt6(st.grayscale[i]);
    s += st.show_axes ? " axes=on" : " axes=off";
    return s;
}

}  // namespace detail

// Lattice portrait: one cell per site at (m cell, -n cell) — time rightward,
// frequency upward — filled with the parity gray; sites with |f| above the
// visibility floor carry a disk of radius radius_scale*magnify*|f|*cell split
// into black and white halves by a diameter rotated by Arg f.  Zero phase
// puts the black half-disk at the bottom; phase grows counterclockwise.
// Output is byte-deterministic: fixed element order (backgrounds row-major,
// axes, markers row-major) and fixed number formatting.
inline std::string render_grid(const CoeffGrid& g, const RenderStyle& style,
                               const std::string& extra_meta = "") {
    using detail::fmt6;
    const double cell = style.cell_px;
    const double W = (2 * g.M + 1) * cell;
    const double H = (2 * g.N + 1) * cell;
    const double floor_mag = 1e-4 / style.magnify;

    // marker survey first so clip warnings can sit in the header
    int clipped = 0, markers = 0;
    for (const auto& v : g.values) {
        const double mag = std::abs(v);
        if (mag < floor_mag) continue;
        ++markers;
        if (style.radius_scale * style.magnify * mag * cell > cell) ++clipped;
    }

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt6(W)
        << "\" height=\"" << fmt6(H) << "\" viewBox=\"0 0 " << fmt6(W) << " " << fmt6(H)
        << "\">\n";
    out << "<!-- thetaframe " << kVersion << " | M=" << g.M << " N=" << g.N << " | "
        << detail::style_comment(style);
    if (!extra_meta.empty()) out << " | " << extra_meta;
    out << " -->\n";
    if (clipped > 0)
        out << "<!-- warning: " << clipped << " marker(s) clipped to cell size -->\n";

    // backgrounds, row-major (m outer, n inner)
    for (int m = -g.M; m <= g.M; ++m)
        for (int n = -g.N; n <= g.N; ++n) {
            const double x = (m + g.M) * cell;
            const double y = (g.N - n) * cell;
            out << "<rect x=\"" << fmt6(x) << "\" y=\"" << fmt6(y) << "\" width=\"" << fmt6(cell)
                << "\" height=\"" << fmt6(cell) << "\" fill=\""
                << detail::gray_hex(style.grayscale[static_cast<std::size_t>(
                       detail::parity_index(m, n))])
                << "\"/>\n";
        }

    if (style.show_axes) {
        const double x0 = (g.M + 0.5) * cell;
        const double y0 = (g.N + 0.5) * cell;
        out << "<line x1=\"0\" y1=\"" << fmt6(y0) << "\" x2=\"" << fmt6(W) << "\" y2=\""
            << fmt6(y0) << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
        out << "<line x1=\"" << fmt6(x0) << "\" y1=\"0\" x2=\"" << fmt6(x0) << "\" y2=\""
            << fmt6(H) << "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    }

    // markers, row-major.  The radius enters solely through the scale() on the
    // two half-disk paths, so changing magnify changes exactly those values.
    for (int m = -g.M; m <= g.M; ++m)
        for (int n = -g.N; n <= g.N; ++n) {
            const std::complex<double> v = g.at(m, n);
            const double mag = std::abs(v);
            if (mag < floor_mag) continue;
            double r = style.radius_scale * style.magnify * mag * cell;
            if (r > cell) r = cell;
            const double cx = (m + g.M + 0.5) * cell;
            const double cy = (g.N - n + 0.5) * cell;
            // SVG y points down, so counterclockwise phase = negative rotation
            const double deg = -std::arg(v) * 180.0 / kPi;
            out << "<g transform=\"translate(" << fmt6(cx) << " " << fmt6(cy) << ") rotate("
                << fmt6(deg) << ")\">";
            // unit half-disks; sweep through (0,+1), the visual bottom
            out << "<path d=\"M 1 0 A 1 1 0 0 1 -1 0 Z\" fill=\"#000000\" transform=\"scale("
                << fmt6(r) << ")\"/>";
            out << "<path d=\"M -1 0 A 1 1 0 0 1 1 0 Z\" fill=\"#FFFFFF\" transform=\"scale("
                << fmt6(r) << ")\"/>";
            out << "</g>\n";
        }

    out << "</svg>\n";
    return out.str();
}

struct CurveOverlay {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

// Polyline plot with linear axes; non-finite y values (the attenuation curve's
// -infinity at waveform zeros) split the polyline with a gap.  Overlays are
// dashed, in listed order.
inline std::string render_curve(const std::vector<std::pair<double, double>>& points,
                                const RenderStyle& style,
                                const std::vector<CurveOverlay>& overlays = {},
                                const std::string& extra_meta = "") {
    using detail::fmt6;
    if (points.size() < 2) throw std::invalid_argument("render_curve: need at least 2 points");
    const double W = 640.0, H = 480.0;
    const double ml = 64.0, mr = 16.0, mt = 16.0, mb = 44.0;

    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    bool first = true;
    const auto absorb = [&](const std::vector<std::pair<double, double>>& pts) {
        for (const auto& [x, y] : pts) {
            if (!std::isfinite(y) || !std::isfinite(x)) continue;
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    };
    absorb(points);
    for (const auto& ov : overlays) absorb(ov.points);
    if (first) throw std::invalid_argument("render_curve: no finite points");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    const auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt6(W)
        << "\" height=\"" << fmt6(H) << "\" viewBox=\"0 0 " << fmt6(W) << " " << fmt6(H)
        << "\">\n";
    out << "<!-- thetaframe " << kVersion << " | curve | " << detail::style_comment(style);
    if (!extra_meta.empty()) out << " | " << extra_meta;
    out << " -->\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << fmt6(W) << "\" height=\"" << fmt6(H)
        << "\" fill=\"#FFFFFF\"/>\n";
    out << "<rect x=\"" << fmt6(ml) << "\" y=\"" << fmt6(mt) << "\" width=\"" << fmt6(W - ml - mr)
        << "\" height=\"" << fmt6(H - mt - mb)
        << "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    // ticks and labels, 4 per axis
    for (int i = 0; i <= 3; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 3.0;
        const double yv = ymin + (ymax - ymin) * i / 3.0;
        out << "<line x1=\"" << fmt6(px(xv)) << "\" y1=\"" << fmt6(H - mb) << "\" x2=\""
            << fmt6(px(xv)) << "\" y2=\"" << fmt6(H - mb + 5) << "\" stroke=\"#404040\"/>\n";
        out << "<text x=\"" << fmt6(px(xv)) << "\" y=\"" << fmt6(H - mb + 18)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">" << fmt6(xv)
            << "</text>\n";
        out << "<line x1=\"" << fmt6(ml - 5) << "\" y1=\"" << fmt6(py(yv)) << "\" x2=\""
            << fmt6(ml) << "\" y2=\"" << fmt6(py(yv)) << "\" stroke=\"#404040\"/>\n";
        out << "<text x=\"" << fmt6(ml - 8) << "\" y=\"" << fmt6(py(yv) + 4)
            << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" << fmt6(yv)
            << "</text>\n";
    }

    const auto polylines = [&](const std::vector<std::pair<double, double>>& pts,
                               const std::string& stroke, const std::string& dash) {
        std::vector<std::string> segs;
        std::string cur;
        int live = 0;
        for (const auto& [x, y] : pts) {
            if (!std::isfinite(y) || !std::isfinite(x)) {  // gap
                if (live >= 2) segs.push_back(cur);
                cur.clear();
                live = 0;
                continue;
            }
            if (live) cur += " ";
            cur += fmt6(px(x)) + "," + fmt6(py(y));
            ++live;
        }
        if (live >= 2) segs.push_back(cur);
        for (const auto& s : segs) {
            out << "<polyline points=\"" << s << "\" fill=\"none\" stroke=\"" << stroke
                << "\" stroke-width=\"1.5\"";
            if (!dash.empty()) out << " stroke-dasharray=\"" << dash << "\"";
            out << "/>\n";
        }
    };

    polylines(points, "#000000", "");
    static const char* kDashes[] = {"6,3", "2,3", "8,3,2,3", "4,2"};
    for (std::size_t i = 0; i < overlays.size(); ++i)
        polylines(overlays[i].points, "#606060", kDashes[i % 4]);

    // legend for the overlays
    for (std::size_t i = 0; i < overlays.size(); ++i) {
        const double ly = mt + 16.0 + 16.0 * static_cast<double>(i);
        out << "<line x1=\"" << fmt6(W - mr - 150) << "\" y1=\"" << fmt6(ly - 4) << "\" x2=\""
            << fmt6(W - mr - 120) << "\" y2=\"" << fmt6(ly - 4)
            << "\" stroke=\"#606060\" stroke-width=\"1.5\" stroke-dasharray=\"" << kDashes[i % 4]
            << "\"/>\n";
        out << "<text x=\"" << fmt6(W - mr - 114) << "\" y=\"" << fmt6(ly)
            << "\" font-family=\"monospace\" font-size=\"11\">" << overlays[i].label
            << "</text>\n";
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace thetaframe
