#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "djcm/io.hpp"

namespace djcm::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

const std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fixed(double v, int digits = 2) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

std::string label(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 4);
    return std::string(buf, res.ptr);
}

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

std::string header(const std::string& title) {
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
                    fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
                    "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title) +
         "</text>\n";
    return s;
}

}  // namespace

const std::vector<Rgb>& colormap() {
    // Viridis, sampled at nine evenly spaced anchors and linearly interpolated.
    static const std::vector<Rgb> lut = [] {
        constexpr std::array<std::array<double, 3>, 9> anchors{{{68, 1, 84},
                                                                {71, 44, 122},
                                                                {59, 81, 139},
                                                                {44, 113, 142},
                                                                {33, 144, 141},
                                                                {39, 173, 129},
                                                                {92, 200, 99},
                                                                {170, 220, 50},
                                                                {253, 231, 37}}};
        std::vector<Rgb> out(256);
        for (int i = 0; i < 256; ++i) {
            const double pos = i / 255.0 * 8.0;
            const int k = std::min(7, static_cast<int>(pos));
            const double w = pos - k;
            auto mix = [&](int c) {
                return static_cast<unsigned char>(std::lround(anchors[k][c] * (1.0 - w) + anchors[k + 1][c] * w));
            };
            out[static_cast<std::size_t>(i)] = {mix(0), mix(1), mix(2)};
        }
        return out;
    }();
    return lut;
}

std::string line_plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                      const std::vector<Line>& lines) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& l : lines) {
        for (double v : *l.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
        for (double v : *l.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (!(y1 > y0)) {
        y0 -= 0.5;
        y1 += 0.5;
    }
    const double pw = kWidth - kLeft - kRight;
    const double ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    std::string s = header(title);
    s += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) + "\" height=\"" +
         fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0;
        const double yv = y0 + (y1 - y0) * i / 4.0;
        s += "<text x=\"" + fixed(px(xv)) + "\" y=\"" + fixed(kTop + ph + 16) + "\" text-anchor=\"middle\">" +
             label(xv) + "</text>\n";
        s += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(yv) + 4) + "\" text-anchor=\"end\">" +
             label(yv) + "</text>\n";
    }
    s += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 10) + "\" text-anchor=\"middle\">" +
         escape(x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + fixed(kTop + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fixed(kTop + ph / 2) + ")\">" + escape(y_label) + "</text>\n";

    for (std::size_t li = 0; li < lines.size(); ++li) {
        const auto& l = lines[li];
        const char* color = kPalette[li % kPalette.size()];
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1\" points=\"";
        for (std::size_t i = 0; i < l.x->size(); ++i) {
            if (i) s += ' ';
            s += fixed(px((*l.x)[i])) + "," + fixed(py((*l.y)[i]));
        }
        s += "\"/>\n";
        const double ly = kTop + 14.0 + 16.0 * li;
        s += "<line x1=\"" + fixed(kLeft + pw - 90) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" + fixed(kLeft + pw - 70) +
             "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"" + color + "\"/>\n";
        s += "<text x=\"" + fixed(kLeft + pw - 64) + "\" y=\"" + fixed(ly) + "\">" + escape(l.label) + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

std::string heatmap(const std::string& title, const HusimiGrid& g) {
    const auto& lut = colormap();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : g.values) lo = std::min(lo, v), hi = std::max(hi, v);
    const double span = hi > lo ? hi - lo : 1.0;

    const double side = std::min(kWidth - kLeft - 110.0, kHeight - kTop - kBottom);
    const double nx = static_cast<double>(g.x_axis.size());
    const double ny = static_cast<double>(g.y_axis.size());
    const double cw = side / nx;
    const double ch = side / ny;

    std::string s = header(title);
    s += "<g shape-rendering=\"crispEdges\">\n";
    for (std::size_t iy = 0; iy < g.y_axis.size(); ++iy) {
        for (std::size_t ix = 0; ix < g.x_axis.size(); ++ix) {
            const auto idx = static_cast<std::size_t>(std::lround((g.at(ix, iy) - lo) / span * 255.0));
            const Rgb c = lut[std::min<std::size_t>(idx, 255)];
            // Row 0 is the smallest Im(beta): draw it at the bottom.
            const double x = kLeft + ix * cw;
            const double y = kTop + (ny - 1.0 - iy) * ch;
            s += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y) + "\" width=\"" + fixed(cw + 0.05) + "\" height=\"" +
                 fixed(ch + 0.05) + "\" fill=\"rgb(" + std::to_string(c.r) + "," + std::to_string(c.g) + "," +
                 std::to_string(c.b) + ")\"/>\n";
        }
    }
    s += "</g>\n";
    s += "<text x=\"" + fixed(kLeft + side / 2) + "\" y=\"" + fixed(kTop + side + 30) +
         "\" text-anchor=\"middle\">Re(beta) [" + label(g.x_axis.front()) + ", " + label(g.x_axis.back()) +
         "]</text>\n";
    s += "<text x=\"16\" y=\"" + fixed(kTop + side / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         fixed(kTop + side / 2) + ")\">Im(beta) [" + label(g.y_axis.front()) + ", " + label(g.y_axis.back()) +
         "]</text>\n";
    // Colour bar.
    const double bx = kLeft + side + 30.0;
    s += "<g shape-rendering=\"crispEdges\">\n";
    for (int i = 0; i < 256; ++i) {
        const Rgb c = lut[static_cast<std::size_t>(i)];
        s += "<rect x=\"" + fixed(bx) + "\" y=\"" + fixed(kTop + side * (1.0 - (i + 1) / 256.0)) +
             "\" width=\"16\" height=\"" + fixed(side / 256.0 + 0.05) + "\" fill=\"rgb(" + std::to_string(c.r) + "," +
             std::to_string(c.g) + "," + std::to_string(c.b) + ")\"/>\n";
    }
    s += "</g>\n";
    s += "<text x=\"" + fixed(bx + 22) + "\" y=\"" + fixed(kTop + 10) + "\">" + label(hi) + "</text>\n";
    s += "<text x=\"" + fixed(bx + 22) + "\" y=\"" + fixed(kTop + side) + "\">" + label(lo) + "</text>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace djcm::svg
