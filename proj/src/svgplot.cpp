#include "thresholdlab/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "thresholdlab/errors.hpp"

namespace tlab {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 420;
constexpr int kMargin = 56;

struct axis_map {
    double x0, x1, y0, y1;
    double px(double x) const {
        return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin);
    }
    double py(double y) const {
        return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin);
    }
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

axis_map fit_axes(const plot_series& s, bool include_zero_y) {
    axis_map m{};
    m.x0 = *std::min_element(s.x.begin(), s.x.end());
    m.x1 = *std::max_element(s.x.begin(), s.x.end());
    m.y0 = *std::min_element(s.y.begin(), s.y.end());
    m.y1 = *std::max_element(s.y.begin(), s.y.end());
    if (include_zero_y) {
        m.y0 = std::min(m.y0, 0.0);
        m.y1 = std::max(m.y1, 0.0);
    }
    const auto pad = [](double& a, double& b) {
        const double w = (b - a) ? (b - a) : std::max(std::abs(a), 1.0);
        a -= 0.05 * w;
        b += 0.05 * w;
    };
    pad(m.x0, m.x1);
    pad(m.y0, m.y1);
    return m;
}

void open_svg(std::string& out) {
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kWidth) +
           "\" height=\"" + std::to_string(kHeight) + "\" viewBox=\"0 0 " +
           std::to_string(kWidth) + " " + std::to_string(kHeight) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void draw_axes(std::string& out, const axis_map& m, const std::string& xlabel,
               const std::string& ylabel) {
    const double left = kMargin, right = kWidth - kMargin;
    const double top = kMargin, bottom = kHeight - kMargin;
    out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(right - left) +
           "\" height=\"" + num(bottom - top) + "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = m.x0 + (m.x1 - m.x0) * i / 4;
        const double fy = m.y0 + (m.y1 - m.y0) * i / 4;
        out += "<text x=\"" + num(m.px(fx)) + "\" y=\"" + num(bottom + 18) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
        out += "<text x=\"" + num(left - 6) + "\" y=\"" + num(m.py(fy) + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + num(fy) + "</text>\n";
        out += "<line x1=\"" + num(m.px(fx)) + "\" y1=\"" + num(bottom) + "\" x2=\"" +
               num(m.px(fx)) + "\" y2=\"" + num(bottom - 4) + "\" stroke=\"black\"/>\n";
        out += "<line x1=\"" + num(left) + "\" y1=\"" + num(m.py(fy)) + "\" x2=\"" +
               num(left + 4) + "\" y2=\"" + num(m.py(fy)) + "\" stroke=\"black\"/>\n";
    }
    out += "<text x=\"" + num((left + right) / 2) + "\" y=\"" + num(double(kHeight) - 12) +
           "\" font-size=\"13\" text-anchor=\"middle\">" + xlabel + "</text>\n";
    out += "<text x=\"16\" y=\"" + num((top + bottom) / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
           num((top + bottom) / 2) + ")\">" + ylabel + "</text>\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("cannot open for writing: " + path);
    out << content;
    if (!out) throw error("write failed: " + path);
}

}  // namespace

void write_g_curve_svg(const std::string& path, const plot_series& curve, int kappa,
                       double energy) {
    if (curve.x.empty() || curve.x.size() != curve.y.size())
        throw error("write_g_curve_svg: empty or mismatched series");
    std::string out;
    open_svg(out);
    const axis_map m = fit_axes(curve, true);
    draw_axes(out, m, "x", "G(x)");
    // zero line: sign changes must be readable
    out += "<line x1=\"" + num(m.px(m.x0)) + "\" y1=\"" + num(m.py(0)) + "\" x2=\"" +
           num(m.px(m.x1)) + "\" y2=\"" + num(m.py(0)) +
           "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < curve.x.size(); ++i) {
        if (i) out += " ";
        out += num(m.px(curve.x[i])) + "," + num(m.py(curve.y[i]));
    }
    out += "\"/>\n";
    out += "<text x=\"" + num(double(kWidth) / 2) + "\" y=\"24\" font-size=\"14\" "
           "text-anchor=\"middle\">kappa = " + std::to_string(kappa) + ", E = " + num(energy) +
           "</text>\n";
    out += "</svg>\n";
    write_file(path, out);
}

void write_rate_loglog_svg(const std::string& path, const plot_series& points, double slope,
                           double intercept, int kappa) {
    if (points.x.empty() || points.x.size() != points.y.size())
        throw error("write_rate_loglog_svg: empty or mismatched series");
    std::string out;
    open_svg(out);
    const axis_map m = fit_axes(points, false);
    draw_axes(out, m, "log n", "log(E - inf J)");
    out += "<line x1=\"" + num(m.px(m.x0)) + "\" y1=\"" + num(m.py(slope * m.x0 + intercept)) +
           "\" x2=\"" + num(m.px(m.x1)) + "\" y2=\"" + num(m.py(slope * m.x1 + intercept)) +
           "\" stroke=\"orange\" stroke-width=\"1.5\"/>\n";
    for (size_t i = 0; i < points.x.size(); ++i) {
        out += "<circle cx=\"" + num(m.px(points.x[i])) + "\" cy=\"" + num(m.py(points.y[i])) +
               "\" r=\"3\" fill=\"black\"/>\n";
    }
    out += "<text x=\"" + num(double(kWidth) / 2) + "\" y=\"24\" font-size=\"14\" "
           "text-anchor=\"middle\">kappa = " + std::to_string(kappa) + ", slope = " + num(slope) +
           "</text>\n";
    out += "</svg>\n";
    write_file(path, out);
}

}  // namespace tlab
