#pragma once

#include <string>
#include <vector>

namespace tlab {

struct plot_series {
    std::vector<double> x;
    std::vector<double> y;
};

// Sampled curve with axes and a marked zero line (so sign changes of the
// symbol are visible). Writes a standalone SVG file.
void write_g_curve_svg(const std::string& path, const plot_series& curve, int kappa,
                       double energy);

// Scatter of (log n, log gap) points with the fitted trend line.
void write_rate_loglog_svg(const std::string& path, const plot_series& points, double slope,
                           double intercept, int kappa);

}  // namespace tlab
