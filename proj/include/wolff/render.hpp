#pragma once

#include <string>
#include <vector>

#include "wolff/packing.hpp"

namespace wolff {

struct RenderSpec {
    int size_px = 800;            // square canvas, >= 64
    double stroke_width = 1.0;
    bool fill = true;
    bool color_by_index = false;  // blue-to-red gradient over insertion order
    bool annotate_residual = false;
};

/// One SVG circle per disc plus the unit-circle boundary, coordinates mapped
/// affinely from [-1,1]^2 to pixel space. Output bytes are a pure function of
/// the inputs.
std::string render_packing(const Packing& packing, const RenderSpec& spec);

struct SeriesPoint {
    double n = 0.0;      // strictly increasing
    double value = 0.0;  // residual or max-moment, positive
};

/// Log-log polyline with axes, tick labels and a least-squares slope
/// annotation. Rejects non-monotone n.
std::string render_convergence(const std::vector<SeriesPoint>& series,
                               const RenderSpec& spec);

/// Least-squares exponent of value ~ C * n^slope on log-log axes.
double fit_loglog_slope(const std::vector<SeriesPoint>& series);

/// "n,value" lines with a header; the series format consumed by the
/// convergence renderer via the CLI.
std::string series_to_csv(const std::vector<SeriesPoint>& series);
std::vector<SeriesPoint> series_from_csv(const std::string& text);

}  // namespace wolff
