#include "wolff/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "wolff/io.hpp"

namespace wolff {

namespace {

// Fixed two-decimal pixel coordinates keep the output bytes deterministic.
std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string index_color(std::size_t i, std::size_t count) {
    double t = count <= 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    int r = static_cast<int>(40 + 175 * t);
    int g = 70;
    int b = static_cast<int>(215 - 175 * t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "rgb(%d,%d,%d)", r, g, b);
    return buf;
}

void check_spec(const RenderSpec& spec) {
    if (spec.size_px < 64) {
        throw std::invalid_argument("render size must be at least 64 px");
    }
}

}  // namespace

std::string render_packing(const Packing& packing, const RenderSpec& spec) {
    check_spec(spec);
    const double s = spec.size_px;
    auto map_x = [&](double x) { return (x + 1.0) * 0.5 * s; };
    auto map_y = [&](double y) { return (1.0 - y) * 0.5 * s; };
    auto map_r = [&](double r) { return r * 0.5 * s; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.size_px
        << "\" height=\"" << spec.size_px << "\" viewBox=\"0 0 " << spec.size_px
        << " " << spec.size_px << "\">\n";
    out << "  <circle cx=\"" << px(map_x(0.0)) << "\" cy=\"" << px(map_y(0.0))
        << "\" r=\"" << px(map_r(1.0)) << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
        << px(spec.stroke_width) << "\"/>\n";

    const auto& discs = packing.discs();
    for (std::size_t i = 0; i < discs.size(); ++i) {
        const Disc& d = discs[i];
        std::string fill = spec.fill
                               ? (spec.color_by_index ? index_color(i, discs.size())
                                                      : std::string("rgb(70,110,180)"))
                               : std::string("none");
        out << "  <circle cx=\"" << px(map_x(d.center.real())) << "\" cy=\""
            << px(map_y(d.center.imag())) << "\" r=\"" << px(map_r(d.radius))
            << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\""
            << px(0.5 * spec.stroke_width) << "\"/>\n";
    }

    if (spec.annotate_residual) {
        out << "  <text x=\"" << px(0.02 * s) << "\" y=\"" << px(0.05 * s)
            << "\" font-family=\"monospace\" font-size=\"" << px(0.03 * s)
            << "\">discs=" << discs.size() << " residual="
            << format_real(packing.residual_area()) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

double fit_loglog_slope(const std::vector<SeriesPoint>& series) {
    if (series.size() < 2) return 0.0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double n = static_cast<double>(series.size());
    for (const SeriesPoint& p : series) {
        double lx = std::log(p.n);
        double ly = std::log(p.value);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    return denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
}

std::string render_convergence(const std::vector<SeriesPoint>& series,
                               const RenderSpec& spec) {
    check_spec(spec);
    if (series.empty()) {
        throw std::invalid_argument("convergence series must be nonempty");
    }
    for (const SeriesPoint& p : series) {
        if (!(p.n > 0.0) || !(p.value > 0.0)) {
            throw std::invalid_argument("log-log series needs positive n and value");
        }
    }
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (!(series[i].n > series[i - 1].n)) {
            throw std::invalid_argument("series n values must be strictly increasing");
        }
    }

    const double s = spec.size_px;
    const double margin = 0.12 * s;
    double lx_min = std::log10(series.front().n);
    double lx_max = std::log10(series.back().n);
    double ly_min = std::log10(series.front().value);
    double ly_max = ly_min;
    for (const SeriesPoint& p : series) {
        ly_min = std::min(ly_min, std::log10(p.value));
        ly_max = std::max(ly_max, std::log10(p.value));
    }
    if (lx_max == lx_min) lx_max = lx_min + 1.0;
    if (ly_max == ly_min) ly_max = ly_min + 1.0;

    auto map_x = [&](double lx) {
        return margin + (lx - lx_min) / (lx_max - lx_min) * (s - 2.0 * margin);
    };
    auto map_y = [&](double ly) {
        return s - margin - (ly - ly_min) / (ly_max - ly_min) * (s - 2.0 * margin);
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.size_px
        << "\" height=\"" << spec.size_px << "\" viewBox=\"0 0 " << spec.size_px
        << " " << spec.size_px << "\">\n";
    out << "  <rect x=\"" << px(margin) << "\" y=\"" << px(margin) << "\" width=\""
        << px(s - 2 * margin) << "\" height=\"" << px(s - 2 * margin)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    // Decade ticks on both axes.
    for (int e = static_cast<int>(std::ceil(lx_min)); e <= static_cast<int>(std::floor(lx_max)); ++e) {
        double x = map_x(e);
        out << "  <line x1=\"" << px(x) << "\" y1=\"" << px(s - margin) << "\" x2=\""
            << px(x) << "\" y2=\"" << px(s - margin + 6) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << px(x - 10) << "\" y=\"" << px(s - margin + 22)
            << "\" font-family=\"monospace\" font-size=\"12\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly_min)); e <= static_cast<int>(std::floor(ly_max)); ++e) {
        double y = map_y(e);
        out << "  <line x1=\"" << px(margin - 6) << "\" y1=\"" << px(y) << "\" x2=\""
            << px(margin) << "\" y2=\"" << px(y) << "\" stroke=\"black\"/>\n";
        out << "  <text x=\"" << px(4.0) << "\" y=\"" << px(y + 4)
            << "\" font-family=\"monospace\" font-size=\"12\">1e" << e << "</text>\n";
    }

    if (series.size() == 1) {
        out << "  <circle cx=\"" << px(map_x(lx_min)) << "\" cy=\"" << px(map_y(ly_min))
            << "\" r=\"3\" fill=\"black\"/>\n";
    } else {
        out << "  <polyline fill=\"none\" stroke=\"rgb(40,70,180)\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (i) out << " ";
            out << px(map_x(std::log10(series[i].n))) << ","
                << px(map_y(std::log10(series[i].value)));
        }
        out << "\"/>\n";
        char slope[64];
        std::snprintf(slope, sizeof(slope), "slope=%.4f", fit_loglog_slope(series));
        out << "  <text x=\"" << px(margin + 8) << "\" y=\"" << px(margin + 18)
            << "\" font-family=\"monospace\" font-size=\"14\">" << slope << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string series_to_csv(const std::vector<SeriesPoint>& series) {
    std::ostringstream out;
    out << "n,value\n";
    for (const SeriesPoint& p : series) {
        out << format_real(p.n) << "," << format_real(p.value) << "\n";
    }
    return out.str();
}

std::vector<SeriesPoint> series_from_csv(const std::string& text) {
    std::vector<SeriesPoint> series;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.rfind("n,", 0) == 0) continue;
        SeriesPoint p;
        if (std::sscanf(line.c_str(), "%lf,%lf", &p.n, &p.value) != 2) {
            throw std::invalid_argument("series CSV line " + std::to_string(lineno) +
                                        ": expected 'n,value'");
        }
        series.push_back(p);
    }
    return series;
}

}  // namespace wolff
