#include "tmjc/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace tmjc {

namespace {

std::string fnum(double v, const char* fmt = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

// Piecewise-linear viridis approximation through nine anchor colours.
std::string viridis(double u) {
    static constexpr int anchors[9][3] = {
        {68, 1, 84},    {72, 40, 120},  {62, 74, 137},  {49, 104, 142}, {38, 130, 142},
        {31, 158, 137}, {53, 183, 121}, {109, 205, 89}, {253, 231, 37}};
    u = std::clamp(u, 0.0, 1.0);
    const double pos = u * 8.0;
    const int lo = std::min(7, static_cast<int>(pos));
    const double f = pos - lo;
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                  static_cast<int>(std::lround(anchors[lo][0] + f * (anchors[lo + 1][0] - anchors[lo][0]))),
                  static_cast<int>(std::lround(anchors[lo][1] + f * (anchors[lo + 1][1] - anchors[lo][1]))),
                  static_cast<int>(std::lround(anchors[lo][2] + f * (anchors[lo + 1][2] - anchors[lo][2]))));
    return buf;
}

void open_svg(std::ostringstream& out, int w, int h, const std::string& title) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
        << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
        << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n"
        << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << title << "</text>\n";
}

void axis_text(std::ostringstream& out, double x, double y, const std::string& s,
               const char* anchor, int size = 11) {
    out << "<text x=\"" << fnum(x) << "\" y=\"" << fnum(y) << "\" text-anchor=\""
        << anchor << "\" font-family=\"sans-serif\" font-size=\"" << size << "\">" << s
        << "</text>\n";
}

std::vector<std::size_t> tick_indices(std::size_t n) {
    if (n <= 5) {
        std::vector<std::size_t> t(n);
        for (std::size_t i = 0; i < n; ++i)
            t[i] = i;
        return t;
    }
    return {0, n / 4, n / 2, (3 * n) / 4, n - 1};
}

} // namespace

std::string heatmap_svg(const ScanResult& r, const std::string& title) {
    const std::size_t nrow = r.grid.delta1_values.size();  // y axis: delta1
    const std::size_t ncol = r.grid.delta2_values.size();  // x axis: delta2
    const int W = 760, H = 560;
    const double x0 = 80, y0 = 46, pw = 560, ph = 440;

    double vmin = std::numeric_limits<double>::infinity(), vmax = -vmin;
    for (double v : r.max_occupation) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (!(vmax > vmin))
        vmax = vmin + 1.0;

    std::ostringstream out;
    open_svg(out, W, H, title);
    const double cw = pw / static_cast<double>(ncol);
    const double ch = ph / static_cast<double>(nrow);
    for (std::size_t i1 = 0; i1 < nrow; ++i1) {
        // delta1 grows upward: last row sits at the top margin.
        const double y = y0 + ph - static_cast<double>(i1 + 1) * ch;
        for (std::size_t i2 = 0; i2 < ncol; ++i2) {
            const double u = (r.max_at(i1, i2) - vmin) / (vmax - vmin);
            out << "<rect x=\"" << fnum(x0 + i2 * cw) << "\" y=\"" << fnum(y)
                << "\" width=\"" << fnum(cw + 0.5) << "\" height=\"" << fnum(ch + 0.5)
                << "\" fill=\"" << viridis(u) << "\"/>\n";
        }
    }
    out << "<rect x=\"" << fnum(x0) << "\" y=\"" << fnum(y0) << "\" width=\"" << fnum(pw)
        << "\" height=\"" << fnum(ph)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (std::size_t i2 : tick_indices(ncol)) {
        const double x = x0 + (i2 + 0.5) * cw;
        out << "<line x1=\"" << fnum(x) << "\" y1=\"" << fnum(y0 + ph) << "\" x2=\""
            << fnum(x) << "\" y2=\"" << fnum(y0 + ph + 5) << "\" stroke=\"black\"/>\n";
        axis_text(out, x, y0 + ph + 18, fnum(r.grid.delta2_values[i2], "%.4g"), "middle");
    }
    axis_text(out, x0 + pw / 2, y0 + ph + 36, "delta2", "middle", 13);
    for (std::size_t i1 : tick_indices(nrow)) {
        const double y = y0 + ph - (i1 + 0.5) * ch;
        out << "<line x1=\"" << fnum(x0 - 5) << "\" y1=\"" << fnum(y) << "\" x2=\""
            << fnum(x0) << "\" y2=\"" << fnum(y) << "\" stroke=\"black\"/>\n";
        axis_text(out, x0 - 8, y + 4, fnum(r.grid.delta1_values[i1], "%.4g"), "end");
    }
    out << "<text x=\"22\" y=\"" << fnum(y0 + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 22 "
        << fnum(y0 + ph / 2) << ")\">delta1</text>\n";

    // Colour bar.
    const double bx = x0 + pw + 28, bw = 18;
    const int strips = 64;
    for (int s = 0; s < strips; ++s) {
        const double u = (s + 0.5) / strips;
        const double y = y0 + ph * (1.0 - static_cast<double>(s + 1) / strips);
        out << "<rect x=\"" << fnum(bx) << "\" y=\"" << fnum(y) << "\" width=\""
            << fnum(bw) << "\" height=\"" << fnum(ph / strips + 0.5) << "\" fill=\""
            << viridis(u) << "\"/>\n";
    }
    out << "<rect x=\"" << fnum(bx) << "\" y=\"" << fnum(y0) << "\" width=\"" << fnum(bw)
        << "\" height=\"" << fnum(ph)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    axis_text(out, bx + bw + 4, y0 + 10, fnum(vmax, "%.3g"), "start");
    axis_text(out, bx + bw + 4, y0 + ph, fnum(vmin, "%.3g"), "start");
    out << "</svg>\n";
    return out.str();
}

std::string line_plot_svg(const std::vector<LineSeries>& series,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& title) {
    const int W = 760, H = 480;
    const double x0 = 70, y0 = 46, pw = 640, ph = 370;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const LineSeries& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!any) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                any = true;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (!(xmax > xmin))
        xmax = xmin + 1.0;
    if (!(ymax > ymin))
        ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return x0 + pw * (x - xmin) / (xmax - xmin); };
    auto py = [&](double y) { return y0 + ph * (1.0 - (y - ymin) / (ymax - ymin)); };

    std::ostringstream out;
    open_svg(out, W, H, title);
    out << "<rect x=\"" << fnum(x0) << "\" y=\"" << fnum(y0) << "\" width=\"" << fnum(pw)
        << "\" height=\"" << fnum(ph)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        const double xv = xmin + k * (xmax - xmin) / 4.0;
        out << "<line x1=\"" << fnum(px(xv)) << "\" y1=\"" << fnum(y0 + ph) << "\" x2=\""
            << fnum(px(xv)) << "\" y2=\"" << fnum(y0 + ph + 5) << "\" stroke=\"black\"/>\n";
        axis_text(out, px(xv), y0 + ph + 18, fnum(xv, "%.4g"), "middle");
        const double yv = ymin + k * (ymax - ymin) / 4.0;
        out << "<line x1=\"" << fnum(x0 - 5) << "\" y1=\"" << fnum(py(yv)) << "\" x2=\""
            << fnum(x0) << "\" y2=\"" << fnum(py(yv)) << "\" stroke=\"black\"/>\n";
        axis_text(out, x0 - 8, py(yv) + 4, fnum(yv, "%.4g"), "end");
    }
    axis_text(out, x0 + pw / 2, y0 + ph + 36, x_label, "middle", 13);
    out << "<text x=\"20\" y=\"" << fnum(y0 + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 20 "
        << fnum(y0 + ph / 2) << ")\">" << y_label << "</text>\n";

    for (const LineSeries& s : series) {
        if (s.x.empty())
            continue;
        out << "<polyline fill=\"none\" stroke=\"" << s.color
            << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i)
                out << ' ';
            out << fnum(px(s.x[i])) << ',' << fnum(py(s.y[i]));
        }
        out << "\"/>\n";
    }
    double ly = y0 + 14;
    for (const LineSeries& s : series) {
        if (s.label.empty())
            continue;
        out << "<line x1=\"" << fnum(x0 + pw - 150) << "\" y1=\"" << fnum(ly - 4)
            << "\" x2=\"" << fnum(x0 + pw - 126) << "\" y2=\"" << fnum(ly - 4)
            << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
        axis_text(out, x0 + pw - 120, ly, s.label, "start");
        ly += 16;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace tmjc
