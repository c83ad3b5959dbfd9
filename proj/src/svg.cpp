#include "abclab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "abclab/csv.hpp"

namespace abclab {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 60.0;

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

Range data_range(const std::vector<double>& v) {
    Range r{0.0, 1.0};
    bool any = false;
    for (double x : v) {
        if (!std::isfinite(x)) continue;
        if (!any) {
            r.lo = r.hi = x;
            any = true;
        } else {
            r.lo = std::min(r.lo, x);
            r.hi = std::max(r.hi, x);
        }
    }
    if (!any) return {0.0, 1.0};
    if (r.lo == r.hi) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    const double pad = 0.05 * (r.hi - r.lo);
    return {r.lo - pad, r.hi + pad};
}

class Canvas {
public:
    Canvas(double w, double h) : w_(w), h_(h) {
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
             << "width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
             << " " << h << "\">\n"
             << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& color,
              double width = 1.0) {
        out_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
             << "\" y2=\"" << y2 << "\" stroke=\"" << color << "\" stroke-width=\""
             << width << "\"/>\n";
    }

    void circle(double cx, double cy, double r, const std::string& color) {
        out_ << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
             << "\" fill=\"" << color << "\" fill-opacity=\"0.6\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& color) {
        out_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w
             << "\" height=\"" << h << "\" fill=\"" << color << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, double size = 13.0,
              const std::string& anchor = "middle") {
        out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
             << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s
             << "</text>\n";
    }

    void save(const std::string& path) {
        out_ << "</svg>\n";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("svg: cannot open '" + path + "'");
        f << out_.str();
    }

    double w_, h_;

private:
    std::ostringstream out_;
};

struct Axes {
    Range xr, yr;
    double x0, y0, x1, y1;  // plot area in canvas coordinates

    double px(double x) const { return x0 + (x - xr.lo) / (xr.hi - xr.lo) * (x1 - x0); }
    double py(double y) const { return y0 - (y - yr.lo) / (yr.hi - yr.lo) * (y0 - y1); }
};

void draw_axes(Canvas& c, const Axes& ax, const std::string& x_label,
               const std::string& y_label, const std::string& title) {
    c.line(ax.x0, ax.y0, ax.x1, ax.y0, "black");
    c.line(ax.x0, ax.y0, ax.x0, ax.y1, "black");
    for (int i = 0; i <= 4; ++i) {
        const double fx = ax.xr.lo + i * (ax.xr.hi - ax.xr.lo) / 4.0;
        const double fy = ax.yr.lo + i * (ax.yr.hi - ax.yr.lo) / 4.0;
        std::ostringstream sx, sy;
        sx.precision(4);
        sy.precision(4);
        sx << fx;
        sy << fy;
        c.text(ax.px(fx), ax.y0 + 18.0, sx.str(), 11.0);
        c.text(ax.x0 - 8.0, ax.py(fy) + 4.0, sy.str(), 11.0, "end");
    }
    c.text((ax.x0 + ax.x1) / 2.0, ax.y0 + 38.0, x_label);
    c.text(ax.x0 - 45.0, (ax.y0 + ax.y1) / 2.0, y_label, 13.0);
    if (!title.empty()) c.text((ax.x0 + ax.x1) / 2.0, ax.y1 - 12.0, title, 15.0);
}

}  // namespace

void write_svg_scatter(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const SvgScatterOptions& opts) {
    Canvas c(kWidth, kHeight);
    Axes ax;
    ax.xr = data_range(x);
    ax.yr = data_range(y);
    if (opts.diagonal) {
        // shared range so the diagonal is meaningful
        Range joint{std::min(ax.xr.lo, ax.yr.lo), std::max(ax.xr.hi, ax.yr.hi)};
        ax.xr = ax.yr = joint;
    }
    ax.x0 = kMargin;
    ax.y0 = kHeight - kMargin;
    ax.x1 = kWidth - kMargin / 2.0;
    ax.y1 = kMargin / 2.0;
    if (opts.diagonal)
        c.line(ax.px(ax.xr.lo), ax.py(ax.xr.lo), ax.px(ax.xr.hi), ax.py(ax.xr.hi),
               "red", 1.5);
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (std::isfinite(x[i]) && std::isfinite(y[i]))
            c.circle(ax.px(x[i]), ax.py(y[i]), 2.2, "steelblue");
    draw_axes(c, ax, opts.x_label, opts.y_label, opts.title);
    c.save(path);
}

void write_svg_scatter_panels(const std::string& path,
                              const std::vector<std::vector<double>>& xs,
                              const std::vector<std::vector<double>>& ys,
                              const std::vector<std::string>& panel_labels,
                              const SvgScatterOptions& opts) {
    const std::size_t panels = xs.size();
    Canvas c(kWidth, kHeight);
    const double panel_w = (kWidth - kMargin) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        Axes ax;
        ax.xr = data_range(xs[p]);
        ax.yr = data_range(ys[p]);
        if (opts.diagonal) {
            Range joint{std::min(ax.xr.lo, ax.yr.lo), std::max(ax.xr.hi, ax.yr.hi)};
            ax.xr = ax.yr = joint;
        }
        ax.x0 = kMargin + p * panel_w;
        ax.x1 = ax.x0 + panel_w - kMargin / 2.0;
        ax.y0 = kHeight - kMargin;
        ax.y1 = kMargin / 2.0;
        if (opts.diagonal)
            c.line(ax.px(ax.xr.lo), ax.py(ax.xr.lo), ax.px(ax.xr.hi), ax.py(ax.xr.hi),
                   "red", 1.5);
        for (std::size_t i = 0; i < xs[p].size() && i < ys[p].size(); ++i)
            if (std::isfinite(xs[p][i]) && std::isfinite(ys[p][i]))
                c.circle(ax.px(xs[p][i]), ax.py(ys[p][i]), 2.2, "steelblue");
        const std::string label = p < panel_labels.size() ? panel_labels[p] : "";
        draw_axes(c, ax, label.empty() ? opts.x_label : label,
                  p == 0 ? opts.y_label : "", p == 0 ? opts.title : "");
    }
    c.save(path);
}

void write_svg_histograms(const std::string& path,
                          const std::vector<std::vector<double>>& series,
                          const SvgHistogramOptions& opts) {
    const std::size_t panels = series.size();
    Canvas c(kWidth, kHeight);
    const double panel_w = (kWidth - kMargin) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const auto& data = series[p];
        Range r = data_range(data);
        std::vector<double> counts(opts.bins, 0.0);
        for (double v : data) {
            if (!std::isfinite(v)) continue;
            int b = static_cast<int>((v - r.lo) / (r.hi - r.lo) * opts.bins);
            b = std::clamp(b, 0, opts.bins - 1);
            counts[b] += 1.0;
        }
        const double cmax = std::max(1.0, *std::max_element(counts.begin(), counts.end()));
        Axes ax;
        ax.xr = r;
        ax.yr = {0.0, cmax * 1.05};
        ax.x0 = kMargin + p * panel_w;
        ax.x1 = ax.x0 + panel_w - kMargin / 2.0;
        ax.y0 = kHeight - kMargin;
        ax.y1 = kMargin / 2.0;
        const double bw = (ax.x1 - ax.x0) / opts.bins;
        for (int b = 0; b < opts.bins; ++b)
            if (counts[b] > 0.0)
                c.rect(ax.x0 + b * bw, ax.py(counts[b]), bw,
                       ax.y0 - ax.py(counts[b]), "steelblue");
        const std::string label =
            p < opts.panel_labels.size() ? opts.panel_labels[p] : "";
        draw_axes(c, ax, label, p == 0 ? "count" : "", p == 0 ? opts.title : "");
    }
    c.save(path);
}

void write_svg_curves(const std::string& path, const std::vector<double>& x,
                      const std::vector<std::vector<double>>& series,
                      const SvgCurveOptions& opts) {
    static const char* kColors[] = {"steelblue", "darkorange", "seagreen", "purple"};
    std::vector<double> tx = x;
    if (opts.log_x)
        for (double& v : tx) v = std::log10(v);
    Canvas c(kWidth, kHeight);
    Axes ax;
    ax.xr = data_range(tx);
    std::vector<double> all;
    for (const auto& s : series) all.insert(all.end(), s.begin(), s.end());
    all.insert(all.end(), opts.h_references.begin(), opts.h_references.end());
    ax.yr = data_range(all);
    ax.x0 = kMargin;
    ax.y0 = kHeight - kMargin;
    ax.x1 = kWidth - kMargin / 2.0;
    ax.y1 = kMargin / 2.0;
    for (double h : opts.h_references)
        c.line(ax.x0, ax.py(h), ax.x1, ax.py(h), "red", 1.0);
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ys = series[s];
        const std::string color = kColors[s % 4];
        for (std::size_t i = 0; i + 1 < ys.size(); ++i)
            c.line(ax.px(tx[i]), ax.py(ys[i]), ax.px(tx[i + 1]), ax.py(ys[i + 1]),
                   color, 1.5);
        for (std::size_t i = 0; i < ys.size(); ++i)
            c.circle(ax.px(tx[i]), ax.py(ys[i]), 3.0, color);
        if (s < opts.series_labels.size())
            c.text(ax.x1 - 10.0, ax.y1 + 18.0 + 16.0 * s, opts.series_labels[s], 12.0,
                   "end");
    }
    draw_axes(c, ax, opts.x_label, opts.y_label, opts.title);
    c.save(path);
}

}  // namespace abclab
