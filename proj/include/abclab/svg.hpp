#ifndef ABCLAB_SVG_HPP
#define ABCLAB_SVG_HPP

#include <string>
#include <vector>

namespace abclab {

// Minimal static SVG 1.1 plots, no plotting dependency.  Inputs are plain
// column data so plots can always be regenerated from a CSV alone.

struct SvgScatterOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool diagonal = false;  // solid red y=x reference line
};
void write_svg_scatter(const std::string& path, const std::vector<double>& x,
                       const std::vector<double>& y, const SvgScatterOptions& opts);

// Side-by-side scatter panels sharing the options; one (x, y) pair per panel.
void write_svg_scatter_panels(const std::string& path,
                              const std::vector<std::vector<double>>& xs,
                              const std::vector<std::vector<double>>& ys,
                              const std::vector<std::string>& panel_labels,
                              const SvgScatterOptions& opts);

// Side-by-side histogram panels (one per series).
struct SvgHistogramOptions {
    std::string title;
    std::vector<std::string> panel_labels;
    int bins = 40;
};
void write_svg_histograms(const std::string& path,
                          const std::vector<std::vector<double>>& series,
                          const SvgHistogramOptions& opts);

// Curves over a shared log-scaled x axis with optional horizontal references.
struct SvgCurveOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> series_labels;
    std::vector<double> h_references;
    bool log_x = true;
};
void write_svg_curves(const std::string& path, const std::vector<double>& x,
                      const std::vector<std::vector<double>>& series,
                      const SvgCurveOptions& opts);

}  // namespace abclab

#endif
