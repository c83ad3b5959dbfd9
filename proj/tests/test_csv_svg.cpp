#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "abclab/csv.hpp"
#include "abclab/models/count.hpp"
#include "abclab/svg.hpp"

using namespace abclab;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/abclab_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_double round-trips exactly") {
    for (double v : {0.0, 1.0, -1.5, 0.1, 1.0 / 3.0, 1e-308, 1.7976931348623157e308,
                     3.141592653589793, -2.2250738585072014e-308, 123456789.123456789}) {
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    // Prefers short representations when they round-trip.
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
}

TEST_CASE("csv write/read round trip with blanks") {
    TempFile f("roundtrip.csv");
    const std::vector<std::string> header{"a", "b", "c"};
    const std::vector<std::vector<std::optional<double>>> rows{
        {1.0, 2.5, std::nullopt},
        {-0.125, std::nullopt, 1e-9},
    };
    write_csv(f.path, header, rows);
    const CsvTable t = read_csv(f.path);
    CHECK(t.header == header);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == 1.0);
    CHECK_FALSE(t.rows[0][2].has_value());
    CHECK(t.rows[1][0] == -0.125);
    CHECK(t.rows[1][2] == 1e-9);
    CHECK(t.column("b") == 1);
    CHECK_THROWS_AS(t.column("nope"), std::invalid_argument);

    // LF endings, no trailing spaces.
    const std::string raw = slurp(f.path);
    CHECK(raw.find('\r') == std::string::npos);
    CHECK(raw.substr(0, 6) == "a,b,c\n");
}

TEST_CASE("reference table save/load round trip") {
    const std::vector<ModelSpec> models{poisson_model(), geometric_model()};
    const std::vector<double> prior{0.5, 0.5};
    RandomStream s(123);
    const ReferenceTable t = build_reference_table(models, prior, 10, 200, s, 2);
    const SummaryVector observed{7.0};
    TempFile f("table.csv");
    save_reference_table(f.path, t, observed, DistanceSpec{});
    const ReferenceTable back = load_reference_table(f.path);
    CHECK(back.model_count == t.model_count);
    CHECK(back.summary_names.size() == t.summary_names.size());
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(back.rows[r].model_index == t.rows[r].model_index);
        CHECK(back.rows[r].parameter == t.rows[r].parameter);
        CHECK(back.rows[r].summary == t.rows[r].summary);
    }
}

TEST_CASE("svg writers produce well-formed files, deterministically") {
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y{1.1, 1.9, 3.2, 3.8};
    TempFile f1("scatter.svg");
    SvgScatterOptions opts;
    opts.title = "t";
    opts.diagonal = true;
    write_svg_scatter(f1.path, x, y, opts);
    const std::string first = slurp(f1.path);
    CHECK(first.find("<svg") != std::string::npos);
    CHECK(first.find("</svg>") != std::string::npos);
    write_svg_scatter(f1.path, x, y, opts);
    CHECK(slurp(f1.path) == first);  // same inputs, same bytes

    TempFile f2("hist.svg");
    SvgHistogramOptions hopts;
    hopts.panel_labels = {"a", "b"};
    write_svg_histograms(f2.path, {{0.0, 0.5, 0.5, 1.0}, {2.0, 2.0, 3.0}}, hopts);
    CHECK(slurp(f2.path).find("</svg>") != std::string::npos);

    TempFile f3("curves.svg");
    SvgCurveOptions copts;
    copts.series_labels = {"s1"};
    copts.h_references = {0.0};
    write_svg_curves(f3.path, {10.0, 100.0, 1000.0}, {{1.0, 0.5, 0.1}}, copts);
    CHECK(slurp(f3.path).find("</svg>") != std::string::npos);

    TempFile f4("panels.svg");
    write_svg_scatter_panels(f4.path, {x, x}, {y, x}, {"p1", "p2"}, opts);
    CHECK(slurp(f4.path).find("</svg>") != std::string::npos);
}
