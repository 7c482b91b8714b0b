#include "doctest.h"

#include "botdna/errors.hpp"
#include "botdna/figures.hpp"

#include <cmath>
#include <string>
#include <vector>

using namespace botdna;

namespace {

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

std::vector<ScatterPoint> sample_points() {
    return {
        {10.0, 6.0, 1},
        {20.0, 8.0, 1},
        {30.0, 25.0, 0},
        {42.0, 37.0, 0},
    };
}

}  // namespace

TEST_SUITE("figures") {

TEST_CASE("scatter svg draws one circle per point in class colors") {
    FigureOptions options;
    options.title = "sizes";
    options.x_label = "original";
    options.y_label = "compressed";
    const auto svg = scatter_svg(sample_points(), options);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
    CHECK(count_occurrences(svg, "<circle") == 4);
    CHECK(count_occurrences(svg, "#c0392b") >= 2);
    CHECK(count_occurrences(svg, "#2980b9") >= 2);
    CHECK(svg.find(">sizes<") != std::string::npos);
    CHECK(svg.find(">original<") != std::string::npos);
    CHECK(svg.find(">compressed<") != std::string::npos);
    CHECK(svg.find(">bot<") != std::string::npos);
    CHECK(svg.find(">human<") != std::string::npos);
}

TEST_CASE("figure output is deterministic") {
    FigureOptions options;
    options.title = "t";
    CHECK(scatter_svg(sample_points(), options) ==
          scatter_svg(sample_points(), options));
}

TEST_CASE("titles and labels are xml-escaped") {
    FigureOptions options;
    options.title = "a < b & \"c\"";
    const auto svg = scatter_svg({}, options);
    CHECK(svg.find("a &lt; b &amp; &quot;c&quot;") != std::string::npos);
    CHECK(svg.find("a < b") == std::string::npos);
}

TEST_CASE("scatter rejects bad labels and bad coordinates") {
    FigureOptions options;
    CHECK_THROWS_AS(scatter_svg({{1.0, 1.0, 2}}, options), Error);
    const double nan = std::nan("");
    CHECK_THROWS_AS(scatter_svg({{nan, 1.0, 0}}, options), Error);
}

TEST_CASE("empty scatter still renders axes") {
    FigureOptions options;
    const auto svg = scatter_svg({}, options);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(count_occurrences(svg, "<circle") == 0);
    CHECK(count_occurrences(svg, "<line") >= 2);
}

TEST_CASE("scatter csv matches the fixed header and row layout") {
    const std::vector<std::string> ids = {"12", "99"};
    const std::vector<int> labels = {1, 0};
    const std::vector<CompressionStats> stats = {
        {100, 8, 12.5},
        {40, 16, 2.5},
    };
    CHECK(scatter_csv(ids, labels, stats) ==
          "account_id,label,original_size,compressed_size,ratio\n"
          "12,1,100,8,12.5\n"
          "99,0,40,16,2.5\n");
    CHECK_THROWS_AS(scatter_csv({"a"}, {1, 0}, stats), Error);
    CHECK_THROWS_AS(scatter_csv({"a,b"}, {1}, {{1, 1, 1.0}}), SchemaError);
}

TEST_CASE("histogram csv lists bin edges then per-series counts") {
    const std::vector<HistogramSeries> series = {
        {"bot", {3, 2}},
        {"human", {1, 0}},
    };
    CHECK(histogram_csv(series, 0.0, 1.0) ==
          "bin_lo,bin_hi,bot,human\n"
          "0,0.5,3,1\n"
          "0.5,1,2,0\n");
}

TEST_CASE("histogram svg draws a rect per nonzero bin") {
    const std::vector<HistogramSeries> series = {
        {"bot", {3, 0, 2}},
        {"human", {0, 1, 4}},
    };
    FigureOptions options;
    const auto svg = histogram_svg(series, 0.0, 1.0, options);
    // Background, four nonzero bins, two legend swatches.
    CHECK(count_occurrences(svg, "<rect") == 7);
    CHECK(svg.find(">bot<") != std::string::npos);
    CHECK(svg.find(">human<") != std::string::npos);
}

TEST_CASE("histogram validates its inputs") {
    FigureOptions options;
    CHECK_THROWS_AS(histogram_svg({}, 0.0, 1.0, options), Error);
    CHECK_THROWS_AS(histogram_svg({{"a", {1, 2}}, {"b", {1}}}, 0.0, 1.0,
                                  options),
                    Error);
    CHECK_THROWS_AS(histogram_svg({{"a", {1}}}, 1.0, 1.0, options), Error);
    CHECK_THROWS_AS(histogram_csv({{"a", {}}}, 0.0, 1.0), Error);
}

TEST_CASE("grouped bar csv is group rows by series columns") {
    const std::vector<std::string> groups = {"positive", "negative"};
    const std::vector<BarSeries> series = {
        {"bot", {0.25, 0.75}},
        {"human", {0.5, 0.5}},
    };
    CHECK(grouped_bar_csv(groups, series) ==
          "group,bot,human\n"
          "positive,0.25,0.5\n"
          "negative,0.75,0.5\n");
}

TEST_CASE("grouped bar svg draws groups times series rects plus chrome") {
    const std::vector<std::string> groups = {"positive", "neutral",
                                             "negative"};
    const std::vector<BarSeries> series = {
        {"bot", {0.2, 0.3, 0.5}},
        {"human", {0.6, 0.3, 0.1}},
    };
    FigureOptions options;
    options.y_label = "share";
    const auto svg = grouped_bar_svg(groups, series, options);
    // Background, six bars, two legend swatches.
    CHECK(count_occurrences(svg, "<rect") == 9);
    CHECK(svg.find(">positive<") != std::string::npos);
    CHECK(svg.find(">neutral<") != std::string::npos);
    CHECK(svg.find(">negative<") != std::string::npos);
    CHECK(svg.find(">share<") != std::string::npos);
}

TEST_CASE("grouped bar rejects mismatched or negative values") {
    FigureOptions options;
    CHECK_THROWS_AS(grouped_bar_svg({"a"}, {{"s", {1.0, 2.0}}}, options),
                    Error);
    CHECK_THROWS_AS(grouped_bar_svg({"a"}, {{"s", {-0.5}}}, options), Error);
    CHECK_THROWS_AS(grouped_bar_svg({}, {{"s", {}}}, options), Error);
    CHECK_THROWS_AS(grouped_bar_csv({"a,b"}, {{"s", {1.0}}}), SchemaError);
}

TEST_CASE("hbar csv and svg list items in the given order") {
    const std::vector<std::pair<std::string, double>> items = {
        {"covid19", 120.0},
        {"stayhome", 80.0},
        {"lockdown", 5.0},
    };
    CHECK(hbar_csv(items) ==
          "label,value\n"
          "covid19,120\n"
          "stayhome,80\n"
          "lockdown,5\n");

    FigureOptions options;
    options.title = "top hashtags";
    const auto svg = hbar_svg(items, options);
    CHECK(count_occurrences(svg, "<rect") == 4);
    CHECK(svg.find(">covid19<") != std::string::npos);
    CHECK(svg.find(">lockdown<") != std::string::npos);
    const auto first = svg.find(">covid19<");
    const auto last = svg.find(">lockdown<");
    CHECK(first < last);
    CHECK_THROWS_AS(hbar_svg({{"x", -1.0}}, options), Error);
}

TEST_CASE("empty hbar renders axes only") {
    FigureOptions options;
    const auto svg = hbar_svg({}, options);
    CHECK(count_occurrences(svg, "<rect") == 1);
    CHECK(svg.substr(svg.size() - 7) == "</svg>\n");
}

}
