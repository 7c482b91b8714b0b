#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "botdna/dna.hpp"

namespace botdna {

struct FigureOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 640;
    int height = 480;
};

struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    int label = 0;  // 0 = human, 1 = bot
};

// Figure strings are fully deterministic: same inputs, same bytes.
std::string scatter_svg(const std::vector<ScatterPoint>& points,
                        const FigureOptions& options);

// One row per account, header
// "account_id,label,original_size,compressed_size,ratio".
std::string scatter_csv(const std::vector<std::string>& account_ids,
                        const std::vector<int>& labels,
                        const std::vector<CompressionStats>& stats);

struct HistogramSeries {
    std::string name;
    std::vector<std::size_t> bins;
};

// Equal-width bins spanning [lo, hi]; series overlay translucently.
std::string histogram_svg(const std::vector<HistogramSeries>& series,
                          double lo, double hi, const FigureOptions& options);

std::string histogram_csv(const std::vector<HistogramSeries>& series,
                          double lo, double hi);

struct BarSeries {
    std::string name;
    std::vector<double> values;  // one per group
};

std::string grouped_bar_svg(const std::vector<std::string>& groups,
                            const std::vector<BarSeries>& series,
                            const FigureOptions& options);

std::string grouped_bar_csv(const std::vector<std::string>& groups,
                            const std::vector<BarSeries>& series);

// Horizontal bars in the given order, labels on the left.
std::string hbar_svg(
    const std::vector<std::pair<std::string, double>>& items,
    const FigureOptions& options);

std::string hbar_csv(
    const std::vector<std::pair<std::string, double>>& items);

}  // namespace botdna
