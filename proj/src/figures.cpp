#include "botdna/figures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"

namespace botdna {

namespace {

constexpr int kMarginLeft = 60;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 34;
constexpr int kMarginBottom = 46;

const char* kPalette[] = {"#c0392b", "#2980b9", "#27ae60", "#8e44ad",
                          "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string coord(double value) {
    if (!std::isfinite(value)) throw Error("non-finite figure coordinate");
    return format_double(std::round(value * 100.0) / 100.0);
}

void check_csv_field(const std::string& text) {
    if (text.find(',') != std::string::npos ||
        text.find('\n') != std::string::npos ||
        text.find('\r') != std::string::npos)
        throw SchemaError("figure label not csv-safe", text);
}

struct Range {
    double lo = 0.0;
    double hi = 1.0;
};

// Tick step of the form 10^k * {1, 2, 5} giving 4 to 9 ticks.
std::vector<double> nice_ticks(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi)
        throw Error("bad axis range");
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
    for (double mult : {1.0, 2.0, 5.0, 10.0}) {
        if (span / (step * mult) <= 9.0) {
            step *= mult;
            break;
        }
    }
    std::vector<double> ticks;
    const double first = std::ceil(lo / step) * step;
    for (double t = first; t <= hi + step * 1e-9; t += step) {
        const double snapped = std::round(t / step) * step;
        ticks.push_back(snapped == 0.0 ? 0.0 : snapped);
    }
    return ticks;
}

class Canvas {
  public:
    Canvas(const FigureOptions& options, Range x, Range y)
        : options_(options), x_(x), y_(y) {
        if (options.width < 200 || options.height < 150)
            throw Error("figure size too small");
        if (x_.lo == x_.hi) {
            x_.lo -= 0.5;
            x_.hi += 0.5;
        }
        if (y_.lo == y_.hi) {
            y_.lo -= 0.5;
            y_.hi += 0.5;
        }
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
             << options.width << "\" height=\"" << options.height
             << "\" viewBox=\"0 0 " << options.width << " " << options.height
             << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
        out_ << "<rect width=\"" << options.width << "\" height=\""
             << options.height << "\" fill=\"white\"/>\n";
        if (!options.title.empty())
            out_ << "<text x=\"" << options.width / 2
                 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">"
                 << escape_xml(options.title) << "</text>\n";
    }

    double px(double x) const {
        return kMarginLeft + (x - x_.lo) / (x_.hi - x_.lo) * plot_width();
    }
    double py(double y) const {
        return options_.height - kMarginBottom -
               (y - y_.lo) / (y_.hi - y_.lo) * plot_height();
    }
    double plot_width() const {
        return options_.width - kMarginLeft - kMarginRight;
    }
    double plot_height() const {
        return options_.height - kMarginTop - kMarginBottom;
    }

    void axes(bool x_ticks = true) {
        const double x0 = kMarginLeft;
        const double x1 = options_.width - kMarginRight;
        const double y0 = kMarginTop;
        const double y1 = options_.height - kMarginBottom;
        out_ << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y1)
             << "\" x2=\"" << coord(x1) << "\" y2=\"" << coord(y1)
             << "\" stroke=\"black\"/>\n";
        out_ << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y0)
             << "\" x2=\"" << coord(x0) << "\" y2=\"" << coord(y1)
             << "\" stroke=\"black\"/>\n";
        if (x_ticks) {
            for (double t : nice_ticks(x_.lo, x_.hi)) {
                const double x = px(t);
                out_ << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(y1)
                     << "\" x2=\"" << coord(x) << "\" y2=\"" << coord(y1 + 4)
                     << "\" stroke=\"black\"/>\n";
                out_ << "<text x=\"" << coord(x) << "\" y=\"" << coord(y1 + 17)
                     << "\" text-anchor=\"middle\">" << format_double(t)
                     << "</text>\n";
            }
        }
        for (double t : nice_ticks(y_.lo, y_.hi)) {
            const double y = py(t);
            out_ << "<line x1=\"" << coord(x0 - 4) << "\" y1=\"" << coord(y)
                 << "\" x2=\"" << coord(x0) << "\" y2=\"" << coord(y)
                 << "\" stroke=\"black\"/>\n";
            out_ << "<text x=\"" << coord(x0 - 7) << "\" y=\"" << coord(y + 4)
                 << "\" text-anchor=\"end\">" << format_double(t)
                 << "</text>\n";
        }
        if (!options_.x_label.empty())
            out_ << "<text x=\"" << coord((x0 + x1) / 2) << "\" y=\""
                 << coord(options_.height - 8)
                 << "\" text-anchor=\"middle\">" << escape_xml(options_.x_label)
                 << "</text>\n";
        if (!options_.y_label.empty())
            out_ << "<text x=\"14\" y=\"" << coord((y0 + y1) / 2)
                 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
                 << coord((y0 + y1) / 2) << ")\">"
                 << escape_xml(options_.y_label) << "</text>\n";
    }

    void legend(const std::vector<std::string>& names) {
        double y = kMarginTop + 8;
        const double x = options_.width - kMarginRight - 110;
        for (std::size_t i = 0; i < names.size(); ++i) {
            out_ << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y)
                 << "\" width=\"12\" height=\"12\" fill=\""
                 << kPalette[i % kPaletteSize] << "\"/>\n";
            out_ << "<text x=\"" << coord(x + 17) << "\" y=\"" << coord(y + 10)
                 << "\">" << escape_xml(names[i]) << "</text>\n";
            y += 18;
        }
    }

    std::ostringstream& raw() { return out_; }

    std::string finish() {
        out_ << "</svg>\n";
        return out_.str();
    }

  private:
    FigureOptions options_;
    Range x_;
    Range y_;
    std::ostringstream out_;
};

Range value_range(const std::vector<double>& values) {
    Range range{values.empty() ? 0.0 : values.front(),
                values.empty() ? 1.0 : values.front()};
    for (double v : values) {
        if (!std::isfinite(v)) throw Error("non-finite figure value");
        range.lo = std::min(range.lo, v);
        range.hi = std::max(range.hi, v);
    }
    return range;
}

}  // namespace

std::string scatter_svg(const std::vector<ScatterPoint>& points,
                        const FigureOptions& options) {
    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& p : points) {
        if (p.label != 0 && p.label != 1)
            throw Error("scatter label must be 0 or 1");
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    Range x = value_range(xs);
    Range y = value_range(ys);
    if (xs.empty()) x = {0.0, 1.0};
    if (ys.empty()) y = {0.0, 1.0};

    Canvas canvas(options, x, y);
    canvas.axes();
    for (const auto& p : points) {
        canvas.raw() << "<circle cx=\"" << coord(canvas.px(p.x)) << "\" cy=\""
                     << coord(canvas.py(p.y)) << "\" r=\"3\" fill=\""
                     << (p.label == 1 ? kPalette[0] : kPalette[1])
                     << "\" fill-opacity=\"0.6\"/>\n";
    }
    canvas.legend({"bot", "human"});
    return canvas.finish();
}

std::string scatter_csv(const std::vector<std::string>& account_ids,
                        const std::vector<int>& labels,
                        const std::vector<CompressionStats>& stats) {
    if (account_ids.size() != labels.size() ||
        account_ids.size() != stats.size())
        throw Error("scatter csv inputs differ in length");
    std::ostringstream out;
    out << "account_id,label,original_size,compressed_size,ratio\n";
    for (std::size_t i = 0; i < account_ids.size(); ++i) {
        check_csv_field(account_ids[i]);
        if (labels[i] != 0 && labels[i] != 1)
            throw Error("scatter label must be 0 or 1");
        out << account_ids[i] << ',' << labels[i] << ','
            << stats[i].original_size << ',' << stats[i].compressed_size << ','
            << format_double(stats[i].ratio) << '\n';
    }
    return out.str();
}

namespace {

void check_histogram(const std::vector<HistogramSeries>& series, double lo,
                     double hi) {
    if (series.empty()) throw Error("histogram needs at least one series");
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo >= hi)
        throw Error("bad histogram range");
    const std::size_t bins = series.front().bins.size();
    if (bins == 0) throw Error("histogram needs at least one bin");
    for (const auto& s : series)
        if (s.bins.size() != bins)
            throw Error("histogram series differ in bin count");
}

}  // namespace

std::string histogram_svg(const std::vector<HistogramSeries>& series,
                          double lo, double hi, const FigureOptions& options) {
    check_histogram(series, lo, hi);
    const std::size_t bins = series.front().bins.size();
    std::size_t max_count = 1;
    for (const auto& s : series)
        for (std::size_t n : s.bins) max_count = std::max(max_count, n);

    Canvas canvas(options, {lo, hi}, {0.0, static_cast<double>(max_count)});
    canvas.axes();
    const double bin_width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::string> names;
    for (std::size_t si = 0; si < series.size(); ++si) {
        names.push_back(series[si].name);
        for (std::size_t b = 0; b < bins; ++b) {
            const std::size_t n = series[si].bins[b];
            if (n == 0) continue;
            const double x0 = canvas.px(lo + bin_width * static_cast<double>(b));
            const double x1 =
                canvas.px(lo + bin_width * static_cast<double>(b + 1));
            const double y = canvas.py(static_cast<double>(n));
            canvas.raw() << "<rect x=\"" << coord(x0) << "\" y=\"" << coord(y)
                         << "\" width=\"" << coord(x1 - x0) << "\" height=\""
                         << coord(canvas.py(0.0) - y) << "\" fill=\""
                         << kPalette[si % kPaletteSize]
                         << "\" fill-opacity=\"0.5\"/>\n";
        }
    }
    canvas.legend(names);
    return canvas.finish();
}

std::string histogram_csv(const std::vector<HistogramSeries>& series,
                          double lo, double hi) {
    check_histogram(series, lo, hi);
    const std::size_t bins = series.front().bins.size();
    std::ostringstream out;
    out << "bin_lo,bin_hi";
    for (const auto& s : series) {
        check_csv_field(s.name);
        out << ',' << s.name;
    }
    out << '\n';
    const double bin_width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out << format_double(lo + bin_width * static_cast<double>(b)) << ','
            << format_double(b + 1 == bins
                                 ? hi
                                 : lo + bin_width * static_cast<double>(b + 1));
        for (const auto& s : series) out << ',' << s.bins[b];
        out << '\n';
    }
    return out.str();
}

namespace {

void check_bars(const std::vector<std::string>& groups,
                const std::vector<BarSeries>& series) {
    if (groups.empty()) throw Error("bar chart needs at least one group");
    if (series.empty()) throw Error("bar chart needs at least one series");
    for (const auto& s : series)
        if (s.values.size() != groups.size())
            throw Error("bar series length does not match group count");
}

}  // namespace

std::string grouped_bar_svg(const std::vector<std::string>& groups,
                            const std::vector<BarSeries>& series,
                            const FigureOptions& options) {
    check_bars(groups, series);
    double hi = 0.0;
    for (const auto& s : series)
        for (double v : s.values) {
            if (!std::isfinite(v) || v < 0.0)
                throw Error("bar values must be finite and non-negative");
            hi = std::max(hi, v);
        }
    if (hi == 0.0) hi = 1.0;

    Canvas canvas(options, {0.0, static_cast<double>(groups.size())},
                  {0.0, hi});
    canvas.axes(false);
    const double slot = canvas.plot_width() / static_cast<double>(groups.size());
    const double bar = slot * 0.8 / static_cast<double>(series.size());
    std::vector<std::string> names;
    for (std::size_t si = 0; si < series.size(); ++si) {
        names.push_back(series[si].name);
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const double v = series[si].values[g];
            const double x = kMarginLeft + slot * static_cast<double>(g) +
                             slot * 0.1 + bar * static_cast<double>(si);
            const double y = canvas.py(v);
            canvas.raw() << "<rect x=\"" << coord(x) << "\" y=\"" << coord(y)
                         << "\" width=\"" << coord(bar) << "\" height=\""
                         << coord(canvas.py(0.0) - y) << "\" fill=\""
                         << kPalette[si % kPaletteSize] << "\"/>\n";
        }
    }
    const double base = canvas.py(0.0);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const double x = kMarginLeft + slot * (static_cast<double>(g) + 0.5);
        canvas.raw() << "<text x=\"" << coord(x) << "\" y=\""
                     << coord(base + 17) << "\" text-anchor=\"middle\">"
                     << escape_xml(groups[g]) << "</text>\n";
    }
    canvas.legend(names);
    return canvas.finish();
}

std::string grouped_bar_csv(const std::vector<std::string>& groups,
                            const std::vector<BarSeries>& series) {
    check_bars(groups, series);
    std::ostringstream out;
    out << "group";
    for (const auto& s : series) {
        check_csv_field(s.name);
        out << ',' << s.name;
    }
    out << '\n';
    for (std::size_t g = 0; g < groups.size(); ++g) {
        check_csv_field(groups[g]);
        out << groups[g];
        for (const auto& s : series) out << ',' << format_double(s.values[g]);
        out << '\n';
    }
    return out.str();
}

std::string hbar_svg(const std::vector<std::pair<std::string, double>>& items,
                     const FigureOptions& options) {
    double hi = 0.0;
    for (const auto& [label, value] : items) {
        if (!std::isfinite(value) || value < 0.0)
            throw Error("bar values must be finite and non-negative");
        hi = std::max(hi, value);
    }
    if (hi == 0.0) hi = 1.0;

    Canvas canvas(options, {0.0, hi},
                  {0.0, static_cast<double>(std::max<std::size_t>(
                            items.size(), 1))});
    canvas.raw() << "<line x1=\"" << kMarginLeft << "\" y1=\""
                 << coord(canvas.py(0.0)) << "\" x2=\""
                 << options.width - kMarginRight << "\" y2=\""
                 << coord(canvas.py(0.0)) << "\" stroke=\"black\"/>\n";
    canvas.raw() << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop
                 << "\" x2=\"" << kMarginLeft << "\" y2=\""
                 << coord(canvas.py(0.0)) << "\" stroke=\"black\"/>\n";
    for (double t : nice_ticks(0.0, hi)) {
        const double x = canvas.px(t);
        canvas.raw() << "<line x1=\"" << coord(x) << "\" y1=\""
                     << coord(canvas.py(0.0)) << "\" x2=\"" << coord(x)
                     << "\" y2=\"" << coord(canvas.py(0.0) + 4)
                     << "\" stroke=\"black\"/>\n";
        canvas.raw() << "<text x=\"" << coord(x) << "\" y=\""
                     << coord(canvas.py(0.0) + 17)
                     << "\" text-anchor=\"middle\">" << format_double(t)
                     << "</text>\n";
    }
    const double count = static_cast<double>(std::max<std::size_t>(
        items.size(), 1));
    for (std::size_t i = 0; i < items.size(); ++i) {
        const double y_top = canvas.py(count - static_cast<double>(i));
        const double y_bot = canvas.py(count - static_cast<double>(i) - 0.8);
        const double x1 = canvas.px(items[i].second);
        canvas.raw() << "<rect x=\"" << kMarginLeft << "\" y=\""
                     << coord(y_top) << "\" width=\""
                     << coord(x1 - kMarginLeft) << "\" height=\""
                     << coord(y_bot - y_top) << "\" fill=\"" << kPalette[1]
                     << "\"/>\n";
        canvas.raw() << "<text x=\"" << coord(kMarginLeft - 5) << "\" y=\""
                     << coord((y_top + y_bot) / 2 + 4)
                     << "\" text-anchor=\"end\">" << escape_xml(items[i].first)
                     << "</text>\n";
    }
    return canvas.finish();
}

std::string hbar_csv(
    const std::vector<std::pair<std::string, double>>& items) {
    std::ostringstream out;
    out << "label,value\n";
    for (const auto& [label, value] : items) {
        check_csv_field(label);
        out << label << ',' << format_double(value) << '\n';
    }
    return out.str();
}

}  // namespace botdna
