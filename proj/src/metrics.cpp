#include "botdna/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"
#include "botdna/rng.hpp"

namespace botdna {

namespace {

void check_scored(const std::vector<double>& scores,
                  const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw Error("scores and labels differ in length");
    for (int label : labels)
        if (label != 0 && label != 1) throw Error("label must be 0 or 1");
}

std::pair<std::size_t, std::size_t> class_counts(
    const std::vector<int>& labels) {
    std::size_t pos = 0;
    for (int label : labels) pos += static_cast<std::size_t>(label);
    return {pos, labels.size() - pos};
}

}  // namespace

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    check_scored(scores, labels);
    auto [n_pos, n_neg] = class_counts(labels);
    if (n_pos == 0 || n_neg == 0) throw Error("auc requires both classes");

    std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });

    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double midrank = 0.5 * static_cast<double>(i + 1 + j);
        for (std::size_t t = i; t < j; ++t)
            if (labels[order[t]] == 1) pos_rank_sum += midrank;
        i = j;
    }
    double np = static_cast<double>(n_pos);
    double nn = static_cast<double>(n_neg);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

MetricReport confusion_metrics(const std::vector<double>& scores,
                               const std::vector<int>& labels,
                               double threshold) {
    check_scored(scores, labels);
    MetricReport r;
    r.threshold = threshold;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bool bot = scores[i] > threshold;
        if (labels[i] == 1)
            ++(bot ? r.tp : r.fn);
        else
            ++(bot ? r.fp : r.tn);
    }
    r.n_pos = r.tp + r.fn;
    r.n_neg = r.tn + r.fp;

    auto ratio = [](std::int64_t num, std::int64_t den) {
        return den > 0 ? static_cast<double>(num) / static_cast<double>(den)
                       : 0.0;
    };
    r.accuracy = ratio(r.tp + r.tn, r.n_pos + r.n_neg);
    r.precision = ratio(r.tp, r.tp + r.fp);
    r.recall = ratio(r.tp, r.tp + r.fn);
    r.specificity = ratio(r.tn, r.tn + r.fp);
    r.f1 = ratio(2 * r.tp, 2 * r.tp + r.fp + r.fn);
    r.auc = (r.n_pos > 0 && r.n_neg > 0) ? auc(scores, labels) : 0.5;
    return r;
}

double best_f1_threshold(const std::vector<double>& scores,
                         const std::vector<int>& labels) {
    check_scored(scores, labels);
    auto [n_pos, n_neg] = class_counts(labels);
    if (n_pos == 0 || n_neg == 0)
        throw Error("best_f1_threshold requires both classes");

    std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] < scores[b];
    });

    // pos_below[i]: positives among the i lowest scores.
    std::vector<std::int64_t> pos_below(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        pos_below[i + 1] = pos_below[i] + labels[order[i]];

    // Candidate cuts: everything at index >= cut is predicted bot.
    std::vector<std::pair<double, std::size_t>> candidates;
    double lowest = scores[order[0]];
    candidates.emplace_back(lowest > 0.0 ? lowest / 2.0 : lowest - 0.5, 0);
    for (std::size_t i = 1; i < n; ++i) {
        double prev = scores[order[i - 1]];
        double cur = scores[order[i]];
        if (cur != prev) candidates.emplace_back((prev + cur) / 2.0, i);
    }
    candidates.emplace_back(scores[order[n - 1]], n);

    double best_t = candidates.front().first;
    double best_f1 = -1.0;
    auto total_pos = static_cast<std::int64_t>(n_pos);
    for (auto [t, cut] : candidates) {
        std::int64_t tp = total_pos - pos_below[cut];
        std::int64_t fn = pos_below[cut];
        std::int64_t fp = static_cast<std::int64_t>(n - cut) - tp;
        std::int64_t den = 2 * tp + fp + fn;
        double f1 = den > 0 ? 2.0 * static_cast<double>(tp) /
                                  static_cast<double>(den)
                            : 0.0;
        if (f1 > best_f1) {
            best_f1 = f1;
            best_t = t;
        }
    }
    return best_t;
}

double kfold_cv(const Matrix& X, const std::vector<int>& y,
                const ClassifierSpec& spec, int k, std::uint64_t seed) {
    if (k < 2) throw Error("kfold_cv needs k >= 2");
    if (X.size() != y.size()) throw Error("X and y differ in length");
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] != 0 && y[i] != 1) throw Error("label must be 0 or 1");
        (y[i] == 1 ? pos : neg).push_back(i);
    }
    if (pos.size() < static_cast<std::size_t>(k) ||
        neg.size() < static_cast<std::size_t>(k))
        throw Error("kfold_cv needs at least k members of each class");

    Rng root(seed);
    Rng pos_rng(root.fork("cv-pos"));
    pos_rng.shuffle(pos);
    Rng neg_rng(root.fork("cv-neg"));
    neg_rng.shuffle(neg);

    std::vector<int> fold(y.size(), 0);
    for (std::size_t i = 0; i < pos.size(); ++i)
        fold[pos[i]] = static_cast<int>(i % static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < neg.size(); ++i)
        fold[neg[i]] = static_cast<int>(i % static_cast<std::size_t>(k));

    double auc_sum = 0.0;
    for (int f = 0; f < k; ++f) {
        Matrix train_X;
        std::vector<int> train_y;
        Matrix test_X;
        std::vector<int> test_y;
        for (std::size_t i = 0; i < y.size(); ++i) {
            if (fold[i] == f) {
                test_X.push_back(X[i]);
                test_y.push_back(y[i]);
            } else {
                train_X.push_back(X[i]);
                train_y.push_back(y[i]);
            }
        }
        ClassifierSpec fold_spec = spec;
        fold_spec.seed = root.fork("cv-fold-" + std::to_string(f));
        FittedModel model = fit(fold_spec, train_X, train_y);
        auc_sum += auc(score(model, test_X), test_y);
    }
    return auc_sum / static_cast<double>(k);
}

namespace {

// Standardized-statistic critical values at the tabulated significance
// levels, interpolated as b0 + b1/sqrt(m) + b2/m with m = k - 1 = 1.
constexpr double kB0_1pct = 2.326;
constexpr double kB1_1pct = 1.822;
constexpr double kB2_1pct = -0.396;

}  // namespace

double anderson_darling_1pct_critical() {
    return kB0_1pct + kB1_1pct + kB2_1pct;
}

AdTestResult anderson_darling_2sample(const std::vector<double>& x,
                                      const std::vector<double>& y) {
    if (x.size() < 5 || y.size() < 5)
        throw Error("anderson_darling_2sample needs at least 5 per sample");

    std::vector<double> xs(x);
    std::vector<double> ys(y);
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    std::vector<double> pooled;
    pooled.reserve(xs.size() + ys.size());
    std::merge(xs.begin(), xs.end(), ys.begin(), ys.end(),
               std::back_inserter(pooled));
    double n_total = static_cast<double>(pooled.size());

    std::vector<double> zstar;
    std::vector<double> tie_count;
    std::vector<double> below;  // pooled values strictly below zstar[j]
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
        zstar.push_back(pooled[i]);
        tie_count.push_back(static_cast<double>(j - i));
        below.push_back(static_cast<double>(i));
        i = j;
    }

    double a2 = 0.0;
    for (const std::vector<double>* sample : {&xs, &ys}) {
        double n_i = static_cast<double>(sample->size());
        double inner = 0.0;
        std::size_t cursor = 0;
        for (std::size_t j = 0; j < zstar.size(); ++j) {
            std::size_t eq = 0;
            while (cursor + eq < sample->size() &&
                   (*sample)[cursor + eq] == zstar[j])
                ++eq;
            double m_ij = static_cast<double>(cursor) +
                          static_cast<double>(eq) / 2.0;
            cursor += eq;
            double b_j = below[j] + tie_count[j] / 2.0;
            double den =
                b_j * (n_total - b_j) - n_total * tie_count[j] / 4.0;
            if (den <= 0.0) continue;
            double diff = n_total * m_ij - b_j * n_i;
            inner += tie_count[j] / n_total * diff * diff / den;
        }
        a2 += inner / n_i;
    }
    a2 *= (n_total - 1.0) / n_total;

    // Scholz-Stephens variance of A^2 under the null, k = 2.
    double big_h = 1.0 / static_cast<double>(xs.size()) +
                   1.0 / static_cast<double>(ys.size());
    std::size_t n_sz = pooled.size();
    std::vector<double> harmonic(n_sz, 0.0);
    for (std::size_t i = 1; i < n_sz; ++i)
        harmonic[i] = harmonic[i - 1] + 1.0 / static_cast<double>(i);
    double little_h = harmonic[n_sz - 1];
    double g = 0.0;
    for (std::size_t i = 1; i + 1 < n_sz; ++i)
        g += (harmonic[n_sz - 1] - harmonic[i]) /
             static_cast<double>(n_sz - i);
    constexpr double k_samples = 2.0;
    double a = (4.0 * g - 6.0) * (k_samples - 1.0) +
               (10.0 - 6.0 * g) * big_h;
    double b = (2.0 * g - 4.0) * k_samples * k_samples +
               8.0 * little_h * k_samples +
               (2.0 * g - 14.0 * little_h - 4.0) * big_h - 8.0 * little_h +
               4.0 * g - 6.0;
    double c = (6.0 * little_h + 2.0 * g - 2.0) * k_samples * k_samples +
               (4.0 * little_h - 4.0 * g + 6.0) * k_samples +
               (2.0 * little_h - 6.0) * big_h + 4.0 * little_h;
    double d = (2.0 * little_h + 6.0) * k_samples * k_samples -
               4.0 * little_h * k_samples;
    double variance = (a * n_total * n_total * n_total +
                       b * n_total * n_total + c * n_total + d) /
                      ((n_total - 1.0) * (n_total - 2.0) * (n_total - 3.0));
    double sigma = std::sqrt(variance);

    AdTestResult result;
    result.statistic = a2;
    result.standardized = (a2 - (k_samples - 1.0)) / sigma;
    result.reject_at_1pct =
        result.standardized > anderson_darling_1pct_critical();
    return result;
}

std::string metric_csv_header() {
    return "dataset,model,threshold,auc,f1,accuracy,recall,precision,"
           "specificity,tp,fp,tn,fn";
}

std::string metric_csv_row(const std::string& dataset,
                           const std::string& model_id,
                           const MetricReport& report) {
    std::ostringstream out;
    out << dataset << ',' << model_id << ','
        << format_double(report.threshold) << ','
        << format_double(report.auc) << ',' << format_double(report.f1)
        << ',' << format_double(report.accuracy) << ','
        << format_double(report.recall) << ','
        << format_double(report.precision) << ','
        << format_double(report.specificity) << ',' << report.tp << ','
        << report.fp << ',' << report.tn << ',' << report.fn;
    return out.str();
}

}  // namespace botdna
