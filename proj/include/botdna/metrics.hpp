#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "botdna/classify.hpp"

namespace botdna {

// Labels are 1 for bot, 0 for human throughout.

// Mann-Whitney AUC with midrank tie handling: P(bot score > human score)
// plus half the tie probability.  Throws if either class is absent.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct MetricReport {
    double auc = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
    double recall = 0.0;
    double precision = 0.0;
    double specificity = 0.0;
    double threshold = 0.0;
    std::int64_t n_pos = 0;
    std::int64_t n_neg = 0;
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;
};

// Predicts bot iff score > threshold (strict).  Ratios with an empty
// denominator are 0; auc is 0.5 when only one class is present.
MetricReport confusion_metrics(const std::vector<double>& scores,
                               const std::vector<int>& labels,
                               double threshold);

// Evaluates F1 at the midpoints between consecutive distinct scores plus
// one candidate below the minimum and the maximum score itself; returns
// the F1-maximizing threshold, lowest on ties.
double best_f1_threshold(const std::vector<double>& scores,
                         const std::vector<int>& labels);

// Stratified k-fold cross-validation: mean of the per-fold test AUC.
// Fold assignment shuffles each class with the given seed; each fold's
// model seed is forked from it.  Throws if either class has fewer than
// k members.
double kfold_cv(const Matrix& X, const std::vector<int>& y,
                const ClassifierSpec& spec, int k = 5,
                std::uint64_t seed = 1);

struct AdTestResult {
    double statistic = 0.0;     // A^2 (tie-corrected, k = 2)
    double standardized = 0.0;  // (A^2 - 1) / sigma
    bool reject_at_1pct = false;
};

double anderson_darling_1pct_critical();

// Scholz-Stephens two-sample Anderson-Darling test with midrank tie
// correction.  Requires at least 5 observations per sample.
AdTestResult anderson_darling_2sample(const std::vector<double>& x,
                                      const std::vector<double>& y);

std::string metric_csv_header();
std::string metric_csv_row(const std::string& dataset,
                           const std::string& model_id,
                           const MetricReport& report);

}  // namespace botdna
