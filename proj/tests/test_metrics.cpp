#include "botdna/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "botdna/errors.hpp"
#include "botdna/rng.hpp"
#include "doctest.h"

using namespace botdna;

namespace {

double pairwise_auc(const std::vector<double>& scores,
                    const std::vector<int>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

void random_instance(Rng& rng, std::size_t n, std::vector<double>& scores,
                     std::vector<int>& labels) {
    scores.clear();
    labels.clear();
    for (std::size_t i = 0; i < n; ++i) {
        double s = rng.uniform();
        if (rng.uniform() < 0.5) s = std::round(s * 10.0) / 10.0;
        scores.push_back(s);
        labels.push_back(rng.uniform() < 0.5 ? 1 : 0);
    }
    labels[0] = 1;
    labels[1] = 0;
}

void blobs(std::size_t n_per, std::uint64_t seed, Matrix& X,
           std::vector<int>& y) {
    Rng rng(seed);
    X.clear();
    y.clear();
    for (std::size_t i = 0; i < n_per; ++i) {
        X.push_back({rng.normal(), rng.normal()});
        y.push_back(0);
    }
    for (std::size_t i = 0; i < n_per; ++i) {
        X.push_back({6.0 + rng.normal(), rng.normal()});
        y.push_back(1);
    }
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("auc on separable and mixed fixtures") {
    CHECK(auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}) == doctest::Approx(1.0));
    CHECK(auc({0.9, 0.6, 0.4, 0.2}, {1, 0, 1, 0}) == doctest::Approx(0.75));
    CHECK(auc({0.5, 0.5, 0.5, 0.5}, {1, 1, 0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("auc rejects degenerate input") {
    CHECK_THROWS_AS(auc({0.1, 0.2}, {1, 1}), Error);
    CHECK_THROWS_AS(auc({0.1, 0.2}, {0, 0}), Error);
    CHECK_THROWS_AS(auc({0.1}, {1, 0}), Error);
    CHECK_THROWS_AS(auc({0.1, 0.2}, {1, 2}), Error);
}

TEST_CASE("auc matches the pairwise count on random instances") {
    Rng rng(41);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.below(49));
        std::vector<double> scores;
        std::vector<int> labels;
        random_instance(rng, n, scores, labels);
        CHECK(auc(scores, labels) ==
              doctest::Approx(pairwise_auc(scores, labels)).epsilon(1e-12));
    }
}

TEST_CASE("auc of flipped labels complements to one") {
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> scores;
        std::vector<int> labels;
        random_instance(rng, 30, scores, labels);
        std::vector<int> flipped;
        for (int label : labels) flipped.push_back(1 - label);
        CHECK(auc(scores, labels) + auc(scores, flipped) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("auc is invariant under increasing score transforms") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> scores;
        std::vector<int> labels;
        random_instance(rng, 40, scores, labels);
        std::vector<double> warped;
        for (double s : scores) warped.push_back(std::exp(3.0 * s) - 1.0);
        CHECK(auc(scores, labels) == auc(warped, labels));
    }
}

TEST_CASE("confusion metrics on a perfect classifier") {
    MetricReport r =
        confusion_metrics({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}, 0.5);
    CHECK(r.accuracy == 1.0);
    CHECK(r.f1 == 1.0);
    CHECK(r.tp == 2);
    CHECK(r.tn == 2);
    CHECK(r.fp == 0);
    CHECK(r.fn == 0);
}

TEST_CASE("all-human predictions hit the zero conventions") {
    MetricReport r = confusion_metrics({0.1, 0.2, 0.3}, {1, 1, 0}, 0.9);
    CHECK(r.recall == 0.0);
    CHECK(r.f1 == 0.0);
    CHECK(r.precision == 0.0);
    CHECK(r.specificity == 1.0);
}

TEST_CASE("confusion metrics match a hand-built matrix at 0.3") {
    std::vector<double> scores{0.95, 0.4, 0.35, 0.3, 0.25, 0.1};
    std::vector<int> labels{1, 1, 0, 1, 0, 0};
    MetricReport r = confusion_metrics(scores, labels, 0.3);
    CHECK(r.tp == 2);
    CHECK(r.fp == 1);
    CHECK(r.fn == 1);
    CHECK(r.tn == 2);
    CHECK(r.n_pos == 3);
    CHECK(r.n_neg == 3);
    CHECK(r.accuracy == doctest::Approx(4.0 / 6.0));
    CHECK(r.precision == doctest::Approx(2.0 / 3.0));
    CHECK(r.recall == doctest::Approx(2.0 / 3.0));
    CHECK(r.specificity == doctest::Approx(2.0 / 3.0));
    CHECK(r.f1 == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("metrics recompute exactly from the stored counts") {
    Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> scores;
        std::vector<int> labels;
        random_instance(rng, 25, scores, labels);
        MetricReport r = confusion_metrics(scores, labels, rng.uniform());
        CHECK(r.tp + r.fn == r.n_pos);
        CHECK(r.tn + r.fp == r.n_neg);
        double n = static_cast<double>(r.n_pos + r.n_neg);
        CHECK(r.accuracy == static_cast<double>(r.tp + r.tn) / n);
        if (r.tp + r.fp > 0)
            CHECK(r.precision == static_cast<double>(r.tp) /
                                     static_cast<double>(r.tp + r.fp));
        CHECK(r.recall ==
              static_cast<double>(r.tp) / static_cast<double>(r.n_pos));
        CHECK(r.specificity ==
              static_cast<double>(r.tn) / static_cast<double>(r.n_neg));
    }
}

TEST_CASE("best threshold separates a clean fixture at the midpoint") {
    double t = best_f1_threshold({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0});
    CHECK(t == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(confusion_metrics({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}, t).f1 ==
          1.0);
}

TEST_CASE("tied best F1 returns the lowest threshold") {
    // All-bot at 0.25 and bot-only-above-0.8 both reach F1 = 2/3.
    std::vector<double> scores{0.9, 0.7, 0.6, 0.5};
    std::vector<int> labels{1, 0, 0, 1};
    double t = best_f1_threshold(scores, labels);
    CHECK(t == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("identical scores give the closed-form prevalence F1") {
    std::vector<double> scores(5, 0.7);
    std::vector<int> labels{1, 1, 1, 0, 0};
    double t = best_f1_threshold(scores, labels);
    CHECK(t < 0.7);
    double p = 3.0 / 5.0;
    CHECK(confusion_metrics(scores, labels, t).f1 ==
          doctest::Approx(2.0 * p / (p + 1.0)));
}

TEST_CASE("best threshold rejects single-class input") {
    CHECK_THROWS_AS(best_f1_threshold({0.1, 0.2}, {1, 1}), Error);
}

TEST_CASE("best threshold beats a fine grid scan") {
    Rng rng(45);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(rng.below(29));
        std::vector<double> scores;
        std::vector<int> labels;
        random_instance(rng, n, scores, labels);
        double best = best_f1_threshold(scores, labels);
        double best_f1 = confusion_metrics(scores, labels, best).f1;
        for (int g = 0; g <= 1000; ++g) {
            double t = static_cast<double>(g) / 1000.0;
            CHECK(best_f1 >= confusion_metrics(scores, labels, t).f1);
        }
    }
}

TEST_CASE("cross-validation separates clean blobs") {
    Matrix X;
    std::vector<int> y;
    blobs(100, 7, X, y);
    ClassifierSpec spec;
    spec.algorithm = Algorithm::logistic_regression;
    spec.seed = 3;
    CHECK(kfold_cv(X, y, spec, 5, 11) >= 0.99);
}

TEST_CASE("cross-validation is seeded and deterministic") {
    Matrix X;
    std::vector<int> y;
    blobs(40, 8, X, y);
    ClassifierSpec spec;
    spec.algorithm = Algorithm::logistic_regression;
    spec.seed = 3;
    CHECK(kfold_cv(X, y, spec, 5, 11) == kfold_cv(X, y, spec, 5, 11));
}

TEST_CASE("shuffled labels score near chance") {
    Matrix X;
    std::vector<int> y;
    blobs(100, 9, X, y);
    ClassifierSpec spec;
    spec.algorithm = Algorithm::logistic_regression;
    spec.seed = 3;
    int in_band = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        std::vector<int> shuffled = y;
        Rng rng(1000 + s);
        rng.shuffle(shuffled);
        double cv = kfold_cv(X, shuffled, spec, 5, s);
        if (cv >= 0.4 && cv <= 0.6) ++in_band;
    }
    CHECK(in_band >= 17);
}

TEST_CASE("cross-validation rejects an oversized k") {
    Matrix X;
    std::vector<int> y;
    for (int i = 0; i < 10; ++i) {
        X.push_back({static_cast<double>(i)});
        y.push_back(i < 6 ? 1 : 0);
    }
    ClassifierSpec spec;
    CHECK_THROWS_AS(kfold_cv(X, y, spec, 5, 1), Error);
}

TEST_CASE("anderson-darling matches reference values") {
    std::vector<double> x1{1, 2, 3, 4, 5, 6};
    std::vector<double> y1{1.5, 2.5, 3.5, 4.5, 5.5, 6.5};
    AdTestResult r1 = anderson_darling_2sample(x1, y1);
    CHECK(r1.statistic ==
          doctest::Approx(0.27073674887788113).epsilon(1e-12));
    CHECK(r1.standardized ==
          doctest::Approx(-1.1101552661170608).epsilon(1e-12));
    CHECK_FALSE(r1.reject_at_1pct);

    std::vector<double> x2{1, 1, 2, 2, 3};
    std::vector<double> y2{1, 2, 2, 3, 3};
    AdTestResult r2 = anderson_darling_2sample(x2, y2);
    CHECK(r2.statistic ==
          doctest::Approx(0.49714285714285716).epsilon(1e-12));
    CHECK(r2.standardized ==
          doctest::Approx(-0.7883543716281316).epsilon(1e-12));
    CHECK_FALSE(r2.reject_at_1pct);

    std::vector<double> x3{1, 2, 3, 4, 5, 6, 7};
    std::vector<double> y3{10, 11, 12, 13, 14, 15};
    AdTestResult r3 = anderson_darling_2sample(x3, y3);
    CHECK(r3.statistic == doctest::Approx(5.151500047299328).epsilon(1e-12));
    CHECK(r3.standardized ==
          doctest::Approx(6.24940170544591).epsilon(1e-12));
    CHECK(r3.reject_at_1pct);
}

TEST_CASE("identical samples sit at the minimum with no rejection") {
    std::vector<double> x{1, 2, 3, 4, 5};
    AdTestResult r = anderson_darling_2sample(x, x);
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.standardized ==
          doctest::Approx(-1.567750170851398).epsilon(1e-12));
    CHECK_FALSE(r.reject_at_1pct);
}

TEST_CASE("anderson-darling is symmetric in its samples") {
    Rng rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x;
        std::vector<double> y;
        for (int i = 0; i < 30; ++i) x.push_back(rng.uniform());
        for (int i = 0; i < 20; ++i) y.push_back(rng.uniform(0.2, 1.2));
        AdTestResult a = anderson_darling_2sample(x, y);
        AdTestResult b = anderson_darling_2sample(y, x);
        CHECK(a.statistic == b.statistic);
        CHECK(a.standardized == b.standardized);
    }
}

TEST_CASE("anderson-darling rejects undersized samples") {
    std::vector<double> tiny{1, 2, 3, 4};
    std::vector<double> ok{1, 2, 3, 4, 5};
    CHECK_THROWS_AS(anderson_darling_2sample(tiny, ok), Error);
    CHECK_THROWS_AS(anderson_darling_2sample(ok, tiny), Error);
}

TEST_CASE("rejection decision follows the critical value") {
    CHECK(anderson_darling_1pct_critical() == doctest::Approx(3.752));
}

TEST_CASE("false positive rate stays near nominal") {
    int rejects = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Rng rng(2000 + trial);
        std::vector<double> x;
        std::vector<double> y;
        for (int i = 0; i < 500; ++i) x.push_back(rng.uniform());
        for (int i = 0; i < 500; ++i) y.push_back(rng.uniform());
        if (anderson_darling_2sample(x, y).reject_at_1pct) ++rejects;
    }
    CHECK(rejects <= 5);
}

TEST_CASE("a half-width shift is detected") {
    int rejects = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Rng rng(3000 + trial);
        std::vector<double> x;
        std::vector<double> y;
        for (int i = 0; i < 500; ++i) x.push_back(rng.uniform());
        for (int i = 0; i < 500; ++i) y.push_back(rng.uniform(0.5, 1.5));
        if (anderson_darling_2sample(x, y).reject_at_1pct) ++rejects;
    }
    CHECK(rejects >= 57);
}

TEST_CASE("metric rows serialize with stable columns") {
    MetricReport r =
        confusion_metrics({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0}, 0.5);
    CHECK(metric_csv_header() ==
          "dataset,model,threshold,auc,f1,accuracy,recall,precision,"
          "specificity,tp,fp,tn,fn");
    CHECK(metric_csv_row("rtbust", "light/lr", r) ==
          "rtbust,light/lr,0.5,1,1,1,1,1,1,2,0,2,0");
}

}  // TEST_SUITE
