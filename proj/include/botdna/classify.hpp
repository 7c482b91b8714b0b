#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "botdna/decision_tree.hpp"
#include "botdna/dna.hpp"
#include "botdna/linear_model.hpp"
#include "botdna/mlp.hpp"

namespace botdna {

enum class Algorithm {
    logistic_regression,
    random_forest,
    gradient_boosting,
    knn,
    naive_bayes,
    adaboost,
    linear_svm,
    mlp,
};

std::string_view to_string(Algorithm algorithm);
Algorithm algorithm_from_string(std::string_view s);
const std::vector<Algorithm>& all_algorithms();

struct ClassifierSpec {
    Algorithm algorithm = Algorithm::logistic_regression;
    std::map<std::string, double> hyperparameters;  // overrides of defaults
    std::uint64_t seed = 0;
};

// Per-feature (x - mean) / std, fit on training rows only.  Constant
// columns keep std 1 so they map to zero.
class Standardizer {
public:
    Standardizer(std::vector<double> means, std::vector<double> stds);
    static Standardizer fit(const Matrix& X);

    std::vector<double> transform(const std::vector<double>& row) const;
    Matrix transform_all(const Matrix& X) const;

    const std::vector<double>& means() const { return means_; }
    const std::vector<double>& stds() const { return stds_; }

private:
    std::vector<double> means_;
    std::vector<double> stds_;
};

struct ForestParams {
    std::vector<DecisionTree> trees;
};

struct BoostParams {
    double base_score = 0.0;  // prior log-odds
    double learning_rate = 0.1;
    std::vector<DecisionTree> trees;
};

struct KnnParams {
    Matrix train_X;  // standardized
    std::vector<int> train_y;
    int k = 5;
};

struct NaiveBayesParams {
    std::array<double, 2> log_prior{};
    std::array<std::vector<double>, 2> means;
    std::array<std::vector<double>, 2> variances;
};

struct AdaBoostParams {
    std::vector<DecisionTree> stumps;
    std::vector<double> alphas;
};

using ModelParams = std::variant<LinearParams, ForestParams, BoostParams,
                                 KnnParams, NaiveBayesParams, AdaBoostParams,
                                 MlpParams>;

struct FittedModel {
    ClassifierSpec spec;
    std::optional<Standardizer> scaler;
    FeatureSet feature_set = FeatureSet::D;
    std::string training_combo;
    std::size_t arity = 0;
    ModelParams params;
};

// Trains spec.algorithm on (X, y) with y in {0 = human, 1 = bot}.  Scale-
// sensitive algorithms (LR, SVM, KNN, MLP) get a scaler fit on X.  Throws
// on fewer than two rows, single-class y, ragged rows, or non-finite
// features.
FittedModel fit(const ClassifierSpec& spec, const Matrix& X,
                const std::vector<int>& y);

// Bot scores in [0,1], one per row; deterministic given the model.
std::vector<double> score(const FittedModel& model, const Matrix& X);
double score_one(const FittedModel& model, const std::vector<double>& row);

// Versioned binary persistence; loading reproduces scores bit-identically.
void save_model(const FittedModel& model, const std::filesystem::path& path);
FittedModel load_model(const std::filesystem::path& path);

}  // namespace botdna
