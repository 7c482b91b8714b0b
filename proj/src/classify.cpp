#include "botdna/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"

namespace botdna {

namespace {

double hyper(const ClassifierSpec& spec, const std::string& name,
             double fallback) {
    auto it = spec.hyperparameters.find(name);
    return it == spec.hyperparameters.end() ? fallback : it->second;
}

void validate_training_input(const Matrix& X, const std::vector<int>& y) {
    if (X.size() != y.size())
        throw Error("feature rows and labels differ in length");
    if (X.size() < 2) throw Error("need at least two training rows");
    std::size_t arity = X.front().size();
    bool saw_bot = false, saw_human = false;
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (X[i].size() != arity)
            throw Error("ragged feature matrix at row " + std::to_string(i));
        for (std::size_t j = 0; j < arity; ++j)
            if (!std::isfinite(X[i][j]))
                throw Error("non-finite feature at row " + std::to_string(i) +
                            " column " + std::to_string(j));
        (y[i] == 1 ? saw_bot : saw_human) = true;
    }
    if (!saw_bot || !saw_human) throw Error("degenerate training labels");
}

ForestParams fit_forest(const ClassifierSpec& spec, const Matrix& X,
                        const std::vector<int>& y) {
    int n_trees = static_cast<int>(hyper(spec, "n_estimators", 100));
    std::size_t n = X.size();
    std::size_t d = X.front().size();
    TreeParams tp;
    tp.max_features = std::max(
        1, static_cast<int>(std::sqrt(static_cast<double>(d))));
    bool bootstrap = hyper(spec, "bootstrap", 1.0) != 0.0;
    Rng rng(Rng(spec.seed).fork("random_forest"));
    ForestParams params;
    std::vector<double> weights(n, 1.0);
    for (int t = 0; t < n_trees; ++t) {
        if (!bootstrap) {
            params.trees.push_back(
                DecisionTree::fit_classifier(X, y, weights, tp, rng));
            continue;
        }
        Matrix Xb(n);
        std::vector<int> yb(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t pick = rng.below(n);
            Xb[i] = X[pick];
            yb[i] = y[pick];
        }
        params.trees.push_back(
            DecisionTree::fit_classifier(Xb, yb, weights, tp, rng));
    }
    return params;
}

BoostParams fit_boost(const ClassifierSpec& spec, const Matrix& X,
                      const std::vector<int>& y) {
    int n_stages = static_cast<int>(hyper(spec, "n_estimators", 100));
    BoostParams params;
    params.learning_rate = hyper(spec, "learning_rate", 0.1);
    TreeParams tp;
    tp.max_depth = static_cast<int>(hyper(spec, "max_depth", 3));
    Rng rng(Rng(spec.seed).fork("gradient_boosting"));

    std::size_t n = X.size();
    double p0 = std::clamp(
        std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n),
        1e-12, 1.0 - 1e-12);
    params.base_score = std::log(p0 / (1.0 - p0));

    std::vector<double> f(n, params.base_score);
    std::vector<double> residual(n);
    for (int stage = 0; stage < n_stages; ++stage) {
        for (std::size_t i = 0; i < n; ++i)
            residual[i] = static_cast<double>(y[i]) - sigmoid(f[i]);
        DecisionTree tree = DecisionTree::fit_regressor(X, residual, tp, rng);

        // Newton step per leaf under log-loss, as in least-squares boosting
        // of the logistic deviance.
        std::map<std::size_t, std::pair<double, double>> leaf_terms;
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(f[i]);
            auto& [num, den] = leaf_terms[tree.leaf_index(X[i])];
            num += residual[i];
            den += p * (1.0 - p);
        }
        for (auto& [leaf, terms] : leaf_terms)
            tree.nodes()[leaf].value =
                terms.first / std::max(terms.second, 1e-12);
        for (std::size_t i = 0; i < n; ++i)
            f[i] += params.learning_rate * tree.predict(X[i]);
        params.trees.push_back(std::move(tree));
    }
    return params;
}

NaiveBayesParams fit_naive_bayes(const ClassifierSpec& spec, const Matrix& X,
                                 const std::vector<int>& y) {
    std::size_t d = X.front().size();
    NaiveBayesParams params;
    std::array<double, 2> count{};
    for (int c = 0; c < 2; ++c) {
        params.means[c].assign(d, 0.0);
        params.variances[c].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
        int c = y[i];
        count[c] += 1.0;
        for (std::size_t j = 0; j < d; ++j) params.means[c][j] += X[i][j];
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j) params.means[c][j] /= count[c];
    for (std::size_t i = 0; i < X.size(); ++i) {
        int c = y[i];
        for (std::size_t j = 0; j < d; ++j) {
            double delta = X[i][j] - params.means[c][j];
            params.variances[c][j] += delta * delta;
        }
    }

    // Shared variance floor: var_smoothing times the largest per-feature
    // variance of the pooled data.
    std::vector<double> pooled_mean(d, 0.0), pooled_var(d, 0.0);
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) pooled_mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j)
        pooled_mean[j] /= static_cast<double>(X.size());
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) {
            double delta = row[j] - pooled_mean[j];
            pooled_var[j] += delta * delta / static_cast<double>(X.size());
        }
    double floor = hyper(spec, "var_smoothing", 1e-9) *
                   *std::max_element(pooled_var.begin(), pooled_var.end());
    if (floor <= 0.0) floor = hyper(spec, "var_smoothing", 1e-9);

    for (int c = 0; c < 2; ++c) {
        params.log_prior[c] =
            std::log(count[c] / static_cast<double>(X.size()));
        for (std::size_t j = 0; j < d; ++j)
            params.variances[c][j] =
                params.variances[c][j] / count[c] + floor;
    }
    return params;
}

AdaBoostParams fit_adaboost(const ClassifierSpec& spec, const Matrix& X,
                            const std::vector<int>& y) {
    int n_stumps = static_cast<int>(hyper(spec, "n_estimators", 50));
    std::size_t n = X.size();
    TreeParams tp;
    tp.max_depth = 1;
    Rng rng(Rng(spec.seed).fork("adaboost"));
    AdaBoostParams params;
    std::vector<double> w(n, 1.0 / static_cast<double>(n));

    for (int m = 0; m < n_stumps; ++m) {
        DecisionTree stump = DecisionTree::fit_classifier(X, y, w, tp, rng);
        double err = 0.0;
        std::vector<int> pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = stump.predict(X[i]) > 0.5 ? 1 : 0;
            if (pred[i] != y[i]) err += w[i];
        }
        if (err > 0.5 - 1e-12 && !params.stumps.empty()) break;
        err = std::clamp(err, 1e-10, 1.0 - 1e-10);
        double alpha = std::max(std::log((1.0 - err) / err), 1e-10);
        params.stumps.push_back(std::move(stump));
        params.alphas.push_back(alpha);
        if (err <= 1e-10) break;

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pred[i] != y[i]) w[i] *= std::exp(alpha);
            total += w[i];
        }
        for (double& wi : w) wi /= total;
    }
    return params;
}

MlpParams fit_mlp_spec(const ClassifierSpec& spec, const Matrix& X,
                       const std::vector<int>& y) {
    std::size_t d = X.front().size();
    MlpConfig config;
    double h1 = hyper(spec, "hidden1", 0);
    double h2 = hyper(spec, "hidden2", 0);
    if (h1 > 0) {
        config.hidden_sizes.push_back(static_cast<std::size_t>(h1));
        if (h2 > 0) config.hidden_sizes.push_back(static_cast<std::size_t>(h2));
    } else if (d >= 4) {
        config.hidden_sizes = {300, 200};
    } else if (d == 3) {
        config.hidden_sizes = {150};
    } else {
        config.hidden_sizes = {120};
    }
    config.learning_rate = hyper(spec, "learning_rate", 1e-3);
    config.l2_alpha = hyper(spec, "alpha", 1e-4);
    config.batch_size =
        static_cast<std::size_t>(hyper(spec, "batch_size", 200));
    config.max_epochs = static_cast<int>(hyper(spec, "max_epochs", 200));
    Rng rng(Rng(spec.seed).fork("mlp"));
    return fit_mlp(X, y, config, rng);
}

double knn_score(const KnnParams& params, const std::vector<double>& row) {
    std::size_t n = params.train_X.size();
    std::size_t k =
        std::min<std::size_t>(static_cast<std::size_t>(params.k), n);
    std::vector<std::pair<double, std::size_t>> dist(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d2 = 0.0;
        const auto& train_row = params.train_X[i];
        for (std::size_t j = 0; j < row.size(); ++j) {
            double delta = row[j] - train_row[j];
            d2 += delta * delta;
        }
        dist[i] = {d2, i};
    }
    std::partial_sort(dist.begin(), dist.begin() + static_cast<long>(k),
                      dist.end());
    double bots = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        bots += static_cast<double>(params.train_y[dist[i].second]);
    return bots / static_cast<double>(k);
}

double naive_bayes_score(const NaiveBayesParams& params,
                         const std::vector<double>& row) {
    std::array<double, 2> log_post = params.log_prior;
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < row.size(); ++j) {
            double var = params.variances[c][j];
            double delta = row[j] - params.means[c][j];
            log_post[c] -= 0.5 * (std::log(2.0 * M_PI * var) +
                                  delta * delta / var);
        }
    double peak = std::max(log_post[0], log_post[1]);
    double e0 = std::exp(log_post[0] - peak);
    double e1 = std::exp(log_post[1] - peak);
    return e1 / (e0 + e1);
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::logistic_regression: return "logistic_regression";
        case Algorithm::random_forest: return "random_forest";
        case Algorithm::gradient_boosting: return "gradient_boosting";
        case Algorithm::knn: return "knn";
        case Algorithm::naive_bayes: return "naive_bayes";
        case Algorithm::adaboost: return "adaboost";
        case Algorithm::linear_svm: return "linear_svm";
        case Algorithm::mlp: return "mlp";
    }
    return "logistic_regression";
}

Algorithm algorithm_from_string(std::string_view s) {
    for (Algorithm a : all_algorithms())
        if (to_string(a) == s) return a;
    throw Error("unknown algorithm '" + std::string(s) + "'");
}

const std::vector<Algorithm>& all_algorithms() {
    static const std::vector<Algorithm> algorithms = {
        Algorithm::logistic_regression, Algorithm::random_forest,
        Algorithm::gradient_boosting,   Algorithm::knn,
        Algorithm::naive_bayes,         Algorithm::adaboost,
        Algorithm::linear_svm,          Algorithm::mlp,
    };
    return algorithms;
}

Standardizer::Standardizer(std::vector<double> means, std::vector<double> stds)
    : means_(std::move(means)), stds_(std::move(stds)) {}

Standardizer Standardizer::fit(const Matrix& X) {
    std::size_t d = X.front().size();
    std::vector<double> means(d, 0.0), stds(d, 0.0);
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) means[j] += row[j];
    for (std::size_t j = 0; j < d; ++j)
        means[j] /= static_cast<double>(X.size());
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) {
            double delta = row[j] - means[j];
            stds[j] += delta * delta;
        }
    for (std::size_t j = 0; j < d; ++j) {
        stds[j] = std::sqrt(stds[j] / static_cast<double>(X.size()));
        if (stds[j] == 0.0) stds[j] = 1.0;
    }
    return Standardizer(std::move(means), std::move(stds));
}

std::vector<double> Standardizer::transform(
    const std::vector<double>& row) const {
    std::vector<double> out(row.size());
    for (std::size_t j = 0; j < row.size(); ++j)
        out[j] = (row[j] - means_[j]) / stds_[j];
    return out;
}

Matrix Standardizer::transform_all(const Matrix& X) const {
    Matrix out;
    out.reserve(X.size());
    for (const auto& row : X) out.push_back(transform(row));
    return out;
}

FittedModel fit(const ClassifierSpec& spec, const Matrix& X,
                const std::vector<int>& y) {
    validate_training_input(X, y);
    FittedModel model;
    model.spec = spec;
    model.arity = X.front().size();

    bool scaled = spec.algorithm == Algorithm::logistic_regression ||
                  spec.algorithm == Algorithm::linear_svm ||
                  spec.algorithm == Algorithm::knn ||
                  spec.algorithm == Algorithm::mlp;
    const Matrix* input = &X;
    Matrix scaled_X;
    if (scaled) {
        model.scaler = Standardizer::fit(X);
        scaled_X = model.scaler->transform_all(X);
        input = &scaled_X;
    }

    switch (spec.algorithm) {
        case Algorithm::logistic_regression:
            model.params = fit_logistic_regression(
                *input, y, hyper(spec, "C", 1.0),
                static_cast<int>(hyper(spec, "max_iter", 1000)));
            break;
        case Algorithm::linear_svm:
            model.params = fit_linear_svm(
                *input, y, hyper(spec, "C", 1.0),
                static_cast<int>(hyper(spec, "max_iter", 1000)));
            break;
        case Algorithm::random_forest:
            model.params = fit_forest(spec, *input, y);
            break;
        case Algorithm::gradient_boosting:
            model.params = fit_boost(spec, *input, y);
            break;
        case Algorithm::knn: {
            KnnParams params;
            params.train_X = *input;
            params.train_y = y;
            params.k = static_cast<int>(hyper(spec, "k", 5));
            model.params = std::move(params);
            break;
        }
        case Algorithm::naive_bayes:
            model.params = fit_naive_bayes(spec, *input, y);
            break;
        case Algorithm::adaboost:
            model.params = fit_adaboost(spec, *input, y);
            break;
        case Algorithm::mlp:
            model.params = fit_mlp_spec(spec, *input, y);
            break;
    }
    return model;
}

double score_one(const FittedModel& model, const std::vector<double>& row) {
    if (row.size() != model.arity)
        throw Error("feature arity mismatch: model expects " +
                    std::to_string(model.arity) + ", got " +
                    std::to_string(row.size()));
    std::vector<double> transformed;
    const std::vector<double>* input = &row;
    if (model.scaler) {
        transformed = model.scaler->transform(row);
        input = &transformed;
    }

    switch (model.spec.algorithm) {
        case Algorithm::logistic_regression:
        case Algorithm::linear_svm:
            return sigmoid(
                linear_margin(std::get<LinearParams>(model.params), *input));
        case Algorithm::random_forest: {
            const auto& forest = std::get<ForestParams>(model.params);
            double sum = 0.0;
            for (const auto& tree : forest.trees) sum += tree.predict(*input);
            return sum / static_cast<double>(forest.trees.size());
        }
        case Algorithm::gradient_boosting: {
            const auto& boost = std::get<BoostParams>(model.params);
            double f = boost.base_score;
            for (const auto& tree : boost.trees)
                f += boost.learning_rate * tree.predict(*input);
            return sigmoid(f);
        }
        case Algorithm::knn:
            return knn_score(std::get<KnnParams>(model.params), *input);
        case Algorithm::naive_bayes:
            return naive_bayes_score(std::get<NaiveBayesParams>(model.params),
                                     *input);
        case Algorithm::adaboost: {
            const auto& ada = std::get<AdaBoostParams>(model.params);
            double margin = 0.0, total = 0.0;
            for (std::size_t m = 0; m < ada.stumps.size(); ++m) {
                int h = ada.stumps[m].predict(*input) > 0.5 ? 1 : -1;
                margin += ada.alphas[m] * h;
                total += ada.alphas[m];
            }
            return sigmoid(margin / total);
        }
        case Algorithm::mlp:
            return mlp_forward(std::get<MlpParams>(model.params), *input);
    }
    throw Error("unhandled algorithm");
}

std::vector<double> score(const FittedModel& model, const Matrix& X) {
    std::vector<double> scores;
    scores.reserve(X.size());
    for (const auto& row : X) scores.push_back(score_one(model, row));
    return scores;
}

namespace {

constexpr char kMagic[4] = {'B', 'D', 'N', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.append(buf, 4);
}

void put_u64(std::string& out, std::uint64_t v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

void put_i32(std::string& out, std::int32_t v) {
    char buf[4];
    std::memcpy(buf, &v, 4);
    out.append(buf, 4);
}

void put_f64(std::string& out, double v) {
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.append(buf, 8);
}

void put_string(std::string& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out += s;
}

void put_doubles(std::string& out, const std::vector<double>& v) {
    put_u32(out, static_cast<std::uint32_t>(v.size()));
    for (double x : v) put_f64(out, x);
}

void put_tree(std::string& out, const DecisionTree& tree) {
    put_u32(out, static_cast<std::uint32_t>(tree.nodes().size()));
    for (const TreeNode& n : tree.nodes()) {
        put_i32(out, n.feature);
        put_f64(out, n.threshold);
        put_i32(out, n.left);
        put_i32(out, n.right);
        put_f64(out, n.value);
    }
}

void put_trees(std::string& out, const std::vector<DecisionTree>& trees) {
    put_u32(out, static_cast<std::uint32_t>(trees.size()));
    for (const auto& tree : trees) put_tree(out, tree);
}

class ByteReader {
public:
    explicit ByteReader(std::string data) : data_(std::move(data)) {}

    std::uint8_t u8() {
        std::uint8_t v;
        take(&v, 1);
        return v;
    }
    std::uint32_t u32() {
        std::uint32_t v;
        take(&v, 4);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v;
        take(&v, 8);
        return v;
    }
    std::int32_t i32() {
        std::int32_t v;
        take(&v, 4);
        return v;
    }
    double f64() {
        double v;
        take(&v, 8);
        return v;
    }
    std::string str() {
        std::uint32_t n = u32();
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::vector<double> doubles() {
        std::uint32_t n = u32();
        std::vector<double> v(n);
        for (auto& x : v) x = f64();
        return v;
    }
    DecisionTree tree() {
        DecisionTree t;
        std::uint32_t n = u32();
        t.nodes().resize(n);
        for (auto& node : t.nodes()) {
            node.feature = i32();
            node.threshold = f64();
            node.left = i32();
            node.right = i32();
            node.value = f64();
        }
        return t;
    }
    std::vector<DecisionTree> trees() {
        std::uint32_t n = u32();
        std::vector<DecisionTree> out(n);
        for (auto& t : out) t = tree();
        return out;
    }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > data_.size()) throw SchemaError("model file truncated", "");
    }
    void take(void* dst, std::size_t n) {
        need(n);
        std::memcpy(dst, data_.data() + pos_, n);
        pos_ += n;
    }
    std::string data_;
    std::size_t pos_ = 0;
};

}  // namespace

void save_model(const FittedModel& model, const std::filesystem::path& path) {
    std::string out(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(model.spec.algorithm));
    put_u64(out, model.spec.seed);
    put_u32(out, static_cast<std::uint32_t>(model.spec.hyperparameters.size()));
    for (const auto& [name, value] : model.spec.hyperparameters) {
        put_string(out, name);
        put_f64(out, value);
    }
    out.push_back(model.scaler ? 1 : 0);
    if (model.scaler) {
        put_doubles(out, model.scaler->means());
        put_doubles(out, model.scaler->stds());
    }
    put_string(out, std::string(to_string(model.feature_set)));
    put_string(out, model.training_combo);
    put_u64(out, model.arity);

    put_u32(out, static_cast<std::uint32_t>(model.params.index()));
    std::visit(
        [&out](const auto& params) {
            using T = std::decay_t<decltype(params)>;
            if constexpr (std::is_same_v<T, LinearParams>) {
                put_doubles(out, params.weights);
                put_f64(out, params.bias);
            } else if constexpr (std::is_same_v<T, ForestParams>) {
                put_trees(out, params.trees);
            } else if constexpr (std::is_same_v<T, BoostParams>) {
                put_f64(out, params.base_score);
                put_f64(out, params.learning_rate);
                put_trees(out, params.trees);
            } else if constexpr (std::is_same_v<T, KnnParams>) {
                put_i32(out, params.k);
                put_u32(out, static_cast<std::uint32_t>(params.train_X.size()));
                for (const auto& row : params.train_X) put_doubles(out, row);
                put_u32(out, static_cast<std::uint32_t>(params.train_y.size()));
                for (int label : params.train_y)
                    out.push_back(static_cast<char>(label));
            } else if constexpr (std::is_same_v<T, NaiveBayesParams>) {
                put_f64(out, params.log_prior[0]);
                put_f64(out, params.log_prior[1]);
                for (int c = 0; c < 2; ++c) {
                    put_doubles(out, params.means[c]);
                    put_doubles(out, params.variances[c]);
                }
            } else if constexpr (std::is_same_v<T, AdaBoostParams>) {
                put_doubles(out, params.alphas);
                put_trees(out, params.stumps);
            } else if constexpr (std::is_same_v<T, MlpParams>) {
                put_u32(out, static_cast<std::uint32_t>(params.weights.size()));
                for (std::size_t l = 0; l < params.weights.size(); ++l) {
                    put_u32(out,
                            static_cast<std::uint32_t>(params.weights[l].size()));
                    for (const auto& row : params.weights[l])
                        put_doubles(out, row);
                    put_doubles(out, params.biases[l]);
                }
            }
        },
        model.params);
    atomic_write(path, out);
}

FittedModel load_model(const std::filesystem::path& path) {
    std::string data = read_file(path);
    if (data.size() < 8 || std::memcmp(data.data(), kMagic, 4) != 0)
        throw Error(path.string() + " is not a model file");
    ByteReader in(data.substr(4));
    std::uint32_t version = in.u32();
    if (version != kVersion)
        throw Error("unsupported model version " + std::to_string(version));

    FittedModel model;
    model.spec.algorithm = static_cast<Algorithm>(in.u32());
    model.spec.seed = in.u64();
    std::uint32_t n_hyper = in.u32();
    for (std::uint32_t i = 0; i < n_hyper; ++i) {
        std::string name = in.str();
        model.spec.hyperparameters[name] = in.f64();
    }
    if (in.u8()) {
        auto means = in.doubles();
        auto stds = in.doubles();
        model.scaler = Standardizer(std::move(means), std::move(stds));
    }
    model.feature_set = feature_set_from_string(in.str());
    model.training_combo = in.str();
    model.arity = in.u64();

    std::uint32_t tag = in.u32();
    switch (tag) {
        case 0: {
            LinearParams params;
            params.weights = in.doubles();
            params.bias = in.f64();
            model.params = std::move(params);
            break;
        }
        case 1: {
            ForestParams params;
            params.trees = in.trees();
            model.params = std::move(params);
            break;
        }
        case 2: {
            BoostParams params;
            params.base_score = in.f64();
            params.learning_rate = in.f64();
            params.trees = in.trees();
            model.params = std::move(params);
            break;
        }
        case 3: {
            KnnParams params;
            params.k = in.i32();
            std::uint32_t rows = in.u32();
            params.train_X.resize(rows);
            for (auto& row : params.train_X) row = in.doubles();
            std::uint32_t labels = in.u32();
            params.train_y.resize(labels);
            for (auto& label : params.train_y) label = in.u8();
            model.params = std::move(params);
            break;
        }
        case 4: {
            NaiveBayesParams params;
            params.log_prior[0] = in.f64();
            params.log_prior[1] = in.f64();
            for (int c = 0; c < 2; ++c) {
                params.means[c] = in.doubles();
                params.variances[c] = in.doubles();
            }
            model.params = std::move(params);
            break;
        }
        case 5: {
            AdaBoostParams params;
            params.alphas = in.doubles();
            params.stumps = in.trees();
            model.params = std::move(params);
            break;
        }
        case 6: {
            MlpParams params;
            std::uint32_t layers = in.u32();
            for (std::uint32_t l = 0; l < layers; ++l) {
                std::uint32_t units = in.u32();
                Matrix w(units);
                for (auto& row : w) row = in.doubles();
                params.weights.push_back(std::move(w));
                params.biases.push_back(in.doubles());
            }
            model.params = std::move(params);
            break;
        }
        default:
            throw SchemaError("unknown model parameter tag " +
                                  std::to_string(tag),
                              "params");
    }
    if (!in.done()) throw SchemaError("trailing bytes in model file", "");
    return model;
}

}  // namespace botdna
