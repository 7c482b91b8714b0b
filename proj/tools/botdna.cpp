#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "botdna/bigram.hpp"
#include "botdna/casestudy.hpp"
#include "botdna/classify.hpp"
#include "botdna/dna.hpp"
#include "botdna/errors.hpp"
#include "botdna/figures.hpp"
#include "botdna/ingest.hpp"
#include "botdna/io_utils.hpp"
#include "botdna/light_features.hpp"
#include "botdna/metrics.hpp"
#include "botdna/rng.hpp"
#include "botdna/run_config.hpp"
#include "botdna/select.hpp"
#include "botdna/sentiment.hpp"

namespace {

using namespace botdna;
namespace fs = std::filesystem;

struct GlobalArgs {
    std::string config_path;
    std::uint64_t seed = 0;
    int workers = 0;
    std::string out_dir;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* workers_opt = nullptr;
    CLI::Option* out_opt = nullptr;

    RunConfig resolve() const {
        RunConfig config;
        if (!config_path.empty()) config = load_run_config(config_path);
        apply_env_overrides(config);
        if (seed_opt && seed_opt->count()) config.seed = seed;
        if (workers_opt && workers_opt->count()) config.workers = workers;
        if (out_opt && out_opt->count()) config.out_dir = out_dir;
        config.validate();
        return config;
    }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    for (char c : text) {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else if (c != ' ') {
            item += c;
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

std::string sanitize_filename(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                c == '_')
                   ? c
                   : '_';
    return out.empty() ? std::string("topic") : out;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    atomic_write(path, content);
}

BigramModel require_bigram(const RunConfig& config,
                           const std::string& override_path) {
    const fs::path path =
        override_path.empty() ? config.bigram_model : fs::path(override_path);
    if (path.empty())
        throw Error(
            "metadata features need a bigram model; set bigram_model in the "
            "config or pass --bigram-model");
    return BigramModel::load_csv(path);
}

std::vector<double> light_row(const LabeledEntry& entry,
                              std::int64_t fallback_probe,
                              const BigramModel& bigram) {
    const std::int64_t probe =
        entry.timeline ? entry.timeline->probe_time : fallback_probe;
    const auto values = extract_light(entry.user, probe, bigram).vector();
    return {values.begin(), values.end()};
}

DatasetFeatures dataset_features(const LabeledDataset& dataset,
                                 FeatureSet feature_set,
                                 const BigramModel* bigram,
                                 std::vector<std::string>* warnings) {
    DatasetFeatures out;
    out.dataset = dataset.name;
    std::size_t skipped = 0;
    for (const LabeledEntry& entry : dataset.entries) {
        std::vector<double> row;
        if (feature_set == FeatureSet::light) {
            row = light_row(entry, dataset.collected_at, *bigram);
        } else {
            if (!entry.timeline) {
                ++skipped;
                continue;
            }
            row = dna_feature_vector(
                compress_stats(encode_timeline(*entry.timeline)), feature_set);
        }
        out.account_ids.push_back(entry.user.id);
        out.labels.push_back(entry.label == Label::bot ? 1 : 0);
        out.rows.push_back(std::move(row));
    }
    if (skipped > 0 && warnings)
        warnings->push_back(dataset.name + ": skipped " +
                            std::to_string(skipped) +
                            " accounts without timelines");
    return out;
}

FeatureStore build_store(const Registry& registry, DatasetRole role,
                         const std::vector<FeatureSet>& feature_sets,
                         const BigramModel* bigram,
                         std::vector<std::string>* warnings) {
    FeatureStore store;
    for (FeatureSet feature_set : feature_sets) {
        FeatureTable& table = store.tables[feature_set];
        for (const LabeledDataset& dataset : registry.datasets) {
            if (dataset.role != role) continue;
            table[dataset.name] =
                dataset_features(dataset, feature_set, bigram, warnings);
        }
    }
    return store;
}

Registry load_registry_checked(const RunConfig& config,
                               const std::string& override_path) {
    const fs::path path =
        override_path.empty() ? config.manifest : fs::path(override_path);
    if (path.empty())
        throw Error("a dataset manifest is required; set manifest in the "
                    "config or pass --manifest");
    return load_registry(path);
}

const LabeledDataset& find_dataset(const Registry& registry,
                                   const std::string& name) {
    const LabeledDataset* dataset = registry.find(name);
    if (!dataset) throw Error("manifest has no dataset named '" + name + "'");
    return *dataset;
}

double resolve_threshold(const RunConfig& config, const CLI::Option* opt,
                         double flag_value) {
    if (opt && opt->count()) {
        if (flag_value < 0.0 || flag_value > 1.0)
            throw Error("threshold must lie in [0, 1]");
        return flag_value;
    }
    if (config.threshold_mode == ThresholdMode::fixed)
        return config.fixed_threshold;
    return 0.5;
}

std::string model_id(const FittedModel& model) {
    std::string out(to_string(model.feature_set));
    out += '/';
    out += to_string(model.spec.algorithm);
    if (!model.training_combo.empty()) out += '/' + model.training_combo;
    return out;
}

// ---------------------------------------------------------------- bigram

struct BigramTrainArgs {
    std::string corpus;
    std::string model_out;
    double alpha = 1.0;
};

int run_bigram_train(const GlobalArgs& global, const BigramTrainArgs& args) {
    const RunConfig config = global.resolve();
    BigramTrainer trainer;
    std::uint64_t names_read = 0;
    for_each_line(args.corpus, [&](const std::string& line) {
        std::string name = line;
        if (!name.empty() && name.back() == '\r') name.pop_back();
        if (name.empty()) return;
        ++names_read;
        trainer.add(name);
    });
    const BigramModel model = trainer.finish(args.alpha);

    fs::path out = args.model_out.empty()
                       ? (config.bigram_model.empty()
                              ? config.out_dir / "bigram_model.csv"
                              : config.bigram_model)
                       : fs::path(args.model_out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    model.save_csv(out);

    std::cout << "names read: " << names_read << "\n"
              << "names dropped: " << trainer.dropped() << "\n"
              << "bigrams counted: " << trainer.total_bigrams() << "\n"
              << "model: " << out.string() << "\n";
    return 0;
}

// --------------------------------------------------------------- features

struct FeaturesArgs {
    std::string manifest;
    std::string dataset;
    std::string bigram_model;
    std::string out;
};

int run_features(const GlobalArgs& global, const FeaturesArgs& args) {
    const RunConfig config = global.resolve();
    const Registry registry = load_registry_checked(config, args.manifest);
    const LabeledDataset& dataset = find_dataset(registry, args.dataset);
    const BigramModel bigram = require_bigram(config, args.bigram_model);

    std::ostringstream csv;
    csv << "account_id,label";
    for (std::string_view name : light_feature_names()) csv << ',' << name;
    csv << '\n';
    for (const LabeledEntry& entry : dataset.entries) {
        csv << entry.user.id << ','
            << (entry.label == Label::bot ? 1 : 0);
        for (double v : light_row(entry, dataset.collected_at, bigram))
            csv << ',' << format_double(v);
        csv << '\n';
    }

    const fs::path out = args.out.empty()
                             ? config.out_dir / (dataset.name + "_light.csv")
                             : fs::path(args.out);
    write_file(out, csv.str());
    std::cout << "dataset: " << dataset.name << "\n"
              << "accounts: " << dataset.entries.size() << "\n"
              << "features: " << out.string() << "\n";
    return 0;
}

// -------------------------------------------------------------------- dna

struct DnaArgs {
    std::string manifest;
    std::string dataset;
    std::string out_csv;
    std::string out_svg;
};

int run_dna(const GlobalArgs& global, const DnaArgs& args) {
    const RunConfig config = global.resolve();
    const Registry registry = load_registry_checked(config, args.manifest);
    const LabeledDataset& dataset = find_dataset(registry, args.dataset);

    std::vector<std::string> ids;
    std::vector<int> labels;
    std::vector<CompressionStats> stats;
    std::vector<ScatterPoint> points;
    std::size_t skipped = 0;
    for (const LabeledEntry& entry : dataset.entries) {
        if (!entry.timeline) {
            ++skipped;
            continue;
        }
        const CompressionStats s =
            compress_stats(encode_timeline(*entry.timeline));
        const int label = entry.label == Label::bot ? 1 : 0;
        ids.push_back(entry.user.id);
        labels.push_back(label);
        stats.push_back(s);
        points.push_back({static_cast<double>(s.original_size),
                          static_cast<double>(s.compressed_size), label});
    }
    if (ids.empty())
        throw Error("dataset " + dataset.name + " has no timelines to encode");

    const fs::path out_csv =
        args.out_csv.empty() ? config.out_dir / (dataset.name + "_dna.csv")
                             : fs::path(args.out_csv);
    write_file(out_csv, scatter_csv(ids, labels, stats));

    FigureOptions options;
    options.title = dataset.name;
    options.x_label = "original size";
    options.y_label = "compressed size";
    const fs::path out_svg =
        args.out_svg.empty() ? config.out_dir / (dataset.name + "_dna.svg")
                             : fs::path(args.out_svg);
    write_file(out_svg, scatter_svg(points, options));

    std::cout << "dataset: " << dataset.name << "\n"
              << "accounts encoded: " << ids.size() << "\n";
    if (skipped > 0)
        std::cout << "accounts without timelines: " << skipped << "\n";
    std::cout << "csv: " << out_csv.string() << "\n"
              << "svg: " << out_svg.string() << "\n";
    return 0;
}

// ----------------------------------------------------------------- search

struct SearchArgs {
    std::string manifest;
    std::string bigram_model;
    std::string features = "A,B,C,D,light";
    std::string algorithms;
    int cv_folds = 5;
};

int run_search(const GlobalArgs& global, const SearchArgs& args) {
    const RunConfig config = global.resolve();
    const Registry registry = load_registry_checked(config, args.manifest);

    std::vector<DatasetClassProfile> profiles;
    std::size_t test_count = 0;
    for (const LabeledDataset& dataset : registry.datasets) {
        std::cout << "dataset " << dataset.name << " ("
                  << to_string(dataset.role)
                  << "): humans=" << dataset.human_count()
                  << " bots=" << dataset.bot_count() << "\n";
        if (dataset.role == DatasetRole::train)
            profiles.push_back({dataset.name, dataset.bot_count(),
                                dataset.human_count()});
        else
            ++test_count;
    }
    if (profiles.empty()) throw Error("manifest has no training datasets");
    if (test_count == 0) throw Error("manifest has no test datasets");

    const auto combos = enumerate_combos(profiles);
    if (combos.empty())
        throw Error(
            "no training combination has both classes; the registry needs "
            "at least one human and one bot account");
    std::cout << "training combinations: " << combos.size() << "\n";

    SearchConfig search;
    search.seed = config.seed;
    search.cv_folds = args.cv_folds;
    search.workers = config.workers;
    for (const std::string& name : split_list(args.features))
        search.feature_sets.push_back(feature_set_from_string(name));
    if (search.feature_sets.empty()) throw Error("no feature sets selected");
    if (args.algorithms.empty()) {
        search.algorithms = {
            Algorithm::logistic_regression, Algorithm::random_forest,
            Algorithm::gradient_boosting,   Algorithm::knn,
            Algorithm::naive_bayes,         Algorithm::adaboost,
            Algorithm::linear_svm,          Algorithm::mlp,
        };
    } else {
        for (const std::string& name : split_list(args.algorithms))
            search.algorithms.push_back(algorithm_from_string(name));
    }

    std::optional<BigramModel> bigram;
    for (FeatureSet feature_set : search.feature_sets)
        if (feature_set == FeatureSet::light && !bigram)
            bigram.emplace(require_bigram(config, args.bigram_model));

    std::vector<std::string> warnings;
    const FeatureStore train =
        build_store(registry, DatasetRole::train, search.feature_sets,
                    bigram ? &*bigram : nullptr, &warnings);
    const FeatureStore test =
        build_store(registry, DatasetRole::test, search.feature_sets,
                    bigram ? &*bigram : nullptr, &warnings);

    fs::create_directories(config.out_dir);
    const fs::path log_path = config.out_dir / "results_log.csv";
    const RankingTable table =
        run_grid(combos, search, train, test, log_path, &warnings);

    std::size_t failed = 0;
    for (const GridRow& row : table.rows)
        if (row.failed) ++failed;

    const auto screens = rank_and_screen(table);
    const std::string report = selection_report_json(
        screens, config.mean_delta, config.cv_margin);
    const fs::path report_path = config.out_dir / "selection_report.json";
    write_file(report_path, report);

    std::vector<Candidate> candidates;
    for (const ScreenResult& screen : screens)
        candidates.insert(candidates.end(), screen.candidates.begin(),
                          screen.candidates.end());
    fs::path model_path;
    std::string winner_label;
    if (!candidates.empty()) {
        const Candidate winner =
            final_select(candidates, config.mean_delta, config.cv_margin);
        const FeatureTable& ttable = train.tables.at(winner.key.feature_set);
        const DatasetFeatures pooled = pool_accounts(winner.key.combo, ttable);
        ClassifierSpec spec;
        spec.algorithm = winner.key.algorithm;
        spec.seed = Rng(config.seed).fork(winner.key.label());
        FittedModel model = fit(spec, pooled.rows, pooled.labels);
        model.feature_set = winner.key.feature_set;
        model.training_combo = combo_id(winner.key.combo);
        model_path = config.out_dir / "selected.model";
        save_model(model, model_path);
        winner_label = winner.key.label();
    }

    std::cout << "grid rows: " << table.rows.size() << " (failed: " << failed
              << ")\n"
              << "warnings: " << warnings.size() << "\n";
    for (const std::string& warning : warnings)
        std::cout << "warning: " << warning << "\n";
    std::cout << "results log: " << log_path.string() << "\n"
              << "selection report: " << report_path.string() << "\n";
    if (!winner_label.empty())
        std::cout << "selected: " << winner_label << "\n"
                  << "model: " << model_path.string() << "\n";
    return 0;
}

// --------------------------------------------------------------- evaluate

struct EvaluateArgs {
    std::string manifest;
    std::string model;
    std::string bigram_model;
    std::vector<std::string> datasets;
    double threshold = 0.5;
    CLI::Option* threshold_opt = nullptr;
    std::string out;
};

int run_evaluate(const GlobalArgs& global, const EvaluateArgs& args) {
    const RunConfig config = global.resolve();
    const FittedModel model = load_model(args.model);
    const Registry registry = load_registry_checked(config, args.manifest);
    const double threshold =
        resolve_threshold(config, args.threshold_opt, args.threshold);

    std::vector<std::string> names = args.datasets;
    if (names.empty())
        for (const LabeledDataset& dataset : registry.datasets)
            if (dataset.role == DatasetRole::test)
                names.push_back(dataset.name);
    if (names.empty()) throw Error("no datasets to evaluate");

    std::optional<BigramModel> bigram;
    if (model.feature_set == FeatureSet::light)
        bigram.emplace(require_bigram(config, args.bigram_model));

    std::ostringstream csv;
    csv << metric_csv_header() << '\n';
    for (const std::string& name : names) {
        const LabeledDataset& dataset = find_dataset(registry, name);
        const DatasetFeatures features = dataset_features(
            dataset, model.feature_set, bigram ? &*bigram : nullptr, nullptr);
        if (features.rows.empty())
            throw Error("dataset " + name + " produced no feature rows");
        const auto scores = score(model, features.rows);
        const MetricReport report =
            confusion_metrics(scores, features.labels, threshold);
        csv << metric_csv_row(name, model_id(model), report) << '\n';
        std::cout << name << ": auc=" << format_double(report.auc)
                  << " f1=" << format_double(report.f1)
                  << " accuracy=" << format_double(report.accuracy)
                  << " threshold=" << format_double(threshold) << "\n";
    }

    const fs::path out = args.out.empty() ? config.out_dir / "evaluation.csv"
                                          : fs::path(args.out);
    write_file(out, csv.str());
    std::cout << "metrics: " << out.string() << "\n";
    return 0;
}

// -------------------------------------------------------------- threshold

struct ThresholdArgs {
    std::string manifest;
    std::string model;
    std::string bigram_model;
    std::string dataset;
    std::string out;
};

int run_threshold(const GlobalArgs& global, const ThresholdArgs& args) {
    const RunConfig config = global.resolve();
    const FittedModel model = load_model(args.model);
    const Registry registry = load_registry_checked(config, args.manifest);
    const LabeledDataset& dataset = find_dataset(registry, args.dataset);

    std::optional<BigramModel> bigram;
    if (model.feature_set == FeatureSet::light)
        bigram.emplace(require_bigram(config, args.bigram_model));

    const DatasetFeatures features = dataset_features(
        dataset, model.feature_set, bigram ? &*bigram : nullptr, nullptr);
    if (features.rows.empty())
        throw Error("dataset " + args.dataset + " produced no feature rows");
    const auto scores = score(model, features.rows);

    double threshold = config.fixed_threshold;
    if (config.threshold_mode == ThresholdMode::f1_max)
        threshold = best_f1_threshold(scores, features.labels);
    const MetricReport report =
        confusion_metrics(scores, features.labels, threshold);

    nlohmann::json doc;
    doc["dataset"] = dataset.name;
    doc["model"] = model_id(model);
    doc["mode"] = std::string(to_string(config.threshold_mode));
    doc["threshold"] = threshold;
    doc["f1"] = report.f1;
    doc["auc"] = report.auc;
    const fs::path out = args.out.empty() ? config.out_dir / "threshold.json"
                                          : fs::path(args.out);
    write_file(out, doc.dump(2) + "\n");

    std::cout << "threshold: " << format_double(threshold)
              << " (mode=" << to_string(config.threshold_mode)
              << ", f1=" << format_double(report.f1) << ")\n"
              << "report: " << out.string() << "\n";
    return 0;
}

// -------------------------------------------------------------- casestudy

struct CasestudyArgs {
    std::string model;
    std::string bigram_model;
    std::string tweets;
    std::string topic;
    std::string seeds;
    std::string match_mode = "prefix";
    double threshold = 0.5;
    CLI::Option* threshold_opt = nullptr;
    std::string valence_lexicon;
    std::string hashtag_lexicon;
    std::size_t top_n = 20;
    bool exclude_topic_tags = false;
    bool keep_all_languages = false;
};

void write_case_figures(const CaseReport& report, const fs::path& out_dir,
                        const std::string& stem) {
    const std::vector<HistogramSeries> score_series = {
        {"bot", report.bots.score_histogram},
        {"human", report.humans.score_histogram},
    };
    FigureOptions options;
    options.title = report.topic.name + " bot scores";
    options.x_label = "score";
    options.y_label = "accounts";
    write_file(out_dir / (stem + "_scores.svg"),
               histogram_svg(score_series, 0.0, 1.0, options));
    write_file(out_dir / (stem + "_scores.csv"),
               histogram_csv(score_series, 0.0, 1.0));

    const std::vector<std::string> groups = {"positive", "neutral",
                                             "negative", "inconclusive"};
    const auto proportions =
        [&](const std::map<Sentiment, double>& by_label) {
            std::vector<double> values;
            for (Sentiment s : {Sentiment::positive, Sentiment::neutral,
                                Sentiment::negative, Sentiment::inconclusive}) {
                const auto it = by_label.find(s);
                values.push_back(it == by_label.end() ? 0.0 : it->second);
            }
            return values;
        };

    const std::vector<BarSeries> compound_series = {
        {"bot", proportions(report.bots.compound_proportions)},
        {"human", proportions(report.humans.compound_proportions)},
    };
    options.title = report.topic.name + " tweet sentiment";
    options.x_label = "";
    options.y_label = "share of tweets";
    write_file(out_dir / (stem + "_compound_sentiment.svg"),
               grouped_bar_svg(groups, compound_series, options));
    write_file(out_dir / (stem + "_compound_sentiment.csv"),
               grouped_bar_csv(groups, compound_series));

    const std::vector<BarSeries> hashtag_series = {
        {"bot", proportions(report.bots.hashtag_proportions)},
        {"human", proportions(report.humans.hashtag_proportions)},
    };
    options.title = report.topic.name + " hashtag sentiment";
    write_file(out_dir / (stem + "_hashtag_sentiment.svg"),
               grouped_bar_svg(groups, hashtag_series, options));
    write_file(out_dir / (stem + "_hashtag_sentiment.csv"),
               grouped_bar_csv(groups, hashtag_series));

    const auto hashtag_items =
        [](const std::vector<std::pair<std::string, std::size_t>>& tags) {
            std::vector<std::pair<std::string, double>> items;
            for (const auto& [tag, count] : tags)
                items.push_back({tag, static_cast<double>(count)});
            return items;
        };
    options.x_label = "tweets";
    options.y_label = "";
    options.title = report.topic.name + " top hashtags (bots)";
    write_file(out_dir / (stem + "_top_hashtags_bots.svg"),
               hbar_svg(hashtag_items(report.bots.hashtags), options));
    write_file(out_dir / (stem + "_top_hashtags_bots.csv"),
               hbar_csv(hashtag_items(report.bots.hashtags)));
    options.title = report.topic.name + " top hashtags (humans)";
    write_file(out_dir / (stem + "_top_hashtags_humans.svg"),
               hbar_svg(hashtag_items(report.humans.hashtags), options));
    write_file(out_dir / (stem + "_top_hashtags_humans.csv"),
               hbar_csv(hashtag_items(report.humans.hashtags)));
}

int run_casestudy(const GlobalArgs& global, const CasestudyArgs& args) {
    const RunConfig config = global.resolve();
    const FittedModel model = load_model(args.model);
    const double threshold =
        resolve_threshold(config, args.threshold_opt, args.threshold);

    TopicSpec topic;
    topic.name = args.topic;
    topic.seed_hashtags = split_list(args.seeds);
    topic.match_mode = match_mode_from_string(args.match_mode);
    topic.validate();

    const fs::path valence_path = args.valence_lexicon.empty()
                                      ? config.valence_lexicon
                                      : fs::path(args.valence_lexicon);
    if (valence_path.empty())
        throw Error("a valence lexicon is required; set valence_lexicon in "
                    "the config or pass --valence-lexicon");
    const ValenceLexicon valence = load_valence_lexicon(valence_path);

    const fs::path hashtag_path = args.hashtag_lexicon.empty()
                                      ? config.hashtag_lexicon
                                      : fs::path(args.hashtag_lexicon);
    const HashtagLexicon hashtag_lex =
        hashtag_path.empty() ? HashtagLexicon{}
                             : load_hashtag_lexicon(hashtag_path);

    std::optional<BigramModel> bigram;
    if (model.feature_set == FeatureSet::light)
        bigram.emplace(require_bigram(config, args.bigram_model));

    std::vector<TweetRecord> matched;
    std::size_t total = 0, english = 0;
    for_each_line(args.tweets, [&](const std::string& line) {
        if (line.empty()) return;
        ++total;
        TweetRecord tweet = parse_tweet_json(line);
        if (!args.keep_all_languages && !tweet.lang.empty() &&
            tweet.lang != "en")
            return;
        ++english;
        if (match_topic(tweet, topic)) matched.push_back(std::move(tweet));
    });

    fs::create_directories(config.out_dir);
    const std::string stem = sanitize_filename(topic.name);
    const fs::path report_path = config.out_dir / (stem + "_report.json");

    std::cout << "tweets read: " << total << "\n"
              << "english tweets: " << english << "\n";
    if (matched.empty()) {
        CaseReport empty;
        empty.topic = topic;
        empty.threshold = threshold;
        write_file(report_path, case_report_json(empty));
        std::cout << "0 tweets matched\n"
                  << "report: " << report_path.string() << "\n";
        return 0;
    }

    const auto rules = default_sentiment_rules();
    const CaseReport report = build_case_report(
        matched, topic, model, bigram ? &*bigram : nullptr, threshold,
        valence, rules, hashtag_lex, args.top_n, args.exclude_topic_tags);
    write_file(report_path, case_report_json(report));
    write_case_figures(report, config.out_dir, stem);

    std::cout << "tweets matched: " << report.tweet_count << "\n"
              << "accounts: " << report.account_count << "\n"
              << "bot account fraction: "
              << format_double(report.bot_fraction_accounts) << "\n"
              << "bot tweet fraction: "
              << format_double(report.bot_fraction_tweets) << "\n"
              << "report: " << report_path.string() << "\n";
    return 0;
}

// ------------------------------------------------------------------- plot

struct PlotArgs {
    std::string kind;
    std::string input;
    std::string out;
    std::string title;
    std::string x_label;
    std::string y_label;
    std::string x_stat = "original_size";
    std::string y_stat = "compressed_size";
};

double parse_number(const std::string& text) {
    try {
        std::size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw SchemaError("not a number", text);
    }
}

int run_plot(const GlobalArgs& global, const PlotArgs& args) {
    (void)global;
    std::vector<std::vector<std::string>> rows;
    for_each_line(args.input, [&](const std::string& line) {
        if (!line.empty()) rows.push_back(split_csv_line(line));
    });
    if (rows.size() < 1) throw Error("plot input is empty");
    const std::vector<std::string>& header = rows.front();

    FigureOptions options;
    options.title = args.title;
    options.x_label = args.x_label;
    options.y_label = args.y_label;

    std::string svg;
    if (args.kind == "scatter") {
        const std::vector<std::string> expected = {
            "account_id", "label", "original_size", "compressed_size",
            "ratio"};
        if (header != expected)
            throw SchemaError("scatter header must be "
                              "account_id,label,original_size,"
                              "compressed_size,ratio",
                              args.input);
        const auto column = [&](const std::string& stat) {
            for (std::size_t i = 2; i < expected.size(); ++i)
                if (expected[i] == stat) return i;
            throw Error("unknown stat '" + stat +
                        "'; use original_size, compressed_size, or ratio");
        };
        const std::size_t xcol = column(args.x_stat);
        const std::size_t ycol = column(args.y_stat);
        if (options.x_label.empty()) options.x_label = args.x_stat;
        if (options.y_label.empty()) options.y_label = args.y_stat;
        std::vector<ScatterPoint> points;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != expected.size())
                throw SchemaError("short scatter row", std::to_string(r));
            points.push_back({parse_number(rows[r][xcol]),
                              parse_number(rows[r][ycol]),
                              static_cast<int>(parse_number(rows[r][1]))});
        }
        svg = scatter_svg(points, options);
    } else if (args.kind == "histogram") {
        if (header.size() < 3 || header[0] != "bin_lo" ||
            header[1] != "bin_hi")
            throw SchemaError("histogram header must start bin_lo,bin_hi",
                              args.input);
        if (rows.size() < 2) throw Error("histogram has no bins");
        std::vector<HistogramSeries> series;
        for (std::size_t c = 2; c < header.size(); ++c)
            series.push_back({header[c], {}});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != header.size())
                throw SchemaError("short histogram row", std::to_string(r));
            for (std::size_t c = 2; c < header.size(); ++c)
                series[c - 2].bins.push_back(static_cast<std::size_t>(
                    parse_number(rows[r][c])));
        }
        const double lo = parse_number(rows[1][0]);
        const double hi = parse_number(rows.back()[1]);
        svg = histogram_svg(series, lo, hi, options);
    } else if (args.kind == "bars") {
        if (header.size() < 2 || header[0] != "group")
            throw SchemaError("bars header must start with group",
                              args.input);
        std::vector<std::string> groups;
        std::vector<BarSeries> series;
        for (std::size_t c = 1; c < header.size(); ++c)
            series.push_back({header[c], {}});
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != header.size())
                throw SchemaError("short bars row", std::to_string(r));
            groups.push_back(rows[r][0]);
            for (std::size_t c = 1; c < header.size(); ++c)
                series[c - 1].values.push_back(parse_number(rows[r][c]));
        }
        svg = grouped_bar_svg(groups, series, options);
    } else if (args.kind == "hbar") {
        if (header != std::vector<std::string>{"label", "value"})
            throw SchemaError("hbar header must be label,value", args.input);
        std::vector<std::pair<std::string, double>> items;
        for (std::size_t r = 1; r < rows.size(); ++r) {
            if (rows[r].size() != 2)
                throw SchemaError("short hbar row", std::to_string(r));
            items.push_back({rows[r][0], parse_number(rows[r][1])});
        }
        svg = hbar_svg(items, options);
    } else {
        throw Error("unknown plot kind '" + args.kind +
                    "'; use scatter, histogram, bars, or hbar");
    }

    fs::path out = args.out.empty()
                       ? fs::path(args.input).replace_extension(".svg")
                       : fs::path(args.out);
    write_file(out, svg);
    std::cout << "svg: " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"digital-DNA bot detection toolkit"};
    app.require_subcommand(1);

    GlobalArgs global;
    app.add_option("--config", global.config_path,
                   "JSON run configuration file");
    global.seed_opt =
        app.add_option("--seed", global.seed, "override the run seed");
    global.workers_opt = app.add_option("--workers", global.workers,
                                        "worker thread count (0 = auto)");
    global.out_opt =
        app.add_option("--out", global.out_dir, "output directory");

    BigramTrainArgs bigram_args;
    auto* bigram_cmd = app.add_subcommand(
        "bigram-train", "train the screen-name bigram model from a corpus");
    bigram_cmd->add_option("corpus", bigram_args.corpus,
                           "file with one screen name per line")
        ->required();
    bigram_cmd->add_option("--model-out", bigram_args.model_out,
                           "where to write the model csv");
    bigram_cmd->add_option("--alpha", bigram_args.alpha,
                           "laplace smoothing weight");

    FeaturesArgs features_args;
    auto* features_cmd = app.add_subcommand(
        "features", "write a dataset's metadata feature table");
    features_cmd->add_option("--manifest", features_args.manifest,
                             "dataset manifest path");
    features_cmd->add_option("--dataset", features_args.dataset,
                             "dataset name")
        ->required();
    features_cmd->add_option("--bigram-model", features_args.bigram_model,
                             "bigram model csv");
    features_cmd->add_option("--out-file", features_args.out,
                             "feature csv path");

    DnaArgs dna_args;
    auto* dna_cmd = app.add_subcommand(
        "dna", "encode a dataset's interaction strings and compression "
               "statistics");
    dna_cmd->add_option("--manifest", dna_args.manifest,
                        "dataset manifest path");
    dna_cmd->add_option("--dataset", dna_args.dataset, "dataset name")
        ->required();
    dna_cmd->add_option("--out-csv", dna_args.out_csv, "statistics csv path");
    dna_cmd->add_option("--out-svg", dna_args.out_svg, "scatterplot path");

    SearchArgs search_args;
    auto* search_cmd = app.add_subcommand(
        "search", "run the data-selection model search over the registry");
    search_cmd->add_option("--manifest", search_args.manifest,
                           "dataset manifest path");
    search_cmd->add_option("--bigram-model", search_args.bigram_model,
                           "bigram model csv");
    search_cmd->add_option("--features", search_args.features,
                           "comma list of feature sets (A,B,C,D,light)");
    search_cmd->add_option("--algorithms", search_args.algorithms,
                           "comma list of algorithms (default: all)");
    search_cmd->add_option("--cv-folds", search_args.cv_folds,
                           "cross-validation folds");

    EvaluateArgs evaluate_args;
    auto* evaluate_cmd = app.add_subcommand(
        "evaluate", "score a saved model against labeled datasets");
    evaluate_cmd->add_option("--manifest", evaluate_args.manifest,
                             "dataset manifest path");
    evaluate_cmd->add_option("--model", evaluate_args.model,
                             "saved model file")
        ->required();
    evaluate_cmd->add_option("--bigram-model", evaluate_args.bigram_model,
                             "bigram model csv");
    evaluate_cmd->add_option("--dataset", evaluate_args.datasets,
                             "dataset names (default: all test sets)");
    evaluate_args.threshold_opt = evaluate_cmd->add_option(
        "--threshold", evaluate_args.threshold, "score cutoff");
    evaluate_cmd->add_option("--out-file", evaluate_args.out,
                             "metrics csv path");

    ThresholdArgs threshold_args;
    auto* threshold_cmd = app.add_subcommand(
        "threshold", "pick a score cutoff for a saved model on a dataset");
    threshold_cmd->add_option("--manifest", threshold_args.manifest,
                              "dataset manifest path");
    threshold_cmd->add_option("--model", threshold_args.model,
                              "saved model file")
        ->required();
    threshold_cmd->add_option("--bigram-model", threshold_args.bigram_model,
                              "bigram model csv");
    threshold_cmd->add_option("--dataset", threshold_args.dataset,
                              "dataset to tune on")
        ->required();
    threshold_cmd->add_option("--out-file", threshold_args.out,
                              "threshold json path");

    CasestudyArgs casestudy_args;
    auto* casestudy_cmd = app.add_subcommand(
        "casestudy", "analyze bot presence on a hashtag topic");
    casestudy_cmd->add_option("--model", casestudy_args.model,
                              "saved model file")
        ->required();
    casestudy_cmd->add_option("--bigram-model", casestudy_args.bigram_model,
                              "bigram model csv");
    casestudy_cmd->add_option("--tweets", casestudy_args.tweets,
                              "hydrated tweet jsonl")
        ->required();
    casestudy_cmd->add_option("--topic", casestudy_args.topic, "topic name")
        ->required();
    casestudy_cmd->add_option("--seeds", casestudy_args.seeds,
                              "comma list of lowercase seed hashtags")
        ->required();
    casestudy_cmd->add_option("--match-mode", casestudy_args.match_mode,
                              "prefix or substring");
    casestudy_args.threshold_opt = casestudy_cmd->add_option(
        "--threshold", casestudy_args.threshold, "bot score cutoff");
    casestudy_cmd->add_option("--valence-lexicon",
                              casestudy_args.valence_lexicon,
                              "valence lexicon tsv");
    casestudy_cmd->add_option("--hashtag-lexicon",
                              casestudy_args.hashtag_lexicon,
                              "hashtag lexicon csv");
    casestudy_cmd->add_option("--top-n", casestudy_args.top_n,
                              "hashtags per list");
    casestudy_cmd->add_flag("--exclude-topic-tags",
                            casestudy_args.exclude_topic_tags,
                            "drop the topic's own hashtags from the lists");
    casestudy_cmd->add_flag("--keep-all-languages",
                            casestudy_args.keep_all_languages,
                            "skip the english-language filter");

    PlotArgs plot_args;
    auto* plot_cmd = app.add_subcommand(
        "plot", "render a companion csv back into an svg figure");
    plot_cmd->add_option("kind", plot_args.kind,
                         "scatter, histogram, bars, or hbar")
        ->required();
    plot_cmd->add_option("input", plot_args.input, "companion csv path")
        ->required();
    plot_cmd->add_option("--out-file", plot_args.out, "svg path");
    plot_cmd->add_option("--title", plot_args.title, "figure title");
    plot_cmd->add_option("--x-label", plot_args.x_label, "x axis label");
    plot_cmd->add_option("--y-label", plot_args.y_label, "y axis label");
    plot_cmd->add_option("--x-stat", plot_args.x_stat,
                         "scatter x column (original_size, compressed_size, "
                         "ratio)");
    plot_cmd->add_option("--y-stat", plot_args.y_stat,
                         "scatter y column (original_size, compressed_size, "
                         "ratio)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(bigram_cmd))
            return run_bigram_train(global, bigram_args);
        if (app.got_subcommand(features_cmd))
            return run_features(global, features_args);
        if (app.got_subcommand(dna_cmd)) return run_dna(global, dna_args);
        if (app.got_subcommand(search_cmd))
            return run_search(global, search_args);
        if (app.got_subcommand(evaluate_cmd))
            return run_evaluate(global, evaluate_args);
        if (app.got_subcommand(threshold_cmd))
            return run_threshold(global, threshold_args);
        if (app.got_subcommand(casestudy_cmd))
            return run_casestudy(global, casestudy_args);
        if (app.got_subcommand(plot_cmd)) return run_plot(global, plot_args);
        std::cerr << "error: no subcommand selected\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
