#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "botdna/classify.hpp"
#include "botdna/dna.hpp"

namespace botdna {

struct DatasetClassProfile {
    std::string name;
    std::size_t bots = 0;
    std::size_t humans = 0;
};

// All non-empty subsets of the training datasets whose pooled accounts
// contain at least one bot and at least one human.  Combos come back with
// member names sorted, in ascending bitmask order over the input list.
std::vector<std::vector<std::string>> enumerate_combos(
    const std::vector<DatasetClassProfile>& profiles);

std::string combo_id(const std::vector<std::string>& combo);
std::vector<std::string> combo_from_id(const std::string& id);

struct ModelSpecKey {
    FeatureSet feature_set = FeatureSet::light;
    Algorithm algorithm = Algorithm::logistic_regression;
    std::vector<std::string> combo;

    std::string label() const;  // "<feature_set>/<algorithm>/<combo_id>"
};

// Cartesian product in canonical order: feature set, then algorithm, then
// combo, preserving each list's order.
std::vector<ModelSpecKey> instantiate_grid(
    const std::vector<std::vector<std::string>>& combos,
    const std::vector<Algorithm>& algorithms,
    const std::vector<FeatureSet>& feature_sets);

struct DatasetFeatures {
    std::string dataset;
    std::vector<std::string> account_ids;
    std::vector<int> labels;  // 1 bot, 0 human
    Matrix rows;
};

// dataset name -> features, one table per feature set
using FeatureTable = std::map<std::string, DatasetFeatures>;

struct FeatureStore {
    std::map<FeatureSet, FeatureTable> tables;

    const DatasetFeatures& at(FeatureSet feature_set,
                              const std::string& dataset) const;
};

// Concatenates the combo members' accounts, keeping the first occurrence
// of each account id.  A duplicate with a conflicting label forces the
// pooled label to bot and appends a note to conflicts when given.
DatasetFeatures pool_accounts(const std::vector<std::string>& combo,
                              const FeatureTable& table,
                              std::vector<std::string>* conflicts = nullptr);

struct GridRow {
    ModelSpecKey key;
    std::map<std::string, double> test_auc;  // test set name -> AUC
    double cv_auc = 0.0;
    bool failed = false;
    std::string error;
};

struct RankingTable {
    std::vector<std::string> test_sets;
    std::vector<GridRow> rows;
};

struct SearchConfig {
    std::vector<Algorithm> algorithms;
    std::vector<FeatureSet> feature_sets;
    std::uint64_t seed = 1;
    int cv_folds = 5;
    int workers = 0;  // 0 picks the hardware thread count
};

// Fits every grid spec on its pooled combo and scores it on every test
// set.  With a results_log path, completed specs are appended as they
// finish and a consistent prefix of an existing log is reused on resume.
RankingTable run_grid(const std::vector<std::vector<std::string>>& combos,
                      const SearchConfig& config, const FeatureStore& train,
                      const FeatureStore& test,
                      const std::filesystem::path& results_log = {},
                      std::vector<std::string>* warnings = nullptr);

extern const char* const kResultsLogHeader;

struct Candidate {
    ModelSpecKey key;
    double mean_test_auc = 0.0;
    double cv_auc = 0.0;
    std::int64_t rank_sum = 0;
};

struct ScreenResult {
    FeatureSet feature_set = FeatureSet::light;
    std::vector<Candidate> candidates;  // one per algorithm, grid order
};

// Per feature set: competition-ranks rows by AUC within each test set
// (rank 1 best, ties share the minimum), sums ranks across test sets,
// and keeps each algorithm's lowest-rank-sum spec, breaking ties by
// combo id.  Failed rows are skipped.
std::vector<ScreenResult> rank_and_screen(const RankingTable& table);

// Best mean test AUC wins unless another candidate is within mean_delta
// of it and ahead on cross-validation by at least cv_margin; then the
// highest-cv such candidate wins.
Candidate final_select(const std::vector<Candidate>& candidates,
                       double mean_delta = 0.02, double cv_margin = 0.08);

// JSON document naming the winner per feature set.
std::string selection_report_json(const std::vector<ScreenResult>& screens,
                                  double mean_delta = 0.02,
                                  double cv_margin = 0.08);

}  // namespace botdna
