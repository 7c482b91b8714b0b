#include "botdna/select.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "json.hpp"

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"
#include "botdna/metrics.hpp"
#include "botdna/rng.hpp"

namespace botdna {

const char* const kResultsLogHeader =
    "feature_set,algorithm,combo,test_set,auc,cv_auc";

std::vector<std::vector<std::string>> enumerate_combos(
    const std::vector<DatasetClassProfile>& profiles) {
    if (profiles.size() > 24)
        throw Error("too many datasets to enumerate combinations");
    std::vector<std::vector<std::string>> combos;
    std::size_t n = profiles.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::size_t bots = 0;
        std::size_t humans = 0;
        std::vector<std::string> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (std::uint64_t{1} << i))) continue;
            bots += profiles[i].bots;
            humans += profiles[i].humans;
            members.push_back(profiles[i].name);
        }
        if (bots == 0 || humans == 0) continue;
        std::sort(members.begin(), members.end());
        combos.push_back(std::move(members));
    }
    return combos;
}

std::string combo_id(const std::vector<std::string>& combo) {
    std::string id;
    for (const std::string& name : combo) {
        if (!id.empty()) id += '+';
        id += name;
    }
    return id;
}

std::vector<std::string> combo_from_id(const std::string& id) {
    std::vector<std::string> combo;
    std::string current;
    for (char c : id) {
        if (c == '+') {
            combo.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) combo.push_back(current);
    return combo;
}

std::string ModelSpecKey::label() const {
    std::string out(to_string(feature_set));
    out += '/';
    out += to_string(algorithm);
    out += '/';
    out += combo_id(combo);
    return out;
}

std::vector<ModelSpecKey> instantiate_grid(
    const std::vector<std::vector<std::string>>& combos,
    const std::vector<Algorithm>& algorithms,
    const std::vector<FeatureSet>& feature_sets) {
    std::vector<ModelSpecKey> keys;
    keys.reserve(combos.size() * algorithms.size() * feature_sets.size());
    for (FeatureSet fs : feature_sets)
        for (Algorithm algorithm : algorithms)
            for (const auto& combo : combos)
                keys.push_back({fs, algorithm, combo});
    return keys;
}

const DatasetFeatures& FeatureStore::at(FeatureSet feature_set,
                                        const std::string& dataset) const {
    auto table = tables.find(feature_set);
    if (table == tables.end())
        throw Error(std::string("no feature table for set '") +
                    std::string(to_string(feature_set)) + "'");
    auto it = table->second.find(dataset);
    if (it == table->second.end())
        throw Error("no features for dataset '" + dataset + "'");
    return it->second;
}

DatasetFeatures pool_accounts(const std::vector<std::string>& combo,
                              const FeatureTable& table,
                              std::vector<std::string>* conflicts) {
    DatasetFeatures pooled;
    pooled.dataset = combo_id(combo);
    std::unordered_map<std::string, std::size_t> seen;
    for (const std::string& name : combo) {
        auto it = table.find(name);
        if (it == table.end())
            throw Error("no features for dataset '" + name + "'");
        const DatasetFeatures& part = it->second;
        for (std::size_t i = 0; i < part.account_ids.size(); ++i) {
            auto [slot, inserted] =
                seen.emplace(part.account_ids[i], pooled.rows.size());
            if (inserted) {
                pooled.account_ids.push_back(part.account_ids[i]);
                pooled.labels.push_back(part.labels[i]);
                pooled.rows.push_back(part.rows[i]);
            } else if (pooled.labels[slot->second] != part.labels[i]) {
                pooled.labels[slot->second] = 1;
                if (conflicts)
                    conflicts->push_back("conflicting labels for account " +
                                         part.account_ids[i] +
                                         ", keeping bot");
            }
        }
    }
    return pooled;
}

namespace {

struct Computed {
    GridRow row;
    std::vector<std::string> notes;
};

struct LogEntry {
    std::string feature_set;
    std::string algorithm;
    std::string combo;
    std::string test_set;
    double auc = 0.0;
    double cv_auc = 0.0;
};

double parse_double_field(const std::string& s) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error("bad number in results log: '" + s + "'");
    return value;
}

std::vector<LogEntry> parse_results_log(const std::filesystem::path& path) {
    std::vector<LogEntry> entries;
    bool saw_header = false;
    for_each_line(path, [&](const std::string& line) {
        if (line.empty()) return;
        if (!saw_header) {
            if (line != kResultsLogHeader)
                throw Error("results log has an unexpected header");
            saw_header = true;
            return;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 6)
            throw Error("results log row needs 6 fields");
        entries.push_back({fields[0], fields[1], fields[2], fields[3],
                           parse_double_field(fields[4]),
                           parse_double_field(fields[5])});
    });
    return entries;
}

std::string log_lines_for(const GridRow& row,
                          const std::vector<std::string>& test_sets) {
    std::string out;
    for (const std::string& test_set : test_sets) {
        out += std::string(to_string(row.key.feature_set));
        out += ',';
        out += to_string(row.key.algorithm);
        out += ',';
        out += combo_id(row.key.combo);
        out += ',';
        out += test_set;
        out += ',';
        out += format_double(row.test_auc.at(test_set));
        out += ',';
        out += format_double(row.cv_auc);
        out += '\n';
    }
    return out;
}

// Longest canonical prefix of keys fully covered by the log entries.
std::size_t resumable_prefix(const std::vector<LogEntry>& entries,
                             const std::vector<ModelSpecKey>& keys,
                             const std::vector<std::string>& test_sets,
                             std::vector<Computed>& rows) {
    std::size_t cursor = 0;
    std::size_t complete = 0;
    for (const ModelSpecKey& key : keys) {
        if (cursor + test_sets.size() > entries.size()) break;
        GridRow row;
        row.key = key;
        bool match = true;
        for (std::size_t t = 0; t < test_sets.size(); ++t) {
            const LogEntry& e = entries[cursor + t];
            if (e.feature_set != to_string(key.feature_set) ||
                e.algorithm != to_string(key.algorithm) ||
                e.combo != combo_id(key.combo) ||
                e.test_set != test_sets[t]) {
                match = false;
                break;
            }
            row.test_auc[e.test_set] = e.auc;
            row.cv_auc = e.cv_auc;
        }
        if (!match) break;
        rows[complete].row = std::move(row);
        cursor += test_sets.size();
        ++complete;
    }
    return complete;
}

}  // namespace

RankingTable run_grid(const std::vector<std::vector<std::string>>& combos,
                      const SearchConfig& config, const FeatureStore& train,
                      const FeatureStore& test,
                      const std::filesystem::path& results_log,
                      std::vector<std::string>* warnings) {
    RankingTable table;
    if (!config.feature_sets.empty()) {
        auto it = test.tables.find(config.feature_sets.front());
        if (it == test.tables.end())
            throw Error("missing test feature table");
        for (const auto& [name, features] : it->second)
            table.test_sets.push_back(name);
        for (FeatureSet fs : config.feature_sets) {
            auto other = test.tables.find(fs);
            if (other == test.tables.end())
                throw Error("missing test feature table");
            std::vector<std::string> names;
            for (const auto& [name, features] : other->second)
                names.push_back(name);
            if (names != table.test_sets)
                throw Error("test sets differ across feature tables");
        }
    }

    std::vector<ModelSpecKey> keys =
        instantiate_grid(combos, config.algorithms, config.feature_sets);
    std::vector<Computed> rows(keys.size());
    std::vector<char> ready(keys.size(), 0);

    std::size_t precomputed = 0;
    if (!results_log.empty() && std::filesystem::exists(results_log)) {
        precomputed = resumable_prefix(parse_results_log(results_log), keys,
                                       table.test_sets, rows);
        std::fill(ready.begin(), ready.begin() + precomputed, 1);
    }

    std::ofstream log;
    if (!results_log.empty()) {
        std::string prefix(kResultsLogHeader);
        prefix += '\n';
        for (std::size_t i = 0; i < precomputed; ++i)
            prefix += log_lines_for(rows[i].row, table.test_sets);
        atomic_write(results_log, prefix);
        log.open(results_log, std::ios::app);
        if (!log) throw Error("cannot open results log for append");
    }

    Rng root(config.seed);
    auto compute = [&](const ModelSpecKey& key) {
        Computed out;
        out.row.key = key;
        try {
            const FeatureTable& ttable = train.tables.at(key.feature_set);
            DatasetFeatures pooled =
                pool_accounts(key.combo, ttable, &out.notes);
            ClassifierSpec spec;
            spec.algorithm = key.algorithm;
            spec.seed = root.fork(key.label());
            out.row.cv_auc =
                kfold_cv(pooled.rows, pooled.labels, spec, config.cv_folds,
                         root.fork(key.label() + "#cv"));
            FittedModel model = fit(spec, pooled.rows, pooled.labels);
            for (const std::string& name : table.test_sets) {
                const DatasetFeatures& held =
                    test.at(key.feature_set, name);
                out.row.test_auc[name] =
                    auc(score(model, held.rows), held.labels);
            }
        } catch (const Error& e) {
            out.row.failed = true;
            out.row.error = e.what();
        }
        return out;
    };

    std::vector<std::size_t> pending;
    for (std::size_t i = precomputed; i < keys.size(); ++i)
        pending.push_back(i);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable done;

    unsigned workers = config.workers > 0
                           ? static_cast<unsigned>(config.workers)
                           : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min<std::size_t>(workers, std::max<std::size_t>(
                                                 pending.size(), 1));

    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                std::size_t slot = next.fetch_add(1);
                if (slot >= pending.size()) break;
                std::size_t i = pending[slot];
                Computed out = compute(keys[i]);
                {
                    std::lock_guard<std::mutex> lock(mu);
                    rows[i] = std::move(out);
                    ready[i] = 1;
                }
                done.notify_all();
            }
        });
    }

    for (std::size_t i = 0; i < keys.size(); ++i) {
        {
            std::unique_lock<std::mutex> lock(mu);
            done.wait(lock, [&] { return ready[i] != 0; });
        }
        const Computed& out = rows[i];
        if (warnings) {
            for (const std::string& note : out.notes)
                warnings->push_back(out.row.key.label() + ": " + note);
            if (out.row.failed)
                warnings->push_back(out.row.key.label() +
                                    ": fit failed: " + out.row.error);
        }
        if (log.is_open() && i >= precomputed && !out.row.failed) {
            log << log_lines_for(out.row, table.test_sets);
            log.flush();
        }
    }
    for (std::thread& t : pool) t.join();

    table.rows.reserve(rows.size());
    for (Computed& out : rows) table.rows.push_back(std::move(out.row));
    return table;
}

namespace {

std::vector<std::int64_t> competition_ranks(
    const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return values[a] > values[b];
                     });
    std::vector<std::int64_t> ranks(values.size(), 0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() &&
               values[order[j]] == values[order[i]])
            ++j;
        for (std::size_t t = i; t < j; ++t)
            ranks[order[t]] = static_cast<std::int64_t>(i) + 1;
        i = j;
    }
    return ranks;
}

}  // namespace

std::vector<ScreenResult> rank_and_screen(const RankingTable& table) {
    std::vector<FeatureSet> group_order;
    std::map<FeatureSet, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].failed) continue;
        FeatureSet fs = table.rows[i].key.feature_set;
        auto [it, inserted] = groups.try_emplace(fs);
        if (inserted) group_order.push_back(fs);
        it->second.push_back(i);
    }

    std::vector<ScreenResult> screens;
    for (FeatureSet fs : group_order) {
        const std::vector<std::size_t>& members = groups[fs];
        std::vector<std::int64_t> rank_sum(members.size(), 0);
        for (const std::string& test_set : table.test_sets) {
            std::vector<double> aucs;
            aucs.reserve(members.size());
            for (std::size_t m : members)
                aucs.push_back(table.rows[m].test_auc.at(test_set));
            std::vector<std::int64_t> ranks = competition_ranks(aucs);
            for (std::size_t k = 0; k < members.size(); ++k)
                rank_sum[k] += ranks[k];
        }

        ScreenResult screen;
        screen.feature_set = fs;
        std::vector<Algorithm> algo_order;
        std::map<Algorithm, std::size_t> best_for;  // index into members
        for (std::size_t k = 0; k < members.size(); ++k) {
            Algorithm algo = table.rows[members[k]].key.algorithm;
            auto it = best_for.find(algo);
            if (it == best_for.end()) {
                algo_order.push_back(algo);
                best_for[algo] = k;
                continue;
            }
            std::size_t held = it->second;
            bool better =
                rank_sum[k] < rank_sum[held] ||
                (rank_sum[k] == rank_sum[held] &&
                 combo_id(table.rows[members[k]].key.combo) <
                     combo_id(table.rows[members[held]].key.combo));
            if (better) it->second = k;
        }
        for (Algorithm algo : algo_order) {
            std::size_t k = best_for[algo];
            const GridRow& row = table.rows[members[k]];
            Candidate candidate;
            candidate.key = row.key;
            candidate.rank_sum = rank_sum[k];
            candidate.cv_auc = row.cv_auc;
            double sum = 0.0;
            for (const std::string& test_set : table.test_sets)
                sum += row.test_auc.at(test_set);
            candidate.mean_test_auc =
                table.test_sets.empty()
                    ? 0.0
                    : sum / static_cast<double>(table.test_sets.size());
            screen.candidates.push_back(std::move(candidate));
        }
        screens.push_back(std::move(screen));
    }
    return screens;
}

namespace {

bool preferred(const Candidate& a, const Candidate& b) {
    if (a.mean_test_auc != b.mean_test_auc)
        return a.mean_test_auc > b.mean_test_auc;
    if (a.cv_auc != b.cv_auc) return a.cv_auc > b.cv_auc;
    return a.key.label() < b.key.label();
}

}  // namespace

Candidate final_select(const std::vector<Candidate>& candidates,
                       double mean_delta, double cv_margin) {
    if (candidates.empty()) throw Error("no candidates to select from");
    const Candidate* best = &candidates.front();
    for (const Candidate& c : candidates)
        if (preferred(c, *best)) best = &c;

    const Candidate* chosen = nullptr;
    for (const Candidate& c : candidates) {
        if (c.mean_test_auc < best->mean_test_auc - mean_delta) continue;
        if (c.cv_auc < best->cv_auc + cv_margin) continue;
        if (!chosen || c.cv_auc > chosen->cv_auc ||
            (c.cv_auc == chosen->cv_auc && preferred(c, *chosen)))
            chosen = &c;
    }
    return chosen ? *chosen : *best;
}

std::string selection_report_json(const std::vector<ScreenResult>& screens,
                                  double mean_delta, double cv_margin) {
    nlohmann::json report;
    report["mean_delta"] = mean_delta;
    report["cv_margin"] = cv_margin;
    report["selections"] = nlohmann::json::array();
    for (const ScreenResult& screen : screens) {
        nlohmann::json entry;
        entry["feature_set"] = std::string(to_string(screen.feature_set));
        entry["candidates"] = nlohmann::json::array();
        for (const Candidate& c : screen.candidates) {
            nlohmann::json row;
            row["algorithm"] = std::string(to_string(c.key.algorithm));
            row["combo"] = c.key.combo;
            row["mean_test_auc"] = c.mean_test_auc;
            row["cv_auc"] = c.cv_auc;
            row["rank_sum"] = c.rank_sum;
            entry["candidates"].push_back(std::move(row));
        }
        if (screen.candidates.empty()) {
            entry["winner"] = nullptr;
        } else {
            Candidate winner =
                final_select(screen.candidates, mean_delta, cv_margin);
            nlohmann::json row;
            row["algorithm"] = std::string(to_string(winner.key.algorithm));
            row["combo"] = winner.key.combo;
            row["mean_test_auc"] = winner.mean_test_auc;
            row["cv_auc"] = winner.cv_auc;
            row["rank_sum"] = winner.rank_sum;
            entry["winner"] = std::move(row);
        }
        report["selections"].push_back(std::move(entry));
    }
    return report.dump(2) + "\n";
}

}  // namespace botdna
