#include "botdna/bigram.hpp"

#include <cmath>
#include <string>

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"

namespace botdna {

namespace {

constexpr double kUniform = 1.0 / BigramModel::kBigramCount;

const std::array<char, BigramModel::kAlphabetSize>& alphabet() {
    static const auto table = [] {
        std::array<char, BigramModel::kAlphabetSize> a{};
        int i = 0;
        for (char c = 'A'; c <= 'Z'; ++c) a[i++] = c;
        for (char c = 'a'; c <= 'z'; ++c) a[i++] = c;
        for (char c = '0'; c <= '9'; ++c) a[i++] = c;
        a[i] = '_';
        return a;
    }();
    return table;
}

}  // namespace

int BigramModel::char_index(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return 26 + (c - 'a');
    if (c >= '0' && c <= '9') return 52 + (c - '0');
    if (c == '_') return 62;
    return -1;
}

BigramModel::BigramModel(std::array<double, kBigramCount> probabilities,
                         double alpha)
    : probs_(probabilities), alpha_(alpha) {}

double BigramModel::probability(char first, char second) const {
    int i = char_index(first);
    int j = char_index(second);
    if (i < 0 || j < 0) return kUniform;
    return probs_[static_cast<std::size_t>(i) * kAlphabetSize +
                  static_cast<std::size_t>(j)];
}

double BigramModel::likelihood(std::string_view screen_name) const {
    std::string kept;
    kept.reserve(screen_name.size());
    for (char c : screen_name)
        if (char_index(c) >= 0) kept.push_back(c);
    if (kept.size() < 2) return kUniform;
    double log_sum = 0.0;
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) {
        double p = probability(kept[i], kept[i + 1]);
        if (p <= 0.0) return 0.0;
        log_sum += std::log(p);
    }
    return std::exp(log_sum / static_cast<double>(kept.size() - 1));
}

void BigramModel::save_csv(const std::filesystem::path& path) const {
    std::string out;
    out.reserve(probs_.size() * 16);
    out += "# smoothing_alpha," + format_double(alpha_) + "\n";
    out += "bigram,probability\n";
    const auto& chars = alphabet();
    for (int i = 0; i < kAlphabetSize; ++i)
        for (int j = 0; j < kAlphabetSize; ++j) {
            out += chars[static_cast<std::size_t>(i)];
            out += chars[static_cast<std::size_t>(j)];
            out += ',';
            out += format_double(
                probs_[static_cast<std::size_t>(i) * kAlphabetSize +
                       static_cast<std::size_t>(j)]);
            out += '\n';
        }
    atomic_write(path, out);
}

BigramModel BigramModel::load_csv(const std::filesystem::path& path) {
    std::array<double, kBigramCount> probs{};
    std::array<bool, kBigramCount> seen{};
    double alpha = 1.0;
    std::size_t loaded = 0;
    for_each_line(path, [&](const std::string& line) {
        if (line.empty()) return;
        if (line.rfind("# smoothing_alpha,", 0) == 0) {
            alpha = std::stod(line.substr(18));
            return;
        }
        if (line[0] == '#' || line == "bigram,probability") return;
        auto fields = split_csv_line(line);
        if (fields.size() != 2 || fields[0].size() != 2)
            throw SchemaError("bigram row needs 'bigram,probability': " + line,
                              "bigram");
        int i = char_index(fields[0][0]);
        int j = char_index(fields[0][1]);
        if (i < 0 || j < 0)
            throw SchemaError("bigram '" + fields[0] + "' is outside the alphabet",
                              "bigram");
        std::size_t idx = static_cast<std::size_t>(i) * kAlphabetSize +
                          static_cast<std::size_t>(j);
        if (seen[idx])
            throw SchemaError("bigram '" + fields[0] + "' appears twice", "bigram");
        double p = std::stod(fields[1]);
        if (!(p > 0.0) || p > 1.0)
            throw SchemaError("bigram '" + fields[0] + "' has probability " +
                                  fields[1] + " outside (0,1]",
                              "probability");
        seen[idx] = true;
        probs[idx] = p;
        ++loaded;
    });
    if (loaded != kBigramCount)
        throw SchemaError("bigram model has " + std::to_string(loaded) +
                              " entries, expected 3969",
                          "bigram");
    return BigramModel(probs, alpha);
}

void BigramTrainer::add(std::string_view screen_name) {
    for (char c : screen_name)
        if (BigramModel::char_index(c) < 0) {
            ++dropped_;
            return;
        }
    for (std::size_t i = 0; i + 1 < screen_name.size(); ++i) {
        int a = BigramModel::char_index(screen_name[i]);
        int b = BigramModel::char_index(screen_name[i + 1]);
        ++counts_[static_cast<std::size_t>(a) * BigramModel::kAlphabetSize +
                  static_cast<std::size_t>(b)];
        ++total_;
    }
}

BigramModel BigramTrainer::finish(double alpha) const {
    if (total_ == 0) throw Error("no training bigrams");
    std::array<double, BigramModel::kBigramCount> probs{};
    double denom = static_cast<double>(total_) +
                   alpha * BigramModel::kBigramCount;
    for (std::size_t i = 0; i < probs.size(); ++i)
        probs[i] = (static_cast<double>(counts_[i]) + alpha) / denom;
    return BigramModel(probs, alpha);
}

BigramModel train_bigram_model(const std::vector<std::string>& screen_names,
                               double alpha) {
    BigramTrainer trainer;
    for (const auto& name : screen_names) trainer.add(name);
    return trainer.finish(alpha);
}

}  // namespace botdna
