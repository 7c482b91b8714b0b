#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace botdna {

// Screen-name bigram likelihood model over the 63 characters a screen name
// may contain (A-Z, a-z, 0-9, underscore), hence 63*63 = 3969 bigrams.
// Probabilities are joint bigram frequencies with Laplace smoothing:
//   P(bigram) = (count + alpha) / (total + alpha * 3969)
class BigramModel {
public:
    static constexpr int kAlphabetSize = 63;
    static constexpr int kBigramCount = kAlphabetSize * kAlphabetSize;

    // Index in the fixed alphabet order A-Z, a-z, 0-9, '_'; -1 if outside.
    static int char_index(char c);

    BigramModel(std::array<double, kBigramCount> probabilities, double alpha);

    double probability(char first, char second) const;
    double smoothing_alpha() const { return alpha_; }

    // Geometric mean of the probabilities of the overlapping bigrams formed
    // by the name's in-alphabet characters.  Names with fewer than two such
    // characters get the uniform likelihood 1/3969.
    double likelihood(std::string_view screen_name) const;

    // CSV persistence: "bigram,probability" rows preceded by a
    // "# smoothing_alpha,<value>" line.  Loading validates that all 3969
    // bigrams appear exactly once.
    void save_csv(const std::filesystem::path& path) const;
    static BigramModel load_csv(const std::filesystem::path& path);

private:
    std::array<double, kBigramCount> probs_;
    double alpha_;
};

// Streaming counter so multi-million-name corpora never sit in memory.
// Names containing characters outside the alphabet are dropped whole and
// tallied in dropped().
class BigramTrainer {
public:
    void add(std::string_view screen_name);
    std::uint64_t dropped() const { return dropped_; }
    std::uint64_t total_bigrams() const { return total_; }

    // Throws when no bigram was ever counted.
    BigramModel finish(double alpha = 1.0) const;

private:
    std::array<std::uint64_t, BigramModel::kBigramCount> counts_{};
    std::uint64_t total_ = 0;
    std::uint64_t dropped_ = 0;
};

BigramModel train_bigram_model(const std::vector<std::string>& screen_names,
                               double alpha = 1.0);

}  // namespace botdna
