#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace botdna {

enum class ThresholdMode { f1_max, fixed };

std::string_view to_string(ThresholdMode mode);
ThresholdMode threshold_mode_from_string(std::string_view s);

struct RunConfig {
    std::uint64_t seed = 1;
    std::filesystem::path manifest;
    std::filesystem::path bigram_model;
    std::filesystem::path valence_lexicon;
    std::filesystem::path hashtag_lexicon;
    std::filesystem::path out_dir = "out";
    double mean_delta = 0.02;
    double cv_margin = 0.08;
    ThresholdMode threshold_mode = ThresholdMode::f1_max;
    double fixed_threshold = 0.5;
    int workers = 0;  // 0 picks the hardware concurrency

    void validate() const;
};

// Reads a JSON config; unknown keys are rejected so typos fail loudly.
// Relative paths are resolved against the config file's directory.
RunConfig load_run_config(const std::filesystem::path& path);

// Environment variables override the path fields only: BOTDNA_MANIFEST,
// BOTDNA_BIGRAM_MODEL, BOTDNA_VALENCE_LEXICON, BOTDNA_HASHTAG_LEXICON,
// BOTDNA_OUT_DIR.
void apply_env_overrides(RunConfig& config);

}  // namespace botdna
