#include "botdna/run_config.hpp"

#include <cmath>
#include <cstdlib>

#include "json.hpp"

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"

namespace botdna {

std::string_view to_string(ThresholdMode mode) {
    switch (mode) {
        case ThresholdMode::f1_max: return "f1_max";
        case ThresholdMode::fixed: return "fixed";
    }
    throw Error("unknown threshold mode");
}

ThresholdMode threshold_mode_from_string(std::string_view s) {
    if (s == "f1_max") return ThresholdMode::f1_max;
    if (s == "fixed") return ThresholdMode::fixed;
    throw Error("unknown threshold mode: " + std::string(s));
}

void RunConfig::validate() const {
    if (!std::isfinite(mean_delta) || mean_delta < 0.0)
        throw Error("mean_delta must be >= 0");
    if (!std::isfinite(cv_margin) || cv_margin < 0.0)
        throw Error("cv_margin must be >= 0");
    if (!std::isfinite(fixed_threshold) || fixed_threshold < 0.0 ||
        fixed_threshold > 1.0)
        throw Error("fixed threshold must lie in [0, 1]");
    if (workers < 0) throw Error("workers must be >= 0");
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
    std::filesystem::path p(value);
    return p.is_absolute() ? p : base / p;
}

}  // namespace

RunConfig load_run_config(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("config " + path.string() + ": " + e.what(), 0);
    }
    if (!doc.is_object()) throw SchemaError("config root", "must be an object");

    RunConfig config;
    const auto base = path.parent_path();
    for (const auto& [key, value] : doc.items()) {
        try {
            if (key == "seed") {
                config.seed = value.get<std::uint64_t>();
            } else if (key == "manifest") {
                config.manifest = resolve(base, value.get<std::string>());
            } else if (key == "bigram_model") {
                config.bigram_model = resolve(base, value.get<std::string>());
            } else if (key == "valence_lexicon") {
                config.valence_lexicon =
                    resolve(base, value.get<std::string>());
            } else if (key == "hashtag_lexicon") {
                config.hashtag_lexicon =
                    resolve(base, value.get<std::string>());
            } else if (key == "out_dir") {
                config.out_dir = resolve(base, value.get<std::string>());
            } else if (key == "mean_delta") {
                config.mean_delta = value.get<double>();
            } else if (key == "cv_margin") {
                config.cv_margin = value.get<double>();
            } else if (key == "threshold") {
                if (!value.is_object())
                    throw SchemaError("threshold", "must be an object");
                for (const auto& [tkey, tvalue] : value.items()) {
                    if (tkey == "mode")
                        config.threshold_mode = threshold_mode_from_string(
                            tvalue.get<std::string>());
                    else if (tkey == "value")
                        config.fixed_threshold = tvalue.get<double>();
                    else
                        throw SchemaError("unknown threshold key", tkey);
                }
            } else if (key == "workers") {
                config.workers = value.get<int>();
            } else {
                throw SchemaError("unknown config key", key);
            }
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("config key " + key, e.what());
        }
    }
    config.validate();
    return config;
}

void apply_env_overrides(RunConfig& config) {
    const auto pick = [](const char* name,
                         std::filesystem::path& target) {
        if (const char* value = std::getenv(name); value && *value)
            target = value;
    };
    pick("BOTDNA_MANIFEST", config.manifest);
    pick("BOTDNA_BIGRAM_MODEL", config.bigram_model);
    pick("BOTDNA_VALENCE_LEXICON", config.valence_lexicon);
    pick("BOTDNA_HASHTAG_LEXICON", config.hashtag_lexicon);
    pick("BOTDNA_OUT_DIR", config.out_dir);
}

}  // namespace botdna
