#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "botdna/bigram.hpp"
#include "botdna/dna.hpp"
#include "botdna/errors.hpp"
#include "botdna/ingest.hpp"
#include "botdna/metrics.hpp"
#include "botdna/select.hpp"
#include "botdna/sentiment.hpp"

namespace py = pybind11;
using namespace botdna;

namespace {

InteractionKind kind_from_string(const std::string& s) {
    if (s == "tweet") return InteractionKind::tweet;
    if (s == "reply") return InteractionKind::reply;
    if (s == "retweet") return InteractionKind::retweet;
    throw Error("unknown interaction kind: " + s);
}

CompressionStats stats_of(const std::string& sequence) {
    DnaSequence dna;
    dna.sequence = sequence;
    return compress_stats(dna);
}

}  // namespace

PYBIND11_MODULE(_botdna, m) {
    m.doc() = "core routines of the digital-DNA bot detection toolkit";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "BotdnaError", PyExc_ValueError);

    m.def(
        "encode_kinds",
        [](const std::vector<std::string>& kinds) {
            std::vector<InteractionKind> parsed;
            parsed.reserve(kinds.size());
            for (const std::string& kind : kinds)
                parsed.push_back(kind_from_string(kind));
            return encode_kinds(parsed);
        },
        py::arg("kinds"),
        "Encode interaction kinds (tweet/reply/retweet) as an A/C/T string.");

    m.def(
        "compress_stats",
        [](const std::string& sequence) {
            const CompressionStats s = stats_of(sequence);
            return py::make_tuple(s.original_size, s.compressed_size, s.ratio);
        },
        py::arg("sequence"),
        "Return (original_size, compressed_size, ratio) for a DNA string.");

    m.def(
        "dna_features",
        [](const std::string& sequence, const std::string& feature_set) {
            return dna_feature_vector(stats_of(sequence),
                                      feature_set_from_string(feature_set));
        },
        py::arg("sequence"), py::arg("feature_set"),
        "Project a DNA string onto feature set A, B, C, or D.");

    m.def("auc", &auc, py::arg("scores"), py::arg("labels"),
          "Area under the ROC curve; labels are 1 for bots, 0 for humans.");

    m.def("best_f1_threshold", &best_f1_threshold, py::arg("scores"),
          py::arg("labels"), "Score cutoff that maximizes F1.");

    m.def(
        "anderson_darling",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            const AdTestResult r = anderson_darling_2sample(x, y);
            return py::make_tuple(r.statistic, r.standardized,
                                  r.reject_at_1pct);
        },
        py::arg("x"), py::arg("y"),
        "Two-sample Anderson-Darling test: (statistic, standardized, "
        "reject_at_1pct).");

    m.def("clean_text", &clean_text, py::arg("text"),
          "Strip retweet markers, urls, mentions, entities, and hash signs.");

    m.def(
        "compound_score",
        [](const std::string& text,
           const std::map<std::string, double>& lexicon) {
            return compound_score(text, lexicon, default_sentiment_rules());
        },
        py::arg("text"), py::arg("lexicon"),
        "Compound sentiment of cleaned text under the default rules.");

    m.def(
        "sentiment_label",
        [](double compound) {
            return std::string(to_string(sentiment_from_compound(compound)));
        },
        py::arg("compound"),
        "positive, neutral, or negative for a compound score.");

    m.def(
        "enumerate_combos",
        [](const std::vector<std::tuple<std::string, std::size_t,
                                        std::size_t>>& rows) {
            std::vector<DatasetClassProfile> profiles;
            profiles.reserve(rows.size());
            for (const auto& [name, bots, humans] : rows)
                profiles.push_back({name, bots, humans});
            return enumerate_combos(profiles);
        },
        py::arg("profiles"),
        "Training-set combinations with both classes present; profiles are "
        "(name, bots, humans) tuples.");

    py::class_<BigramModel>(m, "BigramModel",
                            "Screen-name bigram likelihood model.")
        .def_static(
            "train",
            [](const std::vector<std::string>& names, double alpha) {
                return train_bigram_model(names, alpha);
            },
            py::arg("names"), py::arg("alpha") = 1.0)
        .def_static(
            "load",
            [](const std::string& path) { return BigramModel::load_csv(path); },
            py::arg("path"))
        .def(
            "save",
            [](const BigramModel& model, const std::string& path) {
                model.save_csv(path);
            },
            py::arg("path"))
        .def(
            "likelihood",
            [](const BigramModel& model, const std::string& screen_name) {
                return model.likelihood(screen_name);
            },
            py::arg("screen_name"));
}
