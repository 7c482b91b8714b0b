#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "botdna/bigram.hpp"
#include "botdna/classify.hpp"
#include "botdna/ingest.hpp"
#include "botdna/sentiment.hpp"

namespace botdna {

enum class MatchMode { prefix, substring };

std::string_view to_string(MatchMode mode);
MatchMode match_mode_from_string(std::string_view s);

struct TopicSpec {
    std::string name;
    std::vector<std::string> seed_hashtags;  // lowercase
    MatchMode match_mode = MatchMode::prefix;

    void validate() const;
};

// True iff any tweet hashtag starts with (prefix mode) or contains
// (substring mode) any seed.
bool match_topic(const TweetRecord& tweet, const TopicSpec& topic);

// Keeps tweets whose lang is "en" or empty.
std::vector<TweetRecord> filter_english(
    const std::vector<TweetRecord>& tweets);

struct PresenceResult {
    std::size_t account_count = 0;
    std::size_t tweet_count = 0;
    std::size_t bot_account_count = 0;
    std::size_t bot_tweet_count = 0;
    double bot_fraction_accounts = 0.0;
    double bot_fraction_tweets = 0.0;
    std::map<std::string, double> account_scores;
    std::vector<double> bot_scores;    // account-level, classified bot
    std::vector<double> human_scores;  // account-level, classified human
};

// Scores each account once from its own tweets: metadata features use the
// latest user snapshot with the newest tweet time as probe; compression
// features use the account's interaction string in time order.  An
// account is a bot iff score > threshold.  bigram may be null unless the
// model wants the metadata features.
PresenceResult analyze_presence(const std::vector<TweetRecord>& tweets,
                                const FittedModel& model,
                                const BigramModel* bigram,
                                double threshold);

// Hashtag counts, descending, ties alphabetical, truncated to n.  With
// exclude_topic set, hashtags matching the topic's seeds are dropped.
std::vector<std::pair<std::string, std::size_t>> top_hashtags(
    const std::vector<TweetRecord>& tweets, std::size_t n = 20,
    const TopicSpec* exclude_topic = nullptr);

inline constexpr std::size_t kScoreHistogramBins = 20;

struct ClassBreakdown {
    std::size_t accounts = 0;
    std::size_t tweets = 0;
    std::vector<std::size_t> score_histogram;  // kScoreHistogramBins on [0,1]
    std::map<Sentiment, double> compound_proportions;
    std::map<Sentiment, double> hashtag_proportions;
    std::vector<std::pair<std::string, std::size_t>> hashtags;
};

struct CaseReport {
    TopicSpec topic;
    double threshold = 0.0;
    std::size_t account_count = 0;
    std::size_t tweet_count = 0;
    double bot_fraction_accounts = 0.0;
    double bot_fraction_tweets = 0.0;
    ClassBreakdown bots;
    ClassBreakdown humans;
    std::vector<double> bot_scores;
    std::vector<double> human_scores;
};

CaseReport build_case_report(const std::vector<TweetRecord>& tweets,
                             const TopicSpec& topic,
                             const FittedModel& model,
                             const BigramModel* bigram, double threshold,
                             const ValenceLexicon& valence,
                             const SentimentRules& rules,
                             const HashtagLexicon& hashtags,
                             std::size_t top_n = 20,
                             bool exclude_topic_tags = false);

std::string case_report_json(const CaseReport& report);

}  // namespace botdna
