#include "botdna/casestudy.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "json.hpp"

#include "botdna/dna.hpp"
#include "botdna/errors.hpp"
#include "botdna/light_features.hpp"

namespace botdna {

std::string_view to_string(MatchMode mode) {
    switch (mode) {
        case MatchMode::prefix: return "prefix";
        case MatchMode::substring: return "substring";
    }
    throw Error("bad match mode value");
}

MatchMode match_mode_from_string(std::string_view s) {
    if (s == "prefix") return MatchMode::prefix;
    if (s == "substring") return MatchMode::substring;
    throw Error("unknown match mode '" + std::string(s) + "'");
}

void TopicSpec::validate() const {
    if (seed_hashtags.empty()) throw Error("topic needs seed hashtags");
    for (const std::string& seed : seed_hashtags) {
        if (seed.empty()) throw Error("empty seed hashtag");
        for (char c : seed)
            if (c == '#' || std::isupper(static_cast<unsigned char>(c)))
                throw Error("seed hashtags must be lowercase without '#'");
    }
}

namespace {

bool seed_matches(const std::string& hashtag, const std::string& seed,
                  MatchMode mode) {
    if (mode == MatchMode::prefix) return hashtag.rfind(seed, 0) == 0;
    return hashtag.find(seed) != std::string::npos;
}

}  // namespace

bool match_topic(const TweetRecord& tweet, const TopicSpec& topic) {
    for (const std::string& hashtag : tweet.hashtags)
        for (const std::string& seed : topic.seed_hashtags)
            if (seed_matches(hashtag, seed, topic.match_mode)) return true;
    return false;
}

std::vector<TweetRecord> filter_english(
    const std::vector<TweetRecord>& tweets) {
    std::vector<TweetRecord> kept;
    for (const TweetRecord& tweet : tweets)
        if (tweet.lang.empty() || tweet.lang == "en")
            kept.push_back(tweet);
    return kept;
}

namespace {

// Tweet indices per account, each list in (created_at, id) order.
std::map<std::string, std::vector<std::size_t>> group_by_account(
    const std::vector<TweetRecord>& tweets) {
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < tweets.size(); ++i)
        groups[tweets[i].user.id].push_back(i);
    for (auto& [id, indices] : groups)
        std::sort(indices.begin(), indices.end(),
                  [&](std::size_t a, std::size_t b) {
                      if (tweets[a].created_at != tweets[b].created_at)
                          return tweets[a].created_at < tweets[b].created_at;
                      return tweets[a].id < tweets[b].id;
                  });
    return groups;
}

std::vector<double> account_features(
    const std::vector<TweetRecord>& tweets,
    const std::vector<std::size_t>& indices, const FittedModel& model,
    const BigramModel* bigram) {
    if (model.feature_set == FeatureSet::light) {
        if (!bigram)
            throw Error("metadata features need a bigram model");
        const TweetRecord& newest = tweets[indices.back()];
        auto values =
            extract_light(newest.user, newest.created_at, *bigram).vector();
        return {values.begin(), values.end()};
    }
    std::vector<InteractionKind> kinds;
    kinds.reserve(indices.size());
    for (std::size_t i : indices) kinds.push_back(tweets[i].kind);
    DnaSequence dna;
    dna.account_id = tweets[indices.front()].user.id;
    dna.sequence = encode_kinds(kinds);
    return dna_feature_vector(compress_stats(dna), model.feature_set);
}

}  // namespace

PresenceResult analyze_presence(const std::vector<TweetRecord>& tweets,
                                const FittedModel& model,
                                const BigramModel* bigram,
                                double threshold) {
    auto groups = group_by_account(tweets);
    if (groups.empty()) throw Error("no accounts in topic tweets");

    PresenceResult result;
    result.account_count = groups.size();
    result.tweet_count = tweets.size();
    for (const auto& [account_id, indices] : groups) {
        double s = score_one(
            model, account_features(tweets, indices, model, bigram));
        result.account_scores[account_id] = s;
        if (s > threshold) {
            ++result.bot_account_count;
            result.bot_tweet_count += indices.size();
            result.bot_scores.push_back(s);
        } else {
            result.human_scores.push_back(s);
        }
    }
    result.bot_fraction_accounts =
        static_cast<double>(result.bot_account_count) /
        static_cast<double>(result.account_count);
    result.bot_fraction_tweets =
        static_cast<double>(result.bot_tweet_count) /
        static_cast<double>(result.tweet_count);
    return result;
}

std::vector<std::pair<std::string, std::size_t>> top_hashtags(
    const std::vector<TweetRecord>& tweets, std::size_t n,
    const TopicSpec* exclude_topic) {
    std::map<std::string, std::size_t> counts;
    for (const TweetRecord& tweet : tweets) {
        for (const std::string& hashtag : tweet.hashtags) {
            if (exclude_topic) {
                bool excluded = false;
                for (const std::string& seed :
                     exclude_topic->seed_hashtags)
                    if (seed_matches(hashtag, seed,
                                     exclude_topic->match_mode)) {
                        excluded = true;
                        break;
                    }
                if (excluded) continue;
            }
            ++counts[hashtag];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(),
                                                            counts.end());
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });
    if (ranked.size() > n) ranked.resize(n);
    return ranked;
}

namespace {

std::map<Sentiment, double> proportions(
    const std::map<Sentiment, std::size_t>& counts, std::size_t total) {
    std::map<Sentiment, double> out;
    if (total == 0) return out;
    for (Sentiment s :
         {Sentiment::positive, Sentiment::neutral, Sentiment::negative,
          Sentiment::inconclusive}) {
        auto it = counts.find(s);
        std::size_t count = it == counts.end() ? 0 : it->second;
        out[s] =
            static_cast<double>(count) / static_cast<double>(total);
    }
    return out;
}

nlohmann::json breakdown_json(const ClassBreakdown& breakdown) {
    nlohmann::json out;
    out["accounts"] = breakdown.accounts;
    out["tweets"] = breakdown.tweets;
    out["score_histogram"] = breakdown.score_histogram;
    out["compound_sentiment"] = nlohmann::json::object();
    for (const auto& [label, value] : breakdown.compound_proportions)
        out["compound_sentiment"][std::string(to_string(label))] = value;
    out["hashtag_sentiment"] = nlohmann::json::object();
    for (const auto& [label, value] : breakdown.hashtag_proportions)
        out["hashtag_sentiment"][std::string(to_string(label))] = value;
    out["top_hashtags"] = nlohmann::json::array();
    for (const auto& [hashtag, count] : breakdown.hashtags)
        out["top_hashtags"].push_back({{"hashtag", hashtag},
                                       {"count", count}});
    return out;
}

}  // namespace

CaseReport build_case_report(const std::vector<TweetRecord>& tweets,
                             const TopicSpec& topic,
                             const FittedModel& model,
                             const BigramModel* bigram, double threshold,
                             const ValenceLexicon& valence,
                             const SentimentRules& rules,
                             const HashtagLexicon& hashtags,
                             std::size_t top_n, bool exclude_topic_tags) {
    topic.validate();
    PresenceResult presence =
        analyze_presence(tweets, model, bigram, threshold);

    CaseReport report;
    report.topic = topic;
    report.threshold = threshold;
    report.account_count = presence.account_count;
    report.tweet_count = presence.tweet_count;
    report.bot_fraction_accounts = presence.bot_fraction_accounts;
    report.bot_fraction_tweets = presence.bot_fraction_tweets;
    report.bot_scores = presence.bot_scores;
    report.human_scores = presence.human_scores;

    report.bots.accounts = presence.bot_account_count;
    report.humans.accounts =
        presence.account_count - presence.bot_account_count;
    report.bots.tweets = presence.bot_tweet_count;
    report.humans.tweets = presence.tweet_count - presence.bot_tweet_count;

    auto histogram = [](const std::vector<double>& scores) {
        std::vector<std::size_t> bins(kScoreHistogramBins, 0);
        for (double s : scores) {
            auto bin = static_cast<std::size_t>(
                std::clamp(s, 0.0, 1.0) *
                static_cast<double>(kScoreHistogramBins));
            ++bins[std::min(bin, kScoreHistogramBins - 1)];
        }
        return bins;
    };
    report.bots.score_histogram = histogram(report.bot_scores);
    report.humans.score_histogram = histogram(report.human_scores);

    std::vector<TweetRecord> bot_tweets;
    std::vector<TweetRecord> human_tweets;
    for (const TweetRecord& tweet : tweets) {
        double s = presence.account_scores.at(tweet.user.id);
        (s > threshold ? bot_tweets : human_tweets).push_back(tweet);
    }

    auto sentiments = [&](const std::vector<TweetRecord>& members,
                          ClassBreakdown& breakdown) {
        std::map<Sentiment, std::size_t> compound_counts;
        std::map<Sentiment, std::size_t> hashtag_counts;
        for (const TweetRecord& tweet : members) {
            double c =
                compound_score(clean_text(tweet.text), valence, rules);
            ++compound_counts[sentiment_from_compound(c)];
            ++hashtag_counts[hashtag_sentiment(tweet.hashtags, hashtags)];
        }
        breakdown.compound_proportions =
            proportions(compound_counts, members.size());
        breakdown.hashtag_proportions =
            proportions(hashtag_counts, members.size());
    };
    sentiments(bot_tweets, report.bots);
    sentiments(human_tweets, report.humans);

    const TopicSpec* exclude = exclude_topic_tags ? &topic : nullptr;
    report.bots.hashtags = top_hashtags(bot_tweets, top_n, exclude);
    report.humans.hashtags = top_hashtags(human_tweets, top_n, exclude);
    return report;
}

std::string case_report_json(const CaseReport& report) {
    nlohmann::json out;
    out["topic"]["name"] = report.topic.name;
    out["topic"]["seed_hashtags"] = report.topic.seed_hashtags;
    out["topic"]["match_mode"] =
        std::string(to_string(report.topic.match_mode));
    out["threshold"] = report.threshold;
    out["account_count"] = report.account_count;
    out["tweet_count"] = report.tweet_count;
    out["bot_fraction_accounts"] = report.bot_fraction_accounts;
    out["bot_fraction_tweets"] = report.bot_fraction_tweets;
    out["bots"] = breakdown_json(report.bots);
    out["humans"] = breakdown_json(report.humans);
    return out.dump(2) + "\n";
}

}  // namespace botdna
