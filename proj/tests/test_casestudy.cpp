#include "doctest.h"

#include "botdna/casestudy.hpp"
#include "botdna/classify.hpp"
#include "botdna/errors.hpp"
#include "botdna/light_features.hpp"
#include "botdna/rng.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace botdna;

namespace {

UserObject make_user(const std::string& id, std::int64_t followers = 10) {
    UserObject user;
    user.id = id;
    user.screen_name = "user_" + id;
    user.name = "User " + id;
    user.statuses_count = 100;
    user.followers_count = followers;
    user.friends_count = 50;
    user.created_at = 1500000000;
    return user;
}

TweetRecord make_tweet(const std::string& id, const UserObject& user,
                       std::int64_t created_at,
                       InteractionKind kind = InteractionKind::tweet,
                       std::vector<std::string> hashtags = {},
                       const std::string& text = "hello world",
                       const std::string& lang = "en") {
    TweetRecord tweet;
    tweet.id = id;
    tweet.user = user;
    tweet.created_at = created_at;
    tweet.text = text;
    tweet.hashtags = std::move(hashtags);
    tweet.kind = kind;
    tweet.lang = lang;
    return tweet;
}

// Score = sigmoid(0.5 - followers_count): positive for starved accounts,
// effectively zero once followers reach the hundreds.
FittedModel follower_model() {
    FittedModel model;
    model.feature_set = FeatureSet::light;
    model.arity = 19;
    LinearParams params;
    params.weights.assign(19, 0.0);
    params.weights[1] = -1.0;
    params.bias = 0.5;
    model.params = params;
    return model;
}

// Score = sigmoid(original_size - 2.5): above 1/2 iff the account has
// three or more tweets.
FittedModel volume_model() {
    FittedModel model;
    model.feature_set = FeatureSet::D;
    model.arity = 3;
    LinearParams params;
    params.weights = {1.0, 0.0, 0.0};
    params.bias = -2.5;
    model.params = params;
    return model;
}

TopicSpec covid_topic(MatchMode mode = MatchMode::prefix) {
    TopicSpec topic;
    topic.name = "covid";
    topic.seed_hashtags = {"covid", "coronavirus"};
    topic.match_mode = mode;
    return topic;
}

}  // namespace

TEST_SUITE("casestudy") {

TEST_CASE("topic matching by hashtag prefix") {
    const auto topic = covid_topic();
    const auto user = make_user("1");
    CHECK(match_topic(make_tweet("a", user, 10, InteractionKind::tweet,
                                 {"covidpandemic"}),
                      topic));
    CHECK(match_topic(
        make_tweet("b", user, 10, InteractionKind::tweet, {"coronavirus"}),
        topic));
    CHECK_FALSE(match_topic(
        make_tweet("c", user, 10, InteractionKind::tweet, {"wuhanflu"}), topic));
    CHECK_FALSE(match_topic(make_tweet("d", user, 10), topic));
}

TEST_CASE("substring mode also matches interior occurrences") {
    const auto prefix = covid_topic(MatchMode::prefix);
    const auto substring = covid_topic(MatchMode::substring);
    const auto user = make_user("1");
    const auto tweet =
        make_tweet("a", user, 10, InteractionKind::tweet, {"anticovid"});
    CHECK_FALSE(match_topic(tweet, prefix));
    CHECK(match_topic(tweet, substring));
}

TEST_CASE("every prefix match is also a substring match") {
    const auto prefix = covid_topic(MatchMode::prefix);
    const auto substring = covid_topic(MatchMode::substring);
    const auto user = make_user("1");
    const std::string alphabet = "covidrnas";
    Rng rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        std::string tag;
        const std::size_t len = 1 + rng.below(10);
        for (std::size_t i = 0; i < len; ++i)
            tag += alphabet[rng.below(alphabet.size())];
        const auto tweet =
            make_tweet("t", user, 10, InteractionKind::tweet, {tag});
        if (match_topic(tweet, prefix)) CHECK(match_topic(tweet, substring));
    }
}

TEST_CASE("topic validation rejects unusable seeds") {
    TopicSpec empty;
    empty.name = "x";
    CHECK_THROWS_AS(empty.validate(), Error);

    TopicSpec upper;
    upper.name = "x";
    upper.seed_hashtags = {"Covid"};
    CHECK_THROWS_AS(upper.validate(), Error);

    TopicSpec marked;
    marked.name = "x";
    marked.seed_hashtags = {"#covid"};
    CHECK_THROWS_AS(marked.validate(), Error);

    TopicSpec blank;
    blank.name = "x";
    blank.seed_hashtags = {""};
    CHECK_THROWS_AS(blank.validate(), Error);

    auto good = covid_topic();
    CHECK_NOTHROW(good.validate());
}

TEST_CASE("match mode names round-trip") {
    CHECK(to_string(MatchMode::prefix) == "prefix");
    CHECK(to_string(MatchMode::substring) == "substring");
    CHECK(match_mode_from_string("prefix") == MatchMode::prefix);
    CHECK(match_mode_from_string("substring") == MatchMode::substring);
    CHECK_THROWS_AS(match_mode_from_string("regex"), Error);
}

TEST_CASE("language filter keeps english and untagged tweets") {
    const auto user = make_user("1");
    std::vector<TweetRecord> tweets = {
        make_tweet("a", user, 1, InteractionKind::tweet, {}, "x", "en"),
        make_tweet("b", user, 2, InteractionKind::tweet, {}, "x", "es"),
        make_tweet("c", user, 3, InteractionKind::tweet, {}, "x", ""),
        make_tweet("d", user, 4, InteractionKind::tweet, {}, "x", "fr"),
    };
    const auto kept = filter_english(tweets);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].id == "a");
    CHECK(kept[1].id == "c");
}

TEST_CASE("presence fractions count accounts and their tweets") {
    // 10 accounts; the two with no followers are flagged and together
    // produce 5 of the 20 tweets.
    const auto bigram = train_bigram_model({"alice", "bob", "carol"});
    std::vector<TweetRecord> tweets;
    std::int64_t stamp = 1600000000;
    const auto bot1 = make_user("b1", 0);
    const auto bot2 = make_user("b2", 0);
    for (int i = 0; i < 3; ++i)
        tweets.push_back(make_tweet("b1_" + std::to_string(i), bot1, stamp++));
    for (int i = 0; i < 2; ++i)
        tweets.push_back(make_tweet("b2_" + std::to_string(i), bot2, stamp++));
    for (int h = 0; h < 8; ++h) {
        const auto user = make_user("h" + std::to_string(h), 1000);
        const int count = h == 0 ? 1 : 2;
        for (int i = 0; i < count; ++i)
            tweets.push_back(make_tweet(user.id + "_" + std::to_string(i), user,
                                        stamp++));
    }
    REQUIRE(tweets.size() == 20);

    const auto model = follower_model();
    const auto result = analyze_presence(tweets, model, &bigram, 0.5);
    CHECK(result.account_count == 10);
    CHECK(result.tweet_count == 20);
    CHECK(result.bot_account_count == 2);
    CHECK(result.bot_tweet_count == 5);
    CHECK(result.bot_fraction_accounts == 0.2);
    CHECK(result.bot_fraction_tweets == 0.25);
    CHECK(result.account_scores.size() == 10);
    CHECK(result.bot_scores.size() == 2);
    CHECK(result.human_scores.size() == 8);
    for (double s : result.bot_scores) CHECK(s > 0.5);
    for (double s : result.human_scores) CHECK(s <= 0.5);

    SUBCASE("input order does not change the outcome") {
        auto shuffled = tweets;
        Rng rng(5);
        rng.shuffle(shuffled);
        const auto again = analyze_presence(shuffled, model, &bigram, 0.5);
        CHECK(again.bot_fraction_accounts == result.bot_fraction_accounts);
        CHECK(again.bot_fraction_tweets == result.bot_fraction_tweets);
        CHECK(again.account_scores == result.account_scores);
        CHECK(again.bot_scores == result.bot_scores);
        CHECK(again.human_scores == result.human_scores);
    }
}

TEST_CASE("compression-based model scores by interaction history") {
    std::vector<TweetRecord> tweets;
    std::int64_t stamp = 1600000000;
    const auto busy1 = make_user("busy1");
    const auto busy2 = make_user("busy2");
    const auto quiet1 = make_user("quiet1");
    const auto quiet2 = make_user("quiet2");
    for (int i = 0; i < 4; ++i) {
        tweets.push_back(make_tweet("x" + std::to_string(i), busy1, stamp++,
                                    InteractionKind::retweet));
        tweets.push_back(make_tweet("y" + std::to_string(i), busy2, stamp++,
                                    InteractionKind::reply));
    }
    tweets.push_back(make_tweet("q1", quiet1, stamp++));
    tweets.push_back(make_tweet("q2", quiet2, stamp++));

    const auto result = analyze_presence(tweets, volume_model(), nullptr, 0.5);
    CHECK(result.account_count == 4);
    CHECK(result.tweet_count == 10);
    CHECK(result.bot_account_count == 2);
    CHECK(result.bot_tweet_count == 8);
    CHECK(result.bot_fraction_accounts == 0.5);
    CHECK(result.bot_fraction_tweets == 0.8);
    CHECK(result.account_scores.at("busy1") ==
          doctest::Approx(sigmoid(4.0 - 2.5)));
    CHECK(result.account_scores.at("quiet1") ==
          doctest::Approx(sigmoid(1.0 - 2.5)));
}

TEST_CASE("metadata features come from the newest snapshot") {
    const auto bigram = train_bigram_model({"alice", "bob"});
    auto old_user = make_user("1", 0);
    auto new_user = make_user("1", 1000);
    std::vector<TweetRecord> tweets = {
        make_tweet("a", old_user, 100),
        make_tweet("b", new_user, 200),
    };
    const auto model = follower_model();

    const auto result = analyze_presence(tweets, model, &bigram, 0.5);
    CHECK(result.bot_account_count == 0);

    const auto features = extract_light(new_user, 200, bigram).vector();
    const double expected =
        score_one(model, std::vector<double>(features.begin(), features.end()));
    CHECK(result.account_scores.at("1") == expected);

    SUBCASE("snapshot choice follows timestamps, not input order") {
        std::swap(tweets[0], tweets[1]);
        const auto again = analyze_presence(tweets, model, &bigram, 0.5);
        CHECK(again.account_scores.at("1") == expected);
    }
}

TEST_CASE("metadata model without a bigram model is an error") {
    std::vector<TweetRecord> tweets = {make_tweet("a", make_user("1"), 1)};
    CHECK_THROWS_AS(analyze_presence(tweets, follower_model(), nullptr, 0.5),
                    Error);
}

TEST_CASE("presence of an empty selection is an error") {
    const std::vector<TweetRecord> none;
    CHECK_THROWS_AS(analyze_presence(none, volume_model(), nullptr, 0.5), Error);
}

TEST_CASE("top hashtags rank by count with alphabetical ties") {
    const auto user = make_user("1");
    std::vector<TweetRecord> tweets = {
        make_tweet("a", user, 1, InteractionKind::tweet, {"beta", "alpha"}),
        make_tweet("b", user, 2, InteractionKind::tweet, {"alpha"}),
        make_tweet("c", user, 3, InteractionKind::tweet, {"gamma", "beta"}),
        make_tweet("d", user, 4, InteractionKind::tweet, {"alpha"}),
    };
    const auto top = top_hashtags(tweets);
    REQUIRE(top.size() == 3);
    CHECK(top[0] == std::pair<std::string, std::size_t>{"alpha", 3});
    CHECK(top[1] == std::pair<std::string, std::size_t>{"beta", 2});
    CHECK(top[2] == std::pair<std::string, std::size_t>{"gamma", 1});

    const auto truncated = top_hashtags(tweets, 2);
    REQUIRE(truncated.size() == 2);
    CHECK(truncated[0].first == "alpha");
    CHECK(truncated[1].first == "beta");

    TopicSpec topic;
    topic.name = "x";
    topic.seed_hashtags = {"alpha"};
    const auto filtered = top_hashtags(tweets, 20, &topic);
    REQUIRE(filtered.size() == 2);
    CHECK(filtered[0].first == "beta");
    CHECK(filtered[1].first == "gamma");
}

TEST_CASE("ties at equal count sort alphabetically") {
    const auto user = make_user("1");
    std::vector<TweetRecord> tweets = {
        make_tweet("a", user, 1, InteractionKind::tweet, {"zeta", "eta"}),
        make_tweet("b", user, 2, InteractionKind::tweet, {"eta", "zeta"}),
    };
    const auto top = top_hashtags(tweets);
    REQUIRE(top.size() == 2);
    CHECK(top[0].first == "eta");
    CHECK(top[1].first == "zeta");
}

TEST_CASE("case report aggregates per-class activity") {
    const auto topic = covid_topic();
    const auto bigram = train_bigram_model({"alice", "bob", "carol"});
    const ValenceLexicon valence = {{"good", 1.5}, {"bad", -1.9}};
    const auto rules = default_sentiment_rules();
    const HashtagLexicon hashtag_lex = {
        {"stayhome", 1}, {"plandemic", -1}, {"covid19", 0}};

    std::vector<TweetRecord> tweets;
    std::int64_t stamp = 1600000000;
    const auto bot1 = make_user("b1", 0);
    const auto bot2 = make_user("b2", 0);
    for (int i = 0; i < 3; ++i)
        tweets.push_back(make_tweet("b1_" + std::to_string(i), bot1, stamp++,
                                    InteractionKind::tweet,
                                    {"covid19", "plandemic"}, "bad news"));
    for (int i = 0; i < 2; ++i)
        tweets.push_back(make_tweet("b2_" + std::to_string(i), bot2, stamp++,
                                    InteractionKind::retweet, {"covid19"},
                                    "plain text"));
    for (int h = 0; h < 3; ++h) {
        const auto user = make_user("h" + std::to_string(h), 1000);
        for (int i = 0; i < 2; ++i)
            tweets.push_back(make_tweet(user.id + "_" + std::to_string(i), user,
                                        stamp++, InteractionKind::tweet,
                                        {"covidpandemic", "stayhome"},
                                        "good vibes"));
    }

    const auto report =
        build_case_report(tweets, topic, follower_model(), &bigram, 0.5,
                          valence, rules, hashtag_lex);
    CHECK(report.topic.name == "covid");
    CHECK(report.threshold == 0.5);
    CHECK(report.account_count == 5);
    CHECK(report.tweet_count == 11);
    CHECK(report.bot_fraction_accounts == doctest::Approx(0.4));
    CHECK(report.bot_fraction_tweets == doctest::Approx(5.0 / 11.0));

    CHECK(report.bots.accounts == 2);
    CHECK(report.bots.tweets == 5);
    CHECK(report.humans.accounts == 3);
    CHECK(report.humans.tweets == 6);

    REQUIRE(report.bots.score_histogram.size() == kScoreHistogramBins);
    REQUIRE(report.humans.score_histogram.size() == kScoreHistogramBins);
    std::size_t bot_total = 0;
    for (auto n : report.bots.score_histogram) bot_total += n;
    CHECK(bot_total == report.bots.accounts);
    std::size_t human_total = 0;
    for (auto n : report.humans.score_histogram) human_total += n;
    CHECK(human_total == report.humans.accounts);

    // Bot tweets: three "bad news" (negative) and two "plain text"
    // (neutral); human tweets are all "good vibes" (positive).
    CHECK(report.bots.compound_proportions.at(Sentiment::negative) ==
          doctest::Approx(0.6));
    CHECK(report.bots.compound_proportions.at(Sentiment::neutral) ==
          doctest::Approx(0.4));
    CHECK(report.bots.compound_proportions.at(Sentiment::positive) == 0.0);
    CHECK(report.humans.compound_proportions.at(Sentiment::positive) == 1.0);

    CHECK(report.bots.hashtag_proportions.at(Sentiment::inconclusive) == 0.0);
    CHECK(report.bots.hashtag_proportions.at(Sentiment::negative) ==
          doctest::Approx(0.6));
    CHECK(report.bots.hashtag_proportions.at(Sentiment::neutral) ==
          doctest::Approx(0.4));
    CHECK(report.humans.hashtag_proportions.at(Sentiment::positive) == 1.0);

    for (const auto* breakdown : {&report.bots, &report.humans}) {
        double compound_sum = 0.0;
        for (const auto& [label, share] : breakdown->compound_proportions)
            compound_sum += share;
        CHECK(compound_sum == doctest::Approx(1.0));
        double hashtag_sum = 0.0;
        for (const auto& [label, share] : breakdown->hashtag_proportions)
            hashtag_sum += share;
        CHECK(hashtag_sum == doctest::Approx(1.0));
    }

    REQUIRE(!report.bots.hashtags.empty());
    CHECK(report.bots.hashtags[0].first == "covid19");
    CHECK(report.bots.hashtags[0].second == 5);
    CHECK(report.humans.hashtags[0] ==
          std::pair<std::string, std::size_t>{"covidpandemic", 6});

    SUBCASE("report serializes to parseable json") {
        const auto text = case_report_json(report);
        const auto parsed = nlohmann::json::parse(text);
        CHECK(parsed.at("topic").at("name") == "covid");
        CHECK(parsed.at("topic").at("match_mode") == "prefix");
        CHECK(parsed.at("account_count") == 5);
        CHECK(parsed.at("tweet_count") == 11);
        CHECK(parsed.at("bots").at("accounts") == 2);
        CHECK(parsed.at("bots").at("score_histogram").size() ==
              kScoreHistogramBins);
        CHECK(parsed.at("humans").at("compound_sentiment")
                  .at("positive") == 1.0);
        CHECK(text.back() == '\n');
    }

    SUBCASE("topic seeds can be dropped from the hashtag lists") {
        const auto trimmed =
            build_case_report(tweets, topic, follower_model(), &bigram, 0.5,
                              valence, rules, hashtag_lex, 20, true);
        for (const auto& [tag, count] : trimmed.humans.hashtags)
            CHECK(tag.rfind("covid", 0) != 0);
        REQUIRE(!trimmed.humans.hashtags.empty());
        CHECK(trimmed.humans.hashtags[0].first == "stayhome");
        CHECK(trimmed.bots.hashtags.size() == 1);
        CHECK(trimmed.bots.hashtags[0].first == "plandemic");
    }
}

TEST_CASE("case report on a single-class split leaves the other empty") {
    const auto topic = covid_topic();
    const ValenceLexicon valence = {{"good", 1.5}};
    const auto rules = default_sentiment_rules();
    const HashtagLexicon hashtag_lex;

    std::vector<TweetRecord> tweets;
    std::int64_t stamp = 1600000000;
    for (int i = 0; i < 4; ++i)
        tweets.push_back(make_tweet("a" + std::to_string(i), make_user("only"),
                                    stamp++, InteractionKind::tweet,
                                    {"covid19"}, "good"));

    const auto report = build_case_report(tweets, topic, volume_model(),
                                          nullptr, 0.5, valence, rules,
                                          hashtag_lex);
    CHECK(report.bots.accounts == 1);
    CHECK(report.humans.accounts == 0);
    CHECK(report.humans.tweets == 0);
    CHECK(report.humans.compound_proportions.empty());
    CHECK(report.humans.hashtag_proportions.empty());
    CHECK(report.humans.hashtags.empty());
    std::size_t human_total = 0;
    for (auto n : report.humans.score_histogram) human_total += n;
    CHECK(human_total == 0);
    const auto parsed = nlohmann::json::parse(case_report_json(report));
    CHECK(parsed.at("humans").at("accounts") == 0);
    CHECK(parsed.at("humans").at("compound_sentiment").is_object());
    CHECK(parsed.at("humans").at("compound_sentiment").empty());
    CHECK(parsed.at("humans").at("top_hashtags").is_array());
}

TEST_CASE("histogram bins scores in twentieths with the top edge closed") {
    const auto topic = covid_topic();
    const ValenceLexicon valence = {{"good", 1.5}};
    const auto rules = default_sentiment_rules();

    // Two accounts land in bin 10 (scores just above 1/2) and one in
    // bin 19 via a score pinned near 1.
    std::vector<TweetRecord> tweets;
    std::int64_t stamp = 1600000000;
    for (int i = 0; i < 3; ++i)
        tweets.push_back(make_tweet("p" + std::to_string(i), make_user("p"),
                                    stamp++, InteractionKind::tweet,
                                    {"covid19"}, "good"));
    for (int i = 0; i < 3; ++i)
        tweets.push_back(make_tweet("q" + std::to_string(i), make_user("q"),
                                    stamp++, InteractionKind::tweet,
                                    {"covid19"}, "good"));
    for (int i = 0; i < 30; ++i)
        tweets.push_back(make_tweet("r" + std::to_string(i), make_user("r"),
                                    stamp++, InteractionKind::tweet,
                                    {"covid19"}, "good"));

    const auto report = build_case_report(tweets, topic, volume_model(),
                                          nullptr, 0.5, valence, rules, {});
    CHECK(report.bots.accounts == 3);
    // sigmoid(0.5) = 0.622 -> bin 12; sigmoid(27.5) ~ 1 -> bin 19.
    CHECK(report.bots.score_histogram[12] == 2);
    CHECK(report.bots.score_histogram[19] == 1);
}

}
