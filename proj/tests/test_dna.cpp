#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "botdna/dna.hpp"
#include "botdna/errors.hpp"
#include "botdna/rng.hpp"
#include "test_support.hpp"

using namespace botdna;
using botdna::testing::fixture_dir;

namespace {

Timeline timeline_of(const std::vector<InteractionKind>& kinds) {
    Timeline tl;
    tl.account_id = "acct";
    std::int64_t t = 1000;
    for (InteractionKind k : kinds) {
        TweetRecord r;
        r.id = std::to_string(t);
        r.user.id = "acct";
        r.created_at = t++;
        r.kind = k;
        tl.tweets.push_back(std::move(r));
    }
    if (!tl.tweets.empty()) tl.probe_time = tl.tweets.back().created_at;
    return tl;
}

// Fixed multiplicative generator mirrored by the golden-value oracle; the
// compressed size of its output is frozen below.
std::string seeded_sequence(std::size_t n) {
    std::uint64_t x = 0x9E3779B97F4A7C15ull;
    const char bases[] = {'A', 'C', 'T'};
    std::string s;
    s.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        x = x * 6364136223846793005ull + 1442695040888963407ull;
        s.push_back(bases[(x >> 33) % 3]);
    }
    return s;
}

}  // namespace

TEST_SUITE("dna") {

TEST_CASE("timelines encode one base per tweet, oldest first") {
    using K = InteractionKind;
    auto dna = encode_timeline(
        timeline_of({K::retweet, K::tweet, K::tweet, K::retweet}));
    CHECK(dna.sequence == "TAAT");
    CHECK(dna.account_id == "acct");
    CHECK(encode_timeline(timeline_of({K::reply})).sequence == "C");
    CHECK(encode_kinds({K::tweet, K::reply, K::retweet}) == "ACT");
}

TEST_CASE("empty timelines cannot be encoded") {
    CHECK_THROWS_AS(encode_timeline(timeline_of({})), Error);
}

TEST_CASE("encoded length always equals timeline length") {
    Rng rng(31);
    using K = InteractionKind;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<K> kinds;
        std::size_t n = 1 + rng.below(200);
        for (std::size_t i = 0; i < n; ++i)
            kinds.push_back(static_cast<K>(rng.below(3)));
        CHECK(encode_timeline(timeline_of(kinds)).sequence.size() == n);
    }
}

TEST_CASE("alphabets with repeated bases are rejected") {
    Alphabet bad;
    bad.reply = 'A';
    CHECK_THROWS_AS(encode_kinds({InteractionKind::tweet}, bad), Error);
    Alphabet custom{'X', 'Y', 'Z'};
    CHECK(encode_kinds({InteractionKind::retweet}, custom) == "Z");
}

TEST_CASE("deflate sizes match the frozen oracle values") {
    CHECK(deflate_size(std::string(3200, 'A')) == 21);
    std::string at;
    for (int i = 0; i < 1600; ++i) at += "AT";
    CHECK(deflate_size(at) == 23);
    CHECK(deflate_size("TAAT") == 6);
    CHECK(deflate_size("A") == 3);
    auto random_seq = seeded_sequence(3200);
    CHECK(random_seq.substr(0, 16) == "CCCCCTACTCTATTCC");
    CHECK(deflate_size(random_seq) == 865);
}

TEST_CASE("constant sequences compress far better than random ones") {
    DnaSequence constant{"c", std::string(3200, 'A')};
    DnaSequence random{"r", seeded_sequence(3200)};
    auto cs = compress_stats(constant);
    auto rs = compress_stats(random);
    CHECK(cs.ratio > 50.0);
    CHECK(rs.ratio < cs.ratio);
}

TEST_CASE("compression statistics satisfy their defining identity") {
    DnaSequence dna{"x", "TAAT"};
    auto stats = compress_stats(dna);
    CHECK(stats.original_size == 4);
    CHECK(stats.compressed_size == 6);
    CHECK(std::abs(stats.ratio * static_cast<double>(stats.compressed_size) -
                   static_cast<double>(stats.original_size)) < 1e-12);
    CHECK_THROWS_AS(compress_stats(DnaSequence{"e", ""}), Error);
}

TEST_CASE("compressed size is deterministic across calls") {
    DnaSequence dna{"x", seeded_sequence(777)};
    CHECK(compress_stats(dna).compressed_size ==
          compress_stats(dna).compressed_size);
}

TEST_CASE("no random sequence beats the constant one") {
    std::string constant(1000, 'T');
    std::size_t constant_size = deflate_size(constant);
    Rng rng(1234);
    const char bases[] = {'A', 'C', 'T'};
    for (int trial = 0; trial < 100; ++trial) {
        std::string s;
        s.reserve(1000);
        for (int i = 0; i < 1000; ++i) s.push_back(bases[rng.below(3)]);
        CHECK(constant_size <= deflate_size(s));
    }
}

TEST_CASE("constant sequences of 64 or more bases have ratio above one") {
    for (std::size_t n : {64u, 100u, 500u}) {
        auto stats = compress_stats(DnaSequence{"c", std::string(n, 'C')});
        CHECK(stats.ratio > 1.0);
    }
}

TEST_CASE("feature sets project the statistics as documented") {
    CompressionStats stats{3200, 40, 80.0};
    CHECK(dna_feature_vector(stats, FeatureSet::A) ==
          std::vector<double>{3200.0, 40.0});
    CHECK(dna_feature_vector(stats, FeatureSet::B) ==
          std::vector<double>{3200.0, 80.0});
    CHECK(dna_feature_vector(stats, FeatureSet::C) ==
          std::vector<double>{40.0, 80.0});
    CHECK(dna_feature_vector(stats, FeatureSet::D) ==
          std::vector<double>{3200.0, 40.0, 80.0});
    CHECK_THROWS_AS(dna_feature_vector(stats, FeatureSet::light), Error);
}

TEST_CASE("feature set names round-trip") {
    for (auto set : {FeatureSet::A, FeatureSet::B, FeatureSet::C, FeatureSet::D,
                     FeatureSet::light}) {
        CHECK(feature_set_from_string(to_string(set)) == set);
    }
    CHECK_THROWS_AS(feature_set_from_string("E"), Error);
}

TEST_CASE("compression csv round-trips") {
    auto dir = fixture_dir("dna_csv");
    std::vector<AccountCompression> rows = {
        {"7", Label::bot, {3200, 21, 3200.0 / 21.0}},
        {"8", Label::human, {150, 40, 150.0 / 40.0}},
    };
    write_compression_csv(rows, dir / "comp.csv");
    auto loaded = read_compression_csv(dir / "comp.csv");
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[0].account_id == "7");
    CHECK(loaded[0].label == Label::bot);
    CHECK(loaded[0].stats.original_size == 3200);
    CHECK(loaded[0].stats.compressed_size == 21);
    CHECK(loaded[0].stats.ratio == rows[0].stats.ratio);
    CHECK(loaded[1].label == Label::human);
}

}
