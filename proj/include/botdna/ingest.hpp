#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace botdna {

// Account metadata as found in the v1.1 user object.
struct UserObject {
    std::string id;
    std::string screen_name;
    std::string name;
    std::string description;
    std::int64_t statuses_count = 0;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t favourites_count = 0;
    std::int64_t listed_count = 0;
    bool default_profile = false;
    bool verified = false;
    std::int64_t created_at = 0;  // unix seconds, UTC
    bool is_protected = false;
};

enum class InteractionKind { tweet, reply, retweet };

std::string_view to_string(InteractionKind kind);

struct TweetRecord {
    std::string id;
    UserObject user;
    std::int64_t created_at = 0;  // unix seconds, UTC
    std::string text;
    std::vector<std::string> hashtags;  // lower-cased, no leading '#'
    InteractionKind kind = InteractionKind::tweet;
    std::string lang;
};

// An account's tweets, oldest first, capped at the 3200 most recent.
struct Timeline {
    std::string account_id;
    std::vector<TweetRecord> tweets;
    std::int64_t probe_time = 0;  // created_at of the newest retained tweet
};

enum class Label { bot, human };

std::string_view to_string(Label label);
Label label_from_string(std::string_view s);

struct LabeledEntry {
    UserObject user;
    Label label = Label::human;
    std::optional<Timeline> timeline;
};

enum class DatasetRole { train, test };

std::string_view to_string(DatasetRole role);
DatasetRole role_from_string(std::string_view s);

struct LabeledDataset {
    std::string name;
    DatasetRole role = DatasetRole::train;
    // Fallback probe time for accounts without an accessible timeline.
    // 0 when the manifest does not declare one.
    std::int64_t collected_at = 0;
    std::vector<LabeledEntry> entries;

    std::size_t bot_count() const;
    std::size_t human_count() const;
};

struct Registry {
    std::vector<LabeledDataset> datasets;

    const LabeledDataset* find(std::string_view name) const;
    const LabeledDataset& at(std::string_view name) const;
};

// Parses one JSON line in the v1.1 user-object shape.  Throws ParseError on
// malformed JSON and SchemaError when a mandatory field is missing.
UserObject parse_user_json(const std::string& line);

// Parses one JSON line in the v1.1 tweet-object shape.  kind precedence:
// retweet (retweeted_status present) > reply (in_reply_to_status_id present)
// > tweet.  full_text is preferred over text when both are present.
TweetRecord parse_tweet_json(const std::string& line);

// Serializers producing the same wire shape the parsers accept; parsing the
// output reproduces all retained fields.
std::string to_json(const UserObject& user);
std::string to_json(const TweetRecord& tweet);

// Sorts oldest first (stable on ties), keeps the 3200 most recent records,
// and anchors probe_time at the newest retained one.  Throws on empty input:
// accounts with no timeline cannot be fingerprinted.
Timeline build_timeline(std::vector<TweetRecord> records);

// Loads the dataset manifest, a JSON file of entries
// {name, role, users_path, labels_path, timelines_path?, collected_at?}.
// Relative paths are resolved against the manifest's directory.  Labels are
// CSV "account_id,label" with label in {bot, human}.  Files ending in .gz
// are decompressed on the fly.
Registry load_registry(const std::filesystem::path& manifest_path);

}  // namespace botdna
