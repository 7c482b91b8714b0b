#include "botdna/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "json.hpp"

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"
#include "botdna/time_utils.hpp"

namespace botdna {

using nlohmann::json;

namespace {

constexpr std::size_t kTimelineCap = 3200;

std::string ascii_lower(std::string s) {
    for (char& c : s)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

json parse_json_line(const std::string& line) {
    try {
        return json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

bool has_value(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it != obj.end() && !it->is_null();
}

const json& require(const json& obj, const char* key, const char* what) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        throw SchemaError(std::string(what) + " missing field '" + key + "'", key);
    return *it;
}

std::string id_of(const json& obj, const char* what) {
    if (has_value(obj, "id_str")) return obj["id_str"].get<std::string>();
    if (has_value(obj, "id")) {
        const json& id = obj["id"];
        if (id.is_string()) return id.get<std::string>();
        return std::to_string(id.get<std::int64_t>());
    }
    throw SchemaError(std::string(what) + " missing field 'id_str'", "id_str");
}

std::int64_t int_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return 0;
    return it->get<std::int64_t>();
}

bool bool_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return false;
    return it->get<bool>();
}

std::string string_field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return "";
    return it->get<std::string>();
}

UserObject user_from_json(const json& obj) {
    UserObject user;
    user.id = id_of(obj, "user object");
    user.screen_name = require(obj, "screen_name", "user object").get<std::string>();
    user.name = string_field(obj, "name");
    user.description = string_field(obj, "description");
    user.statuses_count = int_field(obj, "statuses_count");
    user.followers_count = int_field(obj, "followers_count");
    user.friends_count = int_field(obj, "friends_count");
    user.favourites_count = int_field(obj, "favourites_count");
    user.listed_count = int_field(obj, "listed_count");
    user.default_profile = bool_field(obj, "default_profile");
    user.verified = bool_field(obj, "verified");
    user.is_protected = bool_field(obj, "protected");
    user.created_at =
        parse_timestamp(require(obj, "created_at", "user object").get<std::string>());
    if (user.statuses_count < 0 || user.followers_count < 0 ||
        user.friends_count < 0 || user.favourites_count < 0 ||
        user.listed_count < 0)
        throw SchemaError("user object has a negative count", "statuses_count");
    return user;
}

}  // namespace

std::string_view to_string(InteractionKind kind) {
    switch (kind) {
        case InteractionKind::tweet: return "tweet";
        case InteractionKind::reply: return "reply";
        case InteractionKind::retweet: return "retweet";
    }
    return "tweet";
}

std::string_view to_string(Label label) {
    return label == Label::bot ? "bot" : "human";
}

Label label_from_string(std::string_view s) {
    if (s == "bot") return Label::bot;
    if (s == "human") return Label::human;
    throw SchemaError("unknown label '" + std::string(s) + "'", "label");
}

std::string_view to_string(DatasetRole role) {
    return role == DatasetRole::train ? "train" : "test";
}

DatasetRole role_from_string(std::string_view s) {
    if (s == "train") return DatasetRole::train;
    if (s == "test") return DatasetRole::test;
    throw SchemaError("unknown role '" + std::string(s) + "'", "role");
}

std::size_t LabeledDataset::bot_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(),
                      [](const LabeledEntry& e) { return e.label == Label::bot; }));
}

std::size_t LabeledDataset::human_count() const {
    return entries.size() - bot_count();
}

const LabeledDataset* Registry::find(std::string_view name) const {
    for (const auto& d : datasets)
        if (d.name == name) return &d;
    return nullptr;
}

const LabeledDataset& Registry::at(std::string_view name) const {
    const LabeledDataset* d = find(name);
    if (!d) throw Error("no dataset named '" + std::string(name) + "'");
    return *d;
}

UserObject parse_user_json(const std::string& line) {
    return user_from_json(parse_json_line(line));
}

TweetRecord parse_tweet_json(const std::string& line) {
    json obj = parse_json_line(line);
    TweetRecord tweet;
    tweet.id = id_of(obj, "tweet object");
    tweet.user = user_from_json(require(obj, "user", "tweet object"));
    tweet.created_at =
        parse_timestamp(require(obj, "created_at", "tweet object").get<std::string>());
    if (has_value(obj, "full_text"))
        tweet.text = obj["full_text"].get<std::string>();
    else if (has_value(obj, "text"))
        tweet.text = obj["text"].get<std::string>();
    else
        throw SchemaError("tweet object missing field 'text'", "text");
    if (has_value(obj, "retweeted_status"))
        tweet.kind = InteractionKind::retweet;
    else if (has_value(obj, "in_reply_to_status_id") ||
             has_value(obj, "in_reply_to_status_id_str"))
        tweet.kind = InteractionKind::reply;
    else
        tweet.kind = InteractionKind::tweet;
    if (has_value(obj, "entities")) {
        const json& entities = obj["entities"];
        if (has_value(entities, "hashtags"))
            for (const json& h : entities["hashtags"])
                if (has_value(h, "text"))
                    tweet.hashtags.push_back(ascii_lower(h["text"].get<std::string>()));
    }
    tweet.lang = string_field(obj, "lang");
    return tweet;
}

std::string to_json(const UserObject& user) {
    json obj;
    obj["id_str"] = user.id;
    obj["screen_name"] = user.screen_name;
    obj["name"] = user.name;
    obj["description"] = user.description;
    obj["statuses_count"] = user.statuses_count;
    obj["followers_count"] = user.followers_count;
    obj["friends_count"] = user.friends_count;
    obj["favourites_count"] = user.favourites_count;
    obj["listed_count"] = user.listed_count;
    obj["default_profile"] = user.default_profile;
    obj["verified"] = user.verified;
    obj["protected"] = user.is_protected;
    obj["created_at"] = format_iso8601(user.created_at);
    return obj.dump();
}

std::string to_json(const TweetRecord& tweet) {
    json obj;
    obj["id_str"] = tweet.id;
    obj["user"] = json::parse(to_json(tweet.user));
    obj["created_at"] = format_iso8601(tweet.created_at);
    obj["full_text"] = tweet.text;
    json tags = json::array();
    for (const std::string& h : tweet.hashtags) tags.push_back(json{{"text", h}});
    obj["entities"] = json{{"hashtags", tags}};
    if (!tweet.lang.empty()) obj["lang"] = tweet.lang;
    if (tweet.kind == InteractionKind::retweet)
        obj["retweeted_status"] = json::object();
    else if (tweet.kind == InteractionKind::reply)
        obj["in_reply_to_status_id"] = 1;
    return obj.dump();
}

Timeline build_timeline(std::vector<TweetRecord> records) {
    if (records.empty()) throw Error("no timeline");
    for (const TweetRecord& r : records)
        if (r.user.id != records.front().user.id)
            throw Error("timeline mixes accounts " + records.front().user.id +
                        " and " + r.user.id);
    std::stable_sort(records.begin(), records.end(),
                     [](const TweetRecord& a, const TweetRecord& b) {
                         return a.created_at < b.created_at;
                     });
    if (records.size() > kTimelineCap)
        records.erase(records.begin(),
                      records.end() - static_cast<std::ptrdiff_t>(kTimelineCap));
    Timeline tl;
    tl.account_id = records.front().user.id;
    tl.probe_time = records.back().created_at;
    tl.tweets = std::move(records);
    return tl;
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

LabeledDataset load_dataset(const json& entry, const std::filesystem::path& base) {
    LabeledDataset ds;
    ds.name = require(entry, "name", "manifest entry").get<std::string>();
    ds.role = role_from_string(
        require(entry, "role", "manifest entry").get<std::string>());
    if (has_value(entry, "collected_at"))
        ds.collected_at = parse_timestamp(entry["collected_at"].get<std::string>());

    auto users_path = resolve(
        base, require(entry, "users_path", "manifest entry").get<std::string>());
    std::unordered_map<std::string, UserObject> users;
    for_each_line(users_path, [&](const std::string& line) {
        if (line.empty()) return;
        UserObject u = parse_user_json(line);
        users[u.id] = std::move(u);
    });

    auto labels_path = resolve(
        base, require(entry, "labels_path", "manifest entry").get<std::string>());
    std::unordered_map<std::string, std::size_t> index;
    bool first = true;
    for_each_line(labels_path, [&](const std::string& line) {
        if (line.empty()) return;
        auto fields = split_csv_line(line);
        if (first) {
            first = false;
            if (fields.size() == 2 && fields[0] == "account_id" &&
                fields[1] == "label")
                return;
        }
        if (fields.size() != 2)
            throw SchemaError("labels row needs 'account_id,label': " + line,
                              "label");
        auto it = users.find(fields[0]);
        if (it == users.end())
            throw Error("dataset " + ds.name + " labels unknown account " +
                        fields[0]);
        LabeledEntry e;
        e.user = it->second;
        e.label = label_from_string(fields[1]);
        index[e.user.id] = ds.entries.size();
        ds.entries.push_back(std::move(e));
    });

    if (has_value(entry, "timelines_path")) {
        auto timelines_path =
            resolve(base, entry["timelines_path"].get<std::string>());
        std::unordered_map<std::string, std::vector<TweetRecord>> by_account;
        for_each_line(timelines_path, [&](const std::string& line) {
            if (line.empty()) return;
            TweetRecord t = parse_tweet_json(line);
            if (index.count(t.user.id))
                by_account[t.user.id].push_back(std::move(t));
        });
        for (auto& [account_id, records] : by_account)
            ds.entries[index[account_id]].timeline =
                build_timeline(std::move(records));
    }
    return ds;
}

}  // namespace

Registry load_registry(const std::filesystem::path& manifest_path) {
    json manifest = parse_json_line(read_file(manifest_path));
    const json* list = &manifest;
    if (manifest.is_object()) list = &require(manifest, "datasets", "manifest");
    if (!list->is_array())
        throw SchemaError("manifest must list datasets as an array", "datasets");

    Registry registry;
    auto base = manifest_path.parent_path();
    for (const json& entry : *list) {
        LabeledDataset ds = load_dataset(entry, base);
        if (registry.find(ds.name))
            throw Error("duplicate dataset name '" + ds.name + "'");
        registry.datasets.push_back(std::move(ds));
    }
    return registry;
}

}  // namespace botdna
