#include "botdna/light_features.hpp"

#include <algorithm>

namespace botdna {

namespace {

// Code points, not bytes, so multibyte names measure like the platform does.
double utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return static_cast<double>(n);
}

double ascii_digit_count(std::string_view s) {
    return static_cast<double>(
        std::count_if(s.begin(), s.end(),
                      [](unsigned char c) { return c >= '0' && c <= '9'; }));
}

}  // namespace

std::array<double, kLightFeatureCount> LightFeatures::vector() const {
    return {statuses_count,
            followers_count,
            friends_count,
            favourites_count,
            listed_count,
            default_profile,
            verified,
            screen_name_length,
            num_digits_in_screen_name,
            name_length,
            num_digits_in_name,
            description_length,
            friend_growth_rate,
            listed_growth_rate,
            favourites_growth_rate,
            tweet_freq,
            followers_growth_rate,
            followers_friend_ratio,
            screen_name_likelihood};
}

const std::array<std::string_view, kLightFeatureCount>& light_feature_names() {
    static const std::array<std::string_view, kLightFeatureCount> names = {
        "statuses_count",
        "followers_count",
        "friends_count",
        "favourites_count",
        "listed_count",
        "default_profile",
        "verified",
        "screen_name_length",
        "num_digits_in_screen_name",
        "name_length",
        "num_digits_in_name",
        "description_length",
        "friend_growth_rate",
        "listed_growth_rate",
        "favourites_growth_rate",
        "tweet_freq",
        "followers_growth_rate",
        "followers_friend_ratio",
        "screen_name_likelihood"};
    return names;
}

double compute_user_age(const UserObject& user, std::int64_t probe_time) {
    double hours =
        static_cast<double>(probe_time - user.created_at) / 3600.0;
    return std::max(hours, kMinUserAgeHours);
}

LightFeatures extract_light(const UserObject& user, std::int64_t probe_time,
                            const BigramModel& model) {
    LightFeatures f;
    f.statuses_count = static_cast<double>(user.statuses_count);
    f.followers_count = static_cast<double>(user.followers_count);
    f.friends_count = static_cast<double>(user.friends_count);
    f.favourites_count = static_cast<double>(user.favourites_count);
    f.listed_count = static_cast<double>(user.listed_count);
    f.default_profile = user.default_profile ? 1.0 : 0.0;
    f.verified = user.verified ? 1.0 : 0.0;
    f.screen_name_length = utf8_length(user.screen_name);
    f.num_digits_in_screen_name = ascii_digit_count(user.screen_name);
    f.name_length = utf8_length(user.name);
    f.num_digits_in_name = ascii_digit_count(user.name);
    f.description_length = utf8_length(user.description);
    f.user_age_hours = compute_user_age(user, probe_time);
    f.friend_growth_rate = f.friends_count / f.user_age_hours;
    f.listed_growth_rate = f.listed_count / f.user_age_hours;
    f.favourites_growth_rate = f.favourites_count / f.user_age_hours;
    f.tweet_freq = f.statuses_count / f.user_age_hours;
    f.followers_growth_rate = f.followers_count / f.user_age_hours;
    f.followers_friend_ratio =
        f.followers_count / std::max(1.0, f.friends_count);
    f.screen_name_likelihood = model.likelihood(user.screen_name);
    return f;
}

}  // namespace botdna
