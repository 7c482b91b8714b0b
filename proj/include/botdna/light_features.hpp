#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "botdna/bigram.hpp"
#include "botdna/ingest.hpp"

namespace botdna {

// Smallest admissible account age: one second, expressed in hours.  Absorbs
// probe_time == created_at and clock skew.
inline constexpr double kMinUserAgeHours = 1.0 / 3600.0;

inline constexpr std::size_t kLightFeatureCount = 19;

// The 19 metadata features, in the fixed vector order returned by vector():
// 7 raw counts and flags first, then the 12 derived values.
struct LightFeatures {
    double statuses_count = 0;
    double followers_count = 0;
    double friends_count = 0;
    double favourites_count = 0;
    double listed_count = 0;
    double default_profile = 0;
    double verified = 0;
    double screen_name_length = 0;
    double num_digits_in_screen_name = 0;
    double name_length = 0;
    double num_digits_in_name = 0;
    double description_length = 0;
    double friend_growth_rate = 0;
    double listed_growth_rate = 0;
    double favourites_growth_rate = 0;
    double tweet_freq = 0;
    double followers_growth_rate = 0;
    double followers_friend_ratio = 0;
    double screen_name_likelihood = 0;

    // Carried for audit, not part of the feature vector.
    double user_age_hours = 0;

    std::array<double, kLightFeatureCount> vector() const;
};

const std::array<std::string_view, kLightFeatureCount>& light_feature_names();

// Hours between account creation and probe time (the newest accessible
// tweet, or the dataset collection time when no timeline exists), clamped
// below at kMinUserAgeHours.
double compute_user_age(const UserObject& user, std::int64_t probe_time);

LightFeatures extract_light(const UserObject& user, std::int64_t probe_time,
                            const BigramModel& model);

}  // namespace botdna
