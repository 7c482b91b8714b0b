#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace botdna {

enum class Sentiment { positive, neutral, negative, inconclusive };

std::string_view to_string(Sentiment sentiment);

// token -> mean valence, keys lowercase
using ValenceLexicon = std::map<std::string, double>;

// Tab-separated lines "token<TAB>valence"; extra columns are ignored.
ValenceLexicon load_valence_lexicon(const std::filesystem::path& path);

struct SentimentRules {
    bool negation_enabled = true;
    double negation_factor = 0.74;
    int context_window = 3;  // tokens looked back for negation and boosters
    bool booster_enabled = true;
    double booster_increment = 0.293;
    bool allcaps_enabled = true;
    double allcaps_increment = 0.733;
    bool punctuation_enabled = true;
    double exclaim_increment = 0.292;
    int max_exclaims = 3;
    double normalize_alpha = 15.0;
    std::set<std::string> negations;
    std::set<std::string> boosters;
    std::set<std::string> dampeners;
};

SentimentRules default_sentiment_rules();

// JSON object overriding any subset of the default rules.
SentimentRules load_sentiment_rules(const std::filesystem::path& path);

// In order: collapse whitespace, drop URL tokens, drop @mentions, drop a
// leading RT marker, remove HTML entities and tags, remove '#' keeping
// the word, drop non-ASCII bytes, and collapse again.
std::string clean_text(const std::string& text);

// Sum of per-token valences after the rule adjustments, normalized to
// [-1, 1] by s / sqrt(s^2 + alpha).
double compound_score(const std::string& cleaned,
                      const ValenceLexicon& lexicon,
                      const SentimentRules& rules);

// positive iff c >= 0.05, negative iff c <= -0.05, else neutral.
Sentiment sentiment_from_compound(double compound);

// hashtag (lowercase, no '#') -> valence in {-1, 0, +1}
using HashtagLexicon = std::map<std::string, int>;

// CSV lines "hashtag,valence" with an optional header row.
HashtagLexicon load_hashtag_lexicon(const std::filesystem::path& path);

// positive with no negative -> positive; the mirror -> negative; both
// -> inconclusive; otherwise neutral.  Unlisted hashtags count as 0.
Sentiment hashtag_sentiment(const std::vector<std::string>& hashtags,
                            const HashtagLexicon& lexicon);

}  // namespace botdna
