#include "botdna/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "json.hpp"

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"

namespace botdna {

std::string_view to_string(Sentiment sentiment) {
    switch (sentiment) {
        case Sentiment::positive: return "positive";
        case Sentiment::neutral: return "neutral";
        case Sentiment::negative: return "negative";
        case Sentiment::inconclusive: return "inconclusive";
    }
    throw Error("bad sentiment value");
}

ValenceLexicon load_valence_lexicon(const std::filesystem::path& path) {
    ValenceLexicon lexicon;
    for_each_line(path, [&](const std::string& line) {
        if (line.empty()) return;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw SchemaError("valence lexicon line needs token<TAB>value",
                              "token");
        std::string token = line.substr(0, tab);
        std::size_t end = line.find('\t', tab + 1);
        std::string value_field =
            line.substr(tab + 1, end == std::string::npos ? std::string::npos
                                                          : end - tab - 1);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(
            value_field.data(), value_field.data() + value_field.size(),
            value);
        if (ec != std::errc{} ||
            ptr != value_field.data() + value_field.size())
            throw SchemaError("bad valence '" + value_field + "'",
                              "valence");
        for (char& c : token)
            c = static_cast<char>(
                std::tolower(static_cast<unsigned char>(c)));
        lexicon[token] = value;
    });
    if (lexicon.empty()) throw Error("empty valence lexicon");
    return lexicon;
}

SentimentRules default_sentiment_rules() {
    SentimentRules rules;
    rules.negations = {"not",     "no",       "never",    "neither",
                       "nor",     "cannot",   "cant",     "dont",
                       "wont",    "isnt",     "wasnt",    "arent",
                       "doesnt",  "didnt",    "couldnt",  "shouldnt",
                       "wouldnt", "aint",     "without",  "can't",
                       "don't",   "won't",    "isn't",    "wasn't",
                       "aren't",  "doesn't",  "didn't",   "couldn't",
                       "shouldn't", "wouldn't", "ain't"};
    rules.boosters = {"very",       "extremely", "really",  "absolutely",
                      "completely", "incredibly", "totally", "utterly",
                      "hugely",     "remarkably", "so",      "especially"};
    rules.dampeners = {"slightly", "somewhat",   "barely", "hardly",
                       "kinda",    "marginally", "partly", "scarcely",
                       "sorta",    "almost"};
    return rules;
}

SentimentRules load_sentiment_rules(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
    if (!doc.is_object())
        throw SchemaError("sentiment rules must be a JSON object", "");

    SentimentRules rules = default_sentiment_rules();
    auto tokens = [](const nlohmann::json& value, const char* field) {
        if (!value.is_array())
            throw SchemaError("expected an array of strings", field);
        std::set<std::string> out;
        for (const auto& item : value) {
            if (!item.is_string())
                throw SchemaError("expected an array of strings", field);
            out.insert(item.get<std::string>());
        }
        return out;
    };
    for (const auto& [key, value] : doc.items()) {
        if (key == "negation_enabled")
            rules.negation_enabled = value.get<bool>();
        else if (key == "negation_factor")
            rules.negation_factor = value.get<double>();
        else if (key == "context_window")
            rules.context_window = value.get<int>();
        else if (key == "booster_enabled")
            rules.booster_enabled = value.get<bool>();
        else if (key == "booster_increment")
            rules.booster_increment = value.get<double>();
        else if (key == "allcaps_enabled")
            rules.allcaps_enabled = value.get<bool>();
        else if (key == "allcaps_increment")
            rules.allcaps_increment = value.get<double>();
        else if (key == "punctuation_enabled")
            rules.punctuation_enabled = value.get<bool>();
        else if (key == "exclaim_increment")
            rules.exclaim_increment = value.get<double>();
        else if (key == "max_exclaims")
            rules.max_exclaims = value.get<int>();
        else if (key == "normalize_alpha")
            rules.normalize_alpha = value.get<double>();
        else if (key == "negations")
            rules.negations = tokens(value, "negations");
        else if (key == "boosters")
            rules.boosters = tokens(value, "boosters");
        else if (key == "dampeners")
            rules.dampeners = tokens(value, "dampeners");
        else
            throw SchemaError("unknown sentiment rule", key);
    }
    return rules;
}

namespace {

bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
}

std::string collapse_whitespace(const std::string& s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (is_space_byte(c)) {
            pending = true;
            continue;
        }
        if (pending && !out.empty()) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : s) {
        if (c == ' ') {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool is_url_token(const std::string& token) {
    return token.rfind("http://", 0) == 0 ||
           token.rfind("https://", 0) == 0 || token.rfind("www.", 0) == 0;
}

std::string strip_entities_and_tags(const std::string& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] == '<') {
            std::size_t close = s.find('>', i + 1);
            if (close != std::string::npos) {
                i = close + 1;
                continue;
            }
        }
        if (s[i] == '&') {
            std::size_t j = i + 1;
            if (j < s.size() && s[j] == '#') ++j;
            std::size_t start = j;
            while (j < s.size() &&
                   std::isalnum(static_cast<unsigned char>(s[j])))
                ++j;
            if (j > start && j < s.size() && s[j] == ';') {
                i = j + 1;
                continue;
            }
        }
        out += s[i];
        ++i;
    }
    return out;
}

}  // namespace

std::string clean_text(const std::string& text) {
    std::vector<std::string> tokens =
        split_tokens(collapse_whitespace(text));

    std::vector<std::string> kept;
    for (const std::string& token : tokens) {
        if (is_url_token(token)) continue;
        if (!token.empty() && token[0] == '@') continue;
        kept.push_back(token);
    }
    if (!kept.empty() && kept.front() == "RT")
        kept.erase(kept.begin());

    std::string joined;
    for (const std::string& token : kept) {
        if (!joined.empty()) joined += ' ';
        joined += token;
    }

    joined = strip_entities_and_tags(joined);
    std::string ascii;
    for (char c : joined) {
        if (c == '#') continue;
        if (static_cast<unsigned char>(c) >= 0x80) continue;
        ascii += c;
    }
    return collapse_whitespace(ascii);
}

namespace {

std::string core_word(const std::string& token) {
    std::size_t begin = 0;
    std::size_t end = token.size();
    auto is_word_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '\'';
    };
    while (begin < end && !is_word_char(token[begin])) ++begin;
    while (end > begin && !is_word_char(token[end - 1])) --end;
    std::string word = token.substr(begin, end - begin);
    for (char& c : word)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return word;
}

bool is_all_caps(const std::string& token) {
    bool has_upper = false;
    for (char c : token) {
        unsigned char u = static_cast<unsigned char>(c);
        if (std::islower(u)) return false;
        if (std::isupper(u)) has_upper = true;
    }
    return has_upper;
}

bool has_letter(const std::string& token) {
    for (char c : token)
        if (std::isalpha(static_cast<unsigned char>(c))) return true;
    return false;
}

double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double compound_score(const std::string& cleaned,
                      const ValenceLexicon& lexicon,
                      const SentimentRules& rules) {
    if (lexicon.empty()) throw Error("empty valence lexicon");

    std::vector<std::string> tokens = split_tokens(cleaned);
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const std::string& token : tokens) words.push_back(core_word(token));

    std::size_t letter_tokens = 0;
    std::size_t caps_tokens = 0;
    for (const std::string& token : tokens) {
        if (!has_letter(token)) continue;
        ++letter_tokens;
        if (is_all_caps(token)) ++caps_tokens;
    }
    bool mixed_case = caps_tokens > 0 && caps_tokens < letter_tokens;

    double sum = 0.0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto it = lexicon.find(words[i]);
        if (it == lexicon.end()) continue;
        double v = it->second;

        if (rules.allcaps_enabled && mixed_case && is_all_caps(tokens[i]))
            v += sign_of(v) * rules.allcaps_increment;

        if (rules.booster_enabled) {
            for (int back = 1; back <= rules.context_window; ++back) {
                if (static_cast<std::size_t>(back) > i) break;
                const std::string& prev = words[i - back];
                if (rules.boosters.count(prev))
                    v += sign_of(v) * rules.booster_increment;
                else if (rules.dampeners.count(prev))
                    v -= sign_of(v) * rules.booster_increment;
            }
        }

        if (rules.negation_enabled) {
            for (int back = 1; back <= rules.context_window; ++back) {
                if (static_cast<std::size_t>(back) > i) break;
                if (rules.negations.count(words[i - back])) {
                    v *= -rules.negation_factor;
                    break;
                }
            }
        }
        sum += v;
    }

    if (rules.punctuation_enabled && sum != 0.0) {
        long exclaims = std::count(cleaned.begin(), cleaned.end(), '!');
        exclaims = std::min<long>(exclaims, rules.max_exclaims);
        double bump =
            static_cast<double>(exclaims) * rules.exclaim_increment;
        sum += sum > 0.0 ? bump : -bump;
    }

    double compound =
        sum / std::sqrt(sum * sum + rules.normalize_alpha);
    return std::clamp(compound, -1.0, 1.0);
}

Sentiment sentiment_from_compound(double compound) {
    if (compound >= 0.05) return Sentiment::positive;
    if (compound <= -0.05) return Sentiment::negative;
    return Sentiment::neutral;
}

HashtagLexicon load_hashtag_lexicon(const std::filesystem::path& path) {
    HashtagLexicon lexicon;
    bool first = true;
    for_each_line(path, [&](const std::string& line) {
        if (line.empty()) return;
        bool header = first && line == "hashtag,valence";
        first = false;
        if (header) return;
        auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw SchemaError("hashtag lexicon line needs hashtag,valence",
                              "hashtag");
        const std::string& tag = fields[0];
        if (tag.empty()) throw SchemaError("empty hashtag", "hashtag");
        for (char c : tag)
            if (c == '#' || std::isupper(static_cast<unsigned char>(c)))
                throw SchemaError("hashtag must be lowercase without '#'",
                                  "hashtag");
        int value = 0;
        auto [ptr, ec] = std::from_chars(
            fields[1].data(), fields[1].data() + fields[1].size(), value);
        if (ec != std::errc{} ||
            ptr != fields[1].data() + fields[1].size() ||
            (value != -1 && value != 0 && value != 1))
            throw SchemaError("valence must be -1, 0, or 1", "valence");
        lexicon[tag] = value;
    });
    return lexicon;
}

Sentiment hashtag_sentiment(const std::vector<std::string>& hashtags,
                            const HashtagLexicon& lexicon) {
    bool positive = false;
    bool negative = false;
    for (const std::string& tag : hashtags) {
        auto it = lexicon.find(tag);
        if (it == lexicon.end()) continue;
        if (it->second > 0) positive = true;
        if (it->second < 0) negative = true;
    }
    if (positive && negative) return Sentiment::inconclusive;
    if (positive) return Sentiment::positive;
    if (negative) return Sentiment::negative;
    return Sentiment::neutral;
}

}  // namespace botdna
