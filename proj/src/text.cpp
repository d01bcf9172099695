#include "kgiqa/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace kgiqa::text {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) != 0 || c == '\''; }

// ---------------------------------------------------------------------------
// Stopword snapshot. "together" is listed (dropped as adverb), "like" is not
// (it is a legitimate query keyword).
// ---------------------------------------------------------------------------
const std::unordered_set<std::string_view>& stopword_set() {
    static const std::unordered_set<std::string_view> words = {
        "a",       "about",   "above",    "after",   "again",     "against", "all",
        "am",      "an",      "and",      "any",     "are",       "aren't",  "as",
        "at",      "be",      "because",  "been",    "before",    "being",   "below",
        "between", "both",    "but",      "by",      "can",       "cannot",  "can't",
        "could",   "couldn't","did",      "didn't",  "do",        "does",    "doesn't",
        "doing",   "don't",   "down",     "during",  "each",      "else",    "ever",
        "few",     "for",     "from",     "further", "had",       "hadn't",  "has",
        "hasn't",  "have",    "haven't",  "having",  "he",        "he'd",    "he'll",
        "her",     "here",    "hers",     "herself", "he's",      "him",     "himself",
        "his",     "how",     "i",        "i'd",     "if",        "i'll",    "i'm",
        "in",      "into",    "is",       "isn't",   "it",        "its",     "it's",
        "itself",  "i've",    "just",     "let's",   "me",        "more",    "most",
        "mustn't", "my",      "myself",   "no",      "nor",       "not",     "now",
        "of",      "off",     "on",       "once",    "only",      "or",      "other",
        "ought",   "our",     "ours",     "ourselves", "out",     "over",    "own",
        "same",    "shan't",  "she",      "she'd",   "she'll",    "she's",   "should",
        "shouldn't","so",     "some",     "such",    "than",      "that",    "that's",
        "the",     "their",   "theirs",   "them",    "themselves","then",    "there",
        "there's", "these",   "they",     "they'd",  "they'll",   "they're", "they've",
        "this",    "those",   "through",  "to",      "together",  "too",     "under",
        "until",   "up",      "upon",     "us",      "very",      "was",     "wasn't",
        "we",      "we'd",    "we'll",    "were",    "we're",     "weren't", "we've",
        "what",    "what's",  "when",     "when's",  "where",     "where's", "whether",
        "which",   "while",   "who",      "whom",    "who's",     "why",     "why's",
        "will",    "with",    "within",   "without", "won't",     "would",   "wouldn't",
        "yet",     "you",     "you'd",    "you'll",  "your",      "you're",  "yours",
        "yourself","yourselves", "you've",
    };
    return words;
}

// ---------------------------------------------------------------------------
// Lemmatizer exception table: irregular verbs and plurals, plus frequent
// silent-e forms that plain suffix stripping would mangle.
// ---------------------------------------------------------------------------
const std::unordered_map<std::string_view, std::string_view>& lemma_exceptions() {
    static const std::unordered_map<std::string_view, std::string_view> table = {
        // irregular verbs
        {"was", "be"},       {"were", "be"},      {"been", "be"},      {"is", "be"},
        {"are", "be"},       {"am", "be"},        {"has", "have"},     {"had", "have"},
        {"did", "do"},       {"done", "do"},      {"said", "say"},     {"made", "make"},
        {"went", "go"},      {"gone", "go"},      {"goes", "go"},      {"got", "get"},
        {"gotten", "get"},   {"took", "take"},    {"taken", "take"},   {"came", "come"},
        {"saw", "see"},      {"seen", "see"},     {"knew", "know"},    {"known", "know"},
        {"thought", "think"},{"felt", "feel"},    {"found", "find"},   {"gave", "give"},
        {"given", "give"},   {"told", "tell"},    {"became", "become"},{"left", "leave"},
        {"kept", "keep"},    {"began", "begin"},  {"begun", "begin"},  {"brought", "bring"},
        {"bought", "buy"},   {"met", "meet"},     {"ran", "run"},      {"paid", "pay"},
        {"sat", "sit"},      {"stood", "stand"},  {"lost", "lose"},    {"held", "hold"},
        {"heard", "hear"},   {"meant", "mean"},   {"sent", "send"},    {"built", "build"},
        {"spent", "spend"},  {"spoke", "speak"},  {"spoken", "speak"}, {"wrote", "write"},
        {"written", "write"},{"ate", "eat"},      {"eaten", "eat"},    {"drank", "drink"},
        {"drunk", "drink"},  {"drove", "drive"},  {"driven", "drive"}, {"fell", "fall"},
        {"fallen", "fall"},  {"grew", "grow"},    {"grown", "grow"},   {"threw", "throw"},
        {"thrown", "throw"}, {"wore", "wear"},    {"worn", "wear"},    {"woke", "wake"},
        {"chose", "choose"}, {"chosen", "choose"},
        // irregular plurals
        {"men", "man"},      {"women", "woman"},  {"children", "child"},
        {"people", "person"},{"feet", "foot"},    {"teeth", "tooth"},  {"mice", "mouse"},
        {"geese", "goose"},  {"lives", "life"},   {"wives", "wife"},   {"knives", "knife"},
        {"leaves", "leaf"},  {"loaves", "loaf"},  {"shelves", "shelf"},{"selves", "self"},
        // silent-e forms that suffix stripping would break
        {"used", "use"},     {"using", "use"},    {"liked", "like"},   {"liking", "like"},
        {"loved", "love"},   {"loving", "love"},  {"moved", "move"},   {"moving", "move"},
        {"lived", "live"},   {"living", "live"},  {"named", "name"},   {"naming", "name"},
        {"caused", "cause"}, {"causing", "cause"},{"changed", "change"},{"changing", "change"},
        {"closed", "close"}, {"closing", "close"},{"decided", "decide"},{"deciding", "decide"},
        {"served", "serve"}, {"serving", "serve"},{"saved", "save"},   {"saving", "save"},
        {"smiled", "smile"}, {"smiling", "smile"},{"making", "make"},  {"coming", "come"},
        {"giving", "give"},  {"taking", "take"},  {"having", "have"},  {"writing", "write"},
        {"driving", "drive"},{"hoping", "hope"},  {"hoped", "hope"},   {"invited", "invite"},
        {"inviting", "invite"}, {"arrived", "arrive"}, {"arriving", "arrive"},
        {"prepared", "prepare"}, {"preparing", "prepare"}, {"shared", "share"},
        {"sharing", "share"}, {"noticed", "notice"}, {"noticing", "notice"},
        // nouns whose surface ends in a stripping suffix
        {"series", "series"},{"species", "species"}, {"news", "news"},
        {"movies", "movie"}, {"shoes", "shoe"},   {"clothes", "clothes"},
        {"cooking", "cooking"}, {"evening", "evening"}, {"morning", "morning"},
        {"wedding", "wedding"}, {"building", "building"}, {"feeling", "feeling"},
        {"meeting", "meeting"}, {"something", "something"}, {"anything", "anything"},
        {"nothing", "nothing"}, {"everything", "everything"},
    };
    return table;
}

bool has_vowel(std::string_view s) {
    return s.find_first_of("aeiouy") != std::string_view::npos;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// Doubled final consonants undone after -ing/-ed stripping (ll/ss/ff kept).
bool undo_double(std::string_view stem) {
    if (stem.size() < 3) return false;
    const char c = stem.back();
    if (stem[stem.size() - 2] != c) return false;
    return c == 'b' || c == 'd' || c == 'g' || c == 'm' || c == 'n' || c == 'p' ||
           c == 'r' || c == 't';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (is_word_char(c)) {
            std::size_t j = i + 1;
            while (j < n && is_word_char(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({std::string(text.substr(i, j - i)), i, j, true});
            i = j;
        } else {
            out.push_back({std::string(text.substr(i, 1)), i, i + 1, false});
            ++i;
        }
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_stopword(std::string_view lower_word) {
    return stopword_set().count(lower_word) != 0;
}

CoarseTag heuristic_tag(std::string_view word) {
    if (is_stopword(word)) return CoarseTag::Other;
    if (ends_with(word, "ous") || ends_with(word, "ful") || ends_with(word, "ive"))
        return CoarseTag::Adj;
    if (ends_with(word, "ing") || ends_with(word, "ed") || ends_with(word, "s"))
        return CoarseTag::Verb;
    return CoarseTag::Noun;
}

std::string lemma(std::string_view word) {
    const auto& exc = lemma_exceptions();
    if (auto it = exc.find(word); it != exc.end()) return std::string(it->second);

    std::string w(word);
    const std::size_t n = w.size();

    // plural-ish endings
    if (n > 4 && ends_with(w, "sses")) return w.substr(0, n - 2);
    if (n > 4 && ends_with(w, "shes")) return w.substr(0, n - 2);
    if (n > 4 && ends_with(w, "ches")) return w.substr(0, n - 2);
    if (n > 3 && ends_with(w, "xes")) return w.substr(0, n - 2);
    if (n > 4 && ends_with(w, "ies")) return w.substr(0, n - 3) + "y";
    if (n > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us") &&
        !ends_with(w, "is")) {
        return w.substr(0, n - 1);
    }

    // -ing
    if (n > 4 && ends_with(w, "ing")) {
        std::string stem = w.substr(0, n - 3);
        if (stem.size() >= 3 && has_vowel(stem)) {
            if (undo_double(stem)) stem.pop_back();
            return stem;
        }
        return w;
    }

    // -ed ("eed" words like agreed keep their stem-final e)
    if (n >= 6 && ends_with(w, "eed")) return w.substr(0, n - 1);
    if (n > 3 && ends_with(w, "ed")) {
        std::string stem = w.substr(0, n - 2);
        if (stem.size() >= 3 && has_vowel(stem)) {
            if (undo_double(stem)) stem.pop_back();
            return stem;
        }
        return w;
    }

    return w;
}

}  // namespace kgiqa::text
