#pragma once

#include <filesystem>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grantrec/text.hpp"

namespace grantrec {

struct Token {
    std::string surface;
    bool is_noun = false;

    auto operator==(const Token&) const -> bool = default;
};

/// Seam for a real morphological analyzer (MeCab and friends).
/// Implementations must be pure: same sentence, same tokens.
class Analyzer {
public:
    virtual ~Analyzer() = default;
    [[nodiscard]] virtual auto analyze(std::string_view sentence) const -> std::vector<Token> = 0;
};

/// Stopwords and noun lexicon driving term extraction.
///
/// Without an analyzer, terms are lexicon phrases (longest match first) and
/// the remaining letter/digit runs. CJK text splits at kana/kanji switches and
/// lexicon hits; kanji and katakana runs are terms, hiragana runs are not.
/// Stopwords are dropped either way. All terms are match_key()
/// normalized, so they never carry uppercase.
class TokenizerProfile {
public:
    TokenizerProfile() = default;

    /// Throws ValidationError if a stopword is also a lexicon phrase.
    TokenizerProfile(std::string name, std::set<std::string> stopwords,
                     std::set<std::string> noun_lexicon,
                     std::shared_ptr<const Analyzer> analyzer = nullptr);

    [[nodiscard]] auto name() const -> const std::string& { return name_; }
    [[nodiscard]] auto stopwords() const -> const std::set<std::string>& { return stopwords_; }
    [[nodiscard]] auto noun_lexicon() const -> const std::set<std::string>& { return lexicon_; }
    [[nodiscard]] auto analyzer() const -> const Analyzer* { return analyzer_.get(); }

    /// Same profile with extra lexicon phrases (e.g. taxonomy keywords).
    /// Phrases that collide with a stopword are skipped.
    [[nodiscard]] auto with_lexicon(const std::vector<std::string>& phrases) const -> TokenizerProfile;

    /// Ordered term sequence of one sentence; the unit counted by TF-IDF.
    [[nodiscard]] auto terms(std::string_view sentence) const -> std::vector<std::string>;

    /// Token stream with noun flags (analyzer output, or the default scanner's).
    [[nodiscard]] auto tokenize(std::string_view sentence) const -> std::vector<Token>;

private:
    std::string name_ = "default";
    std::set<std::string> stopwords_;
    std::set<std::string> lexicon_;
    text::PhraseMatcher matcher_;
    std::shared_ptr<const Analyzer> analyzer_;
};

/// Built-in English/Japanese stopword list.
[[nodiscard]] auto default_stopwords() -> std::set<std::string>;

[[nodiscard]] auto default_profile() -> TokenizerProfile;

/// One UTF-8 phrase per line; blank lines and lines starting with '#' are ignored.
[[nodiscard]] auto read_phrase_list(const std::filesystem::path& file) -> std::set<std::string>;

/// Noun itemset of one sentence: deduplicated, case-folded, stopword-free.
[[nodiscard]] auto extract_nouns(const TokenizerProfile& profile, std::string_view sentence)
    -> std::set<std::string>;

}  // namespace grantrec
