#include "grantrec/tokenize.hpp"

#include <fstream>

#include "grantrec/error.hpp"

namespace grantrec {

namespace {

auto is_hiragana(char32_t c) -> bool
{
    return c >= 0x3041 && c <= 0x309F;
}

auto normalized_set(const std::set<std::string>& in) -> std::set<std::string>
{
    std::set<std::string> out;
    for (const auto& s : in) {
        std::string key = text::match_key(s);
        if (!key.empty()) {
            out.insert(std::move(key));
        }
    }
    return out;
}

}  // namespace

TokenizerProfile::TokenizerProfile(std::string name, std::set<std::string> stopwords,
                                   std::set<std::string> noun_lexicon,
                                   std::shared_ptr<const Analyzer> analyzer)
    : name_(std::move(name))
    , stopwords_(normalized_set(stopwords))
    , lexicon_(normalized_set(noun_lexicon))
    , analyzer_(std::move(analyzer))
{
    for (const auto& phrase : lexicon_) {
        if (stopwords_.contains(phrase)) {
            throw ValidationError("phrase is both a stopword and a lexicon noun: " + phrase,
                                  "noun_lexicon");
        }
    }
    matcher_ = text::PhraseMatcher({lexicon_.begin(), lexicon_.end()});
}

auto TokenizerProfile::with_lexicon(const std::vector<std::string>& phrases) const -> TokenizerProfile
{
    std::set<std::string> lexicon = lexicon_;
    for (const auto& phrase : phrases) {
        std::string key = text::match_key(phrase);
        if (!key.empty() && !stopwords_.contains(key)) {
            lexicon.insert(std::move(key));
        }
    }
    return TokenizerProfile(name_, stopwords_, std::move(lexicon), analyzer_);
}

auto TokenizerProfile::tokenize(std::string_view sentence) const -> std::vector<Token>
{
    if (analyzer_) {
        return analyzer_->analyze(sentence);
    }

    const std::u32string folded = text::to_u32(text::match_key(sentence));
    std::vector<Token> tokens;
    std::size_t pos = 0;
    while (pos < folded.size()) {
        if (auto span = matcher_.match_at(folded, pos)) {
            tokens.push_back({matcher_.phrases()[span->phrase], true});
            pos = span->end;
            continue;
        }
        const auto cls = text::classify(folded[pos]);
        if (cls == text::CharClass::other) {
            ++pos;
            continue;
        }
        std::size_t end = pos + 1;
        bool noun = true;
        if (cls == text::CharClass::word) {
            while (end < folded.size() && text::classify(folded[end]) == text::CharClass::word) {
                ++end;
            }
        } else {
            // a CJK run stops at a kana/kanji switch (particles are hiragana)
            // and where the next lexicon phrase begins
            const bool hiragana = is_hiragana(folded[pos]);
            while (end < folded.size() && text::classify(folded[end]) == text::CharClass::cjk
                   && is_hiragana(folded[end]) == hiragana && !matcher_.match_at(folded, end)) {
                ++end;
            }
            // hiragana runs are particles and inflections
            noun = !hiragana;
        }
        tokens.push_back({text::to_utf8(std::u32string_view(folded).substr(pos, end - pos)), noun});
        pos = end;
    }
    return tokens;
}

auto TokenizerProfile::terms(std::string_view sentence) const -> std::vector<std::string>
{
    std::vector<std::string> out;
    for (auto& token : tokenize(sentence)) {
        if (!token.is_noun) {
            continue;
        }
        // analyzer output is not normalized yet; the default scanner's already is
        std::string key = analyzer_ ? text::match_key(token.surface) : std::move(token.surface);
        if (!key.empty() && !stopwords_.contains(key)) {
            out.push_back(std::move(key));
        }
    }
    return out;
}

auto default_stopwords() -> std::set<std::string>
{
    return {
        // English function words
        "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and",
        "any", "are", "as", "at", "be", "because", "been", "before", "being", "below",
        "between", "both", "but", "by", "can", "could", "did", "do", "does", "doing", "down",
        "during", "each", "few", "for", "from", "further", "had", "has", "have", "having", "he",
        "her", "here", "hers", "him", "his", "how", "i", "if", "in", "into", "is", "it", "its",
        "itself", "just", "may", "me", "more", "most", "must", "my", "no", "nor", "not", "now",
        "of", "off", "on", "once", "only", "or", "other", "our", "ours", "out", "over", "own",
        "per", "same", "she", "should", "so", "some", "such", "than", "that", "the", "their",
        "them", "then", "there", "these", "they", "this", "those", "through", "to", "too",
        "under", "until", "up", "upon", "us", "very", "via", "was", "we", "were", "what",
        "when", "where", "which", "while", "who", "whom", "why", "will", "with", "within",
        "would", "you", "your",
        // Japanese particles, copulas and formal nouns
        "の", "に", "は", "を", "た", "が", "で", "て", "と", "し", "れ", "さ", "ある", "いる",
        "も", "する", "から", "な", "こと", "として", "い", "や", "れる", "など", "なっ",
        "ない", "この", "ため", "その", "あっ", "よう", "また", "もの", "という", "あり",
        "まで", "られ", "なる", "へ", "か", "だ", "これ", "によって", "により", "おり", "より",
        "による", "ず", "なり", "られる", "において", "ば", "なかっ", "なく", "しかし",
        "について", "せ", "だっ", "その後", "できる", "それ", "う", "ので", "なお", "のみ",
        "でき", "き", "つ", "における", "および", "いう", "さらに", "でも", "ら", "たり",
        "その他", "に関する", "たち", "ます", "ん", "なら", "です", "ました", "ません",
    };
}

auto default_profile() -> TokenizerProfile
{
    return TokenizerProfile("default", default_stopwords(), {});
}

auto read_phrase_list(const std::filesystem::path& file) -> std::set<std::string>
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw NotFoundError("cannot open " + file.string());
    }
    std::set<std::string> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!text::is_valid_utf8(line)) {
            throw DecodeError(file.string() + ":" + std::to_string(number));
        }
        auto phrase = text::trim(line);
        if (phrase.empty() || phrase.front() == '#') {
            continue;
        }
        out.insert(text::nfc(phrase));
    }
    return out;
}

auto extract_nouns(const TokenizerProfile& profile, std::string_view sentence) -> std::set<std::string>
{
    auto terms = profile.terms(sentence);
    return {std::make_move_iterator(terms.begin()), std::make_move_iterator(terms.end())};
}

}  // namespace grantrec
