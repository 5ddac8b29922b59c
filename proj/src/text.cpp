#include "grantrec/text.hpp"

#include <algorithm>
#include <unordered_set>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include "grantrec/error.hpp"

namespace grantrec::text {

namespace {

auto nfc_instance() -> const icu::Normalizer2&
{
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* instance = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status) || instance == nullptr) {
        throw Error(std::string("ICU NFC normalizer unavailable: ") + u_errorName(status));
    }
    return *instance;
}

auto to_unicode(std::string_view utf8) -> icu::UnicodeString
{
    return icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
}

auto from_unicode(const icu::UnicodeString& s) -> std::string
{
    std::string out;
    s.toUTF8String(out);
    return out;
}

auto normalize(const icu::UnicodeString& s) -> icu::UnicodeString
{
    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString out = nfc_instance().normalize(s, status);
    if (U_FAILURE(status)) {
        throw Error(std::string("NFC normalization failed: ") + u_errorName(status));
    }
    return out;
}

auto is_space(char32_t c) -> bool
{
    return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0;
}

}  // namespace

auto is_valid_utf8(std::string_view bytes) -> bool
{
    const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
    const auto length = static_cast<int32_t>(bytes.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        if (c < 0) {
            return false;
        }
    }
    return true;
}

auto nfc(std::string_view utf8) -> std::string
{
    return from_unicode(normalize(to_unicode(utf8)));
}

auto fold_case(std::string_view utf8) -> std::string
{
    icu::UnicodeString s = to_unicode(utf8);
    s.foldCase(U_FOLD_CASE_DEFAULT);
    return from_unicode(normalize(s));
}

auto to_u32(std::string_view utf8) -> std::u32string
{
    std::u32string out;
    out.reserve(utf8.size());
    const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
    }
    return out;
}

auto to_utf8(std::u32string_view text) -> std::string
{
    std::string out;
    out.reserve(text.size());
    for (char32_t c : text) {
        uint8_t buf[U8_MAX_LENGTH];
        int32_t n = 0;
        UBool error = false;
        U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
        if (error) {
            throw Error("code point cannot be encoded as UTF-8");
        }
        out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
    }
    return out;
}

auto collapse_whitespace(std::string_view utf8) -> std::string
{
    std::u32string wide = to_u32(utf8);
    std::u32string out;
    out.reserve(wide.size());
    bool pending_space = false;
    for (char32_t c : wide) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return to_utf8(out);
}

auto trim(std::string_view utf8) -> std::string_view
{
    const auto* s = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    int32_t begin = 0;
    while (begin < length) {
        int32_t next = begin;
        UChar32 c = 0;
        U8_NEXT(s, next, length, c);
        if (c < 0 || !is_space(static_cast<char32_t>(c))) {
            break;
        }
        begin = next;
    }
    int32_t end = length;
    while (end > begin) {
        int32_t prev = end;
        UChar32 c = 0;
        U8_PREV(s, 0, prev, c);
        if (c < 0 || !is_space(static_cast<char32_t>(c))) {
            break;
        }
        end = prev;
    }
    return utf8.substr(static_cast<std::size_t>(begin), static_cast<std::size_t>(end - begin));
}

auto match_key(std::string_view utf8) -> std::string
{
    return collapse_whitespace(fold_case(utf8));
}

auto classify(char32_t c) -> CharClass
{
    const auto cp = static_cast<UChar32>(c);
    UErrorCode status = U_ZERO_ERROR;
    const UScriptCode script = uscript_getScript(cp, &status);
    if (script == USCRIPT_HAN || script == USCRIPT_HIRAGANA || script == USCRIPT_KATAKANA
        || cp == 0x30FC /* prolonged sound mark */ || u_hasBinaryProperty(cp, UCHAR_IDEOGRAPHIC)) {
        return CharClass::cjk;
    }
    if (u_isalnum(cp)) {
        return CharClass::word;
    }
    const auto category = u_charType(cp);
    if (category == U_NON_SPACING_MARK || category == U_COMBINING_SPACING_MARK) {
        return CharClass::word;
    }
    return CharClass::other;
}

auto is_boundary(std::u32string_view text, std::size_t i) -> bool
{
    if (i == 0 || i >= text.size()) {
        return true;
    }
    return !(classify(text[i - 1]) == CharClass::word && classify(text[i]) == CharClass::word);
}

PhraseMatcher::PhraseMatcher(const std::vector<std::string>& phrases)
{
    std::unordered_set<std::string> seen;
    for (const auto& phrase : phrases) {
        std::string key = match_key(phrase);
        if (key.empty() || !seen.insert(key).second) {
            continue;
        }
        keys_.push_back(key);
        wide_.push_back(to_u32(key));
    }
    for (std::size_t i = 0; i < wide_.size(); ++i) {
        by_first_[wide_[i].front()].push_back(i);
    }
    for (auto& [first, candidates] : by_first_) {
        std::sort(candidates.begin(), candidates.end(), [this](std::size_t a, std::size_t b) {
            if (wide_[a].size() != wide_[b].size()) {
                return wide_[a].size() > wide_[b].size();
            }
            return wide_[a] < wide_[b];
        });
    }
}

auto PhraseMatcher::match_at(std::u32string_view text, std::size_t pos) const
    -> std::optional<PhraseSpan>
{
    if (pos >= text.size() || !is_boundary(text, pos)) {
        return std::nullopt;
    }
    auto it = by_first_.find(text[pos]);
    if (it == by_first_.end()) {
        return std::nullopt;
    }
    for (std::size_t index : it->second) {
        const std::u32string& phrase = wide_[index];
        const std::size_t end = pos + phrase.size();
        if (end > text.size() || text.compare(pos, phrase.size(), phrase) != 0) {
            continue;
        }
        if (is_boundary(text, end)) {
            return PhraseSpan{pos, end, index};
        }
    }
    return std::nullopt;
}

auto PhraseMatcher::scan(std::u32string_view text) const -> std::vector<PhraseSpan>
{
    std::vector<PhraseSpan> spans;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (auto span = match_at(text, pos)) {
            spans.push_back(*span);
            pos = span->end;
        } else {
            ++pos;
        }
    }
    return spans;
}

}  // namespace grantrec::text
