#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace grantrec::text {

[[nodiscard]] auto is_valid_utf8(std::string_view bytes) -> bool;

/// NFC normalization. Input must be valid UTF-8.
[[nodiscard]] auto nfc(std::string_view utf8) -> std::string;

/// Full Unicode case folding, re-normalized to NFC.
[[nodiscard]] auto fold_case(std::string_view utf8) -> std::string;

/// Collapses every run of Unicode white space to one ASCII space and trims both ends.
[[nodiscard]] auto collapse_whitespace(std::string_view utf8) -> std::string;

/// Trims Unicode white space (including U+3000) from both ends.
[[nodiscard]] auto trim(std::string_view utf8) -> std::string_view;

/// Canonical form used for every keyword / phrase comparison:
/// NFC, case-folded, white space collapsed.
[[nodiscard]] auto match_key(std::string_view utf8) -> std::string;

[[nodiscard]] auto to_u32(std::string_view utf8) -> std::u32string;
[[nodiscard]] auto to_utf8(std::u32string_view text) -> std::string;

enum class CharClass {
    word,   // letters and digits of space-delimited scripts
    cjk,    // Han, Hiragana, Katakana: no word boundaries
    other,  // white space, punctuation, symbols
};

[[nodiscard]] auto classify(char32_t c) -> CharClass;

/// True when position `i` of `text` does not split a run of word characters.
[[nodiscard]] auto is_boundary(std::u32string_view text, std::size_t i) -> bool;

struct PhraseSpan {
    std::size_t begin;   // code point offsets into the scanned text
    std::size_t end;
    std::size_t phrase;  // index into PhraseMatcher::phrases()
};

/// Longest-match-first phrase scanner over match_key() normalized text.
///
/// A phrase may start and end only at word boundaries, so `learning` never
/// matches inside `learnings`; CJK characters are boundaries on both sides.
/// Matches are consumed left to right, which keeps embedded shorter phrases
/// from shadowing a longer one that starts at the same position.
class PhraseMatcher {
public:
    PhraseMatcher() = default;
    explicit PhraseMatcher(const std::vector<std::string>& phrases);

    /// Normalized, deduplicated phrases in insertion order.
    [[nodiscard]] auto phrases() const -> const std::vector<std::string>& { return keys_; }
    [[nodiscard]] auto empty() const -> bool { return keys_.empty(); }

    /// Longest phrase starting exactly at `pos` (which must be a boundary).
    [[nodiscard]] auto match_at(std::u32string_view text, std::size_t pos) const
        -> std::optional<PhraseSpan>;

    [[nodiscard]] auto scan(std::u32string_view text) const -> std::vector<PhraseSpan>;

private:
    std::vector<std::string> keys_;
    std::vector<std::u32string> wide_;
    std::unordered_map<char32_t, std::vector<std::size_t>> by_first_;
};

}  // namespace grantrec::text
