#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "grantrec/text.hpp"

namespace grantrec {

/// One row of the KAKEN keyword table.
struct KeywordEntry {
    std::string category;
    std::string subcategory;
    std::string field;
    std::string keyword;

    auto operator==(const KeywordEntry&) const -> bool = default;
    auto operator<=>(const KeywordEntry&) const = default;
};

/// Four-level keyword hierarchy (Category / Sub Category / Field / Keyword).
///
/// Level counts are distinct hierarchy paths, so a sub category name reused
/// under two categories counts twice. keyword_count() is the number of rows.
class KeywordTable {
public:
    KeywordTable() = default;

    /// Throws ValidationError on an empty field or a duplicate row.
    explicit KeywordTable(std::vector<KeywordEntry> entries);

    [[nodiscard]] auto entries() const -> const std::vector<KeywordEntry>& { return entries_; }
    [[nodiscard]] auto category_count() const -> std::size_t { return category_count_; }
    [[nodiscard]] auto subcategory_count() const -> std::size_t { return subcategory_count_; }
    [[nodiscard]] auto field_count() const -> std::size_t { return field_count_; }
    [[nodiscard]] auto keyword_count() const -> std::size_t { return entries_.size(); }

    /// Distinct keyword strings, first spelling wins, in table order.
    [[nodiscard]] auto keywords() const -> const std::vector<std::string>& { return keywords_; }

    /// Table spelling of a keyword given its match_key(), or empty.
    [[nodiscard]] auto spelling(const std::string& key) const -> std::string;

    /// Table spelling of matcher().phrases()[index].
    [[nodiscard]] auto spelling_at(std::size_t index) const -> const std::string& { return spelling_[index]; }

    [[nodiscard]] auto matcher() const -> const text::PhraseMatcher& { return matcher_; }

private:
    std::vector<KeywordEntry> entries_;
    std::vector<std::string> keywords_;
    std::size_t category_count_ = 0;
    std::size_t subcategory_count_ = 0;
    std::size_t field_count_ = 0;
    text::PhraseMatcher matcher_;
    std::vector<std::string> spelling_;  // parallel to matcher_.phrases()
};

/// Reads tab-separated UTF-8 with a header row and exactly four columns per row.
/// Blank lines are skipped. ParseError carries the 1-based line number.
[[nodiscard]] auto load_keyword_table(std::istream& in) -> KeywordTable;
[[nodiscard]] auto load_keyword_table(const std::filesystem::path& file) -> KeywordTable;

/// Table keywords occurring in `text` (case-folded, longest match first, whole
/// words). Returns table spellings, each once, sorted.
[[nodiscard]] auto match_keywords_in_text(const KeywordTable& table, std::string_view text)
    -> std::set<std::string>;

}  // namespace grantrec
