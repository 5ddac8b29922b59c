#include "grantrec/taxonomy.hpp"

#include <fstream>
#include <map>
#include <tuple>

#include "grantrec/error.hpp"

namespace grantrec {

namespace {

auto split_tabs(std::string_view line) -> std::vector<std::string_view>
{
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        cells.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
        if (tab == std::string_view::npos) {
            break;
        }
        start = tab + 1;
    }
    return cells;
}

}  // namespace

KeywordTable::KeywordTable(std::vector<KeywordEntry> entries) : entries_(std::move(entries))
{
    std::set<KeywordEntry> seen;
    std::set<std::string> categories;
    std::set<std::tuple<std::string, std::string>> subcategories;
    std::set<std::tuple<std::string, std::string, std::string>> fields;
    std::map<std::string, std::string> spelling_by_key;
    std::vector<std::string> phrases;

    for (const auto& e : entries_) {
        if (e.category.empty() || e.subcategory.empty() || e.field.empty() || e.keyword.empty()) {
            throw ValidationError("keyword table row has an empty field: " + e.keyword, "entries");
        }
        if (!seen.insert(e).second) {
            throw ValidationError("duplicate keyword table row: " + e.category + " / " + e.subcategory
                                      + " / " + e.field + " / " + e.keyword,
                                  "entries");
        }
        categories.insert(e.category);
        subcategories.emplace(e.category, e.subcategory);
        fields.emplace(e.category, e.subcategory, e.field);

        const std::string key = text::match_key(e.keyword);
        if (spelling_by_key.emplace(key, e.keyword).second) {
            keywords_.push_back(e.keyword);
            phrases.push_back(e.keyword);
        }
    }
    category_count_ = categories.size();
    subcategory_count_ = subcategories.size();
    field_count_ = fields.size();

    matcher_ = text::PhraseMatcher(phrases);
    spelling_.reserve(matcher_.phrases().size());
    for (const auto& key : matcher_.phrases()) {
        spelling_.push_back(spelling_by_key.at(key));
    }
}

auto KeywordTable::spelling(const std::string& key) const -> std::string
{
    const auto& keys = matcher_.phrases();
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (keys[i] == key) {
            return spelling_[i];
        }
    }
    return {};
}

auto load_keyword_table(std::istream& in) -> KeywordTable
{
    std::vector<KeywordEntry> entries;
    std::string line;
    std::size_t number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (number == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.erase(0, 3);
        }
        if (!text::is_valid_utf8(line)) {
            throw ParseError("not valid UTF-8", number);
        }
        if (text::trim(line).empty()) {
            continue;
        }
        const auto cells = split_tabs(line);
        if (cells.size() != 4) {
            throw ParseError("expected 4 tab-separated columns, found " + std::to_string(cells.size()),
                             number);
        }
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        auto cell = [&](std::size_t i) { return text::nfc(text::trim(cells[i])); };
        entries.push_back({cell(0), cell(1), cell(2), cell(3)});
    }
    return KeywordTable(std::move(entries));
}

auto load_keyword_table(const std::filesystem::path& file) -> KeywordTable
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw NotFoundError("cannot open keyword table " + file.string());
    }
    return load_keyword_table(in);
}

auto match_keywords_in_text(const KeywordTable& table, std::string_view text) -> std::set<std::string>
{
    std::set<std::string> found;
    if (table.matcher().empty()) {
        return found;
    }
    const std::u32string folded = text::to_u32(text::match_key(text));
    for (const auto& span : table.matcher().scan(folded)) {
        found.insert(table.spelling_at(span.phrase));
    }
    return found;
}

}  // namespace grantrec
