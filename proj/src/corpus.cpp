#include "grantrec/corpus.hpp"

#include <algorithm>

#include "grantrec/error.hpp"
#include "grantrec/text.hpp"

namespace grantrec {

namespace {

// End offset (one past '>') of the tag pattern anchored at `begin`, if it matches.
// The alternation is deterministic on the first character of each repetition and
// the repetition cannot cross an unquoted '>', so the match from a given '<' is
// unique and a forward scan finds exactly what the regex engine would.
auto match_tag_at(std::string_view s, std::size_t begin) -> std::optional<std::size_t>
{
    std::size_t j = begin + 1;
    while (j < s.size()) {
        const char c = s[j];
        if (c == '>') {
            return j + 1;
        }
        if (c == '"' || c == '\'') {
            const auto close = s.find(c, j + 1);
            if (close == std::string_view::npos) {
                return std::nullopt;
            }
            j = close + 1;
        } else {
            ++j;
        }
    }
    return std::nullopt;
}

// One left-to-right pass of regex_replace(s, tag, " "). Returns false if nothing matched.
auto strip_pass(std::string_view s, std::string& out) -> bool
{
    out.clear();
    out.reserve(s.size());
    bool any = false;
    std::size_t i = 0;
    while (i < s.size()) {
        const auto lt = s.find('<', i);
        if (lt == std::string_view::npos) {
            out.append(s.substr(i));
            break;
        }
        out.append(s.substr(i, lt - i));
        if (auto end = match_tag_at(s, lt)) {
            out.push_back(' ');
            i = *end;
            any = true;
        } else {
            out.push_back('<');
            i = lt + 1;
        }
    }
    return any;
}

auto is_sentence_delimiter(char32_t c) -> bool
{
    switch (c) {
    case U'。':
    case U'．':
    case U'.':
    case U'！':
    case U'!':
    case U'？':
    case U'?':
    case U'\n':
        return true;
    default:
        return false;
    }
}

}  // namespace

auto contains_tag(std::string_view text) -> bool
{
    for (auto lt = text.find('<'); lt != std::string_view::npos; lt = text.find('<', lt + 1)) {
        if (match_tag_at(text, lt)) {
            return true;
        }
    }
    return false;
}

auto strip_html(std::string_view body) -> std::string
{
    // Removing a tag can close a quote for an earlier '<' and create a new match,
    // so passes repeat until the text is tag-free.
    std::string current(body);
    std::string next;
    while (strip_pass(current, next)) {
        current.swap(next);
    }
    return text::collapse_whitespace(current);
}

auto segment_sentences(std::string_view text) -> std::vector<std::string>
{
    std::vector<std::string> sentences;
    const std::u32string wide = text::to_u32(text);
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        const std::string piece = text::to_utf8(std::u32string_view(wide).substr(start, end - start));
        const auto trimmed = text::trim(piece);
        if (!trimmed.empty()) {
            sentences.emplace_back(trimmed);
        }
    };
    for (std::size_t i = 0; i < wide.size(); ++i) {
        if (is_sentence_delimiter(wide[i])) {
            flush(i);
            start = i + 1;
        }
    }
    flush(wide.size());
    return sentences;
}

auto join_sentences(std::span<const std::string> sentences) -> std::string
{
    std::string out;
    for (const auto& sentence : sentences) {
        if (!out.empty()) {
            out.push_back('\n');
        }
        out += sentence;
    }
    return out;
}

Corpus::Corpus(std::vector<CleanDocument> documents, TokenizerProfile profile)
    : documents_(std::move(documents)), profile_(std::move(profile))
{
    std::sort(documents_.begin(), documents_.end(),
              [](const CleanDocument& a, const CleanDocument& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < documents_.size(); ++i) {
        const auto& doc = documents_[i];
        if (!by_id_.emplace(doc.id, i).second) {
            throw DuplicateIdError(doc.id);
        }
        for (const auto& [term, count] : doc.term_counts) {
            if (count > 0) {
                postings_[term].insert(doc.id);
            }
        }
    }
}

auto Corpus::find(std::string_view id) const -> const CleanDocument*
{
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &documents_[it->second];
}

auto Corpus::document_frequency(const std::string& term) const -> std::size_t
{
    auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
}

auto Corpus::owned_by(const Owner& owner) const -> std::vector<const CleanDocument*>
{
    std::vector<const CleanDocument*> out;
    for (const auto& doc : documents_) {
        if (doc.owner == owner) {
            out.push_back(&doc);
        }
    }
    return out;
}

auto Corpus::subset(const std::function<bool(const CleanDocument&)>& keep) const -> Corpus
{
    std::vector<CleanDocument> kept;
    std::copy_if(documents_.begin(), documents_.end(), std::back_inserter(kept), keep);
    return Corpus(std::move(kept), profile_);
}

auto clean_document(const RawDocument& source, const TokenizerProfile& profile) -> CleanDocument
{
    if (!text::is_valid_utf8(source.body)) {
        throw DecodeError(source.origin.empty() ? source.id : source.origin);
    }
    CleanDocument doc;
    doc.id = source.id;
    doc.origin = source.origin;
    doc.kind = source.kind;
    doc.owner = source.owner;
    const std::string normalized = text::nfc(source.body);
    doc.text = source.kind == DocumentKind::html ? strip_html(normalized) : normalized;
    doc.sentences = segment_sentences(doc.text);
    for (const auto& sentence : doc.sentences) {
        for (auto& term : profile.terms(sentence)) {
            ++doc.term_counts[std::move(term)];
            ++doc.term_total;
        }
    }
    return doc;
}

auto ingest_corpus(std::span<const RawDocument> sources, const TokenizerProfile& profile) -> Corpus
{
    std::set<std::string_view> ids;
    for (const auto& source : sources) {
        if (!ids.insert(source.id).second) {
            throw DuplicateIdError(source.id);
        }
    }
    std::vector<CleanDocument> docs;
    docs.reserve(sources.size());
    for (const auto& source : sources) {
        docs.push_back(clean_document(source, profile));
    }
    return Corpus(std::move(docs), profile);
}

auto to_string(DocumentKind kind) -> std::string_view
{
    return kind == DocumentKind::html ? "html" : "plain-text";
}

auto to_string(OwnerRole role) -> std::string_view
{
    switch (role) {
    case OwnerRole::grant:
        return "grant";
    case OwnerRole::historical:
        return "historical";
    case OwnerRole::researcher:
        return "researcher";
    }
    return "grant";
}

auto parse_document_kind(std::string_view s) -> DocumentKind
{
    if (s == "html") {
        return DocumentKind::html;
    }
    if (s == "plain-text") {
        return DocumentKind::plain_text;
    }
    throw ValidationError("unknown document kind: " + std::string(s), "kind");
}

auto parse_owner_role(std::string_view s) -> OwnerRole
{
    if (s == "grant") {
        return OwnerRole::grant;
    }
    if (s == "historical") {
        return OwnerRole::historical;
    }
    if (s == "researcher") {
        return OwnerRole::researcher;
    }
    throw ValidationError("unknown owner role: " + std::string(s), "owner");
}

}  // namespace grantrec
