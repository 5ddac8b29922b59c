#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grantrec/tokenize.hpp"

namespace grantrec {

enum class DocumentKind { html, plain_text };

enum class OwnerRole {
    grant,       // public call text from the grant web site ("surface")
    historical,  // past selection results published by the grant
    researcher,  // a researcher's papers or past KAKEN application
};

struct Owner {
    OwnerRole role = OwnerRole::grant;
    std::string id;  // grant id or researcher id

    auto operator==(const Owner&) const -> bool = default;
    auto operator<=>(const Owner&) const = default;
};

struct RawDocument {
    std::string id;
    std::string origin;  // URI or file path
    DocumentKind kind = DocumentKind::plain_text;
    std::string body;
    Owner owner;
};

struct CleanDocument {
    std::string id;
    std::string origin;
    DocumentKind kind = DocumentKind::plain_text;
    std::string text;
    std::vector<std::string> sentences;
    Owner owner;
    std::map<std::string, std::size_t> term_counts;  // n(t, d)
    std::size_t term_total = 0;                      // Σ_k n(k, d)

    auto operator==(const CleanDocument&) const -> bool = default;
};

/// Removes every match of <("[^"]*"|'[^']*'|[^'">])*>, replacing each tag with a
/// space, until none is left; then collapses white space. Idempotent.
[[nodiscard]] auto strip_html(std::string_view body) -> std::string;

/// True if `text` contains a match of the tag pattern.
[[nodiscard]] auto contains_tag(std::string_view text) -> bool;

/// Splits on 。 ． . ！ ! ？ ? and newline. Sentences are trimmed and non-empty.
[[nodiscard]] auto segment_sentences(std::string_view text) -> std::vector<std::string>;

/// Inverse companion of segment_sentences: joins with newlines.
[[nodiscard]] auto join_sentences(std::span<const std::string> sentences) -> std::string;

/// Immutable document collection with the postings needed by TF-IDF.
class Corpus {
public:
    Corpus() = default;

    /// Rebuilds postings from `documents`; throws DuplicateIdError on a repeated id.
    Corpus(std::vector<CleanDocument> documents, TokenizerProfile profile);

    [[nodiscard]] auto documents() const -> const std::vector<CleanDocument>& { return documents_; }
    [[nodiscard]] auto document_count() const -> std::size_t { return documents_.size(); }
    [[nodiscard]] auto term_document_index() const
        -> const std::map<std::string, std::set<std::string>>& { return postings_; }
    [[nodiscard]] auto profile() const -> const TokenizerProfile& { return profile_; }

    [[nodiscard]] auto find(std::string_view id) const -> const CleanDocument*;

    /// |{d ∈ D : t ∈ d}| for an already normalized term.
    [[nodiscard]] auto document_frequency(const std::string& term) const -> std::size_t;

    /// Documents of `owner`, in id order.
    [[nodiscard]] auto owned_by(const Owner& owner) const -> std::vector<const CleanDocument*>;

    /// Corpus restricted to documents satisfying `keep` (postings recomputed).
    [[nodiscard]] auto subset(const std::function<bool(const CleanDocument&)>& keep) const -> Corpus;

private:
    std::vector<CleanDocument> documents_;  // sorted by id
    std::map<std::string, std::size_t> by_id_;
    std::map<std::string, std::set<std::string>> postings_;
    TokenizerProfile profile_;
};

/// Cleans one source: validates UTF-8 (DecodeError naming the origin), strips
/// markup for html, NFC-normalizes, segments and counts terms.
[[nodiscard]] auto clean_document(const RawDocument& source, const TokenizerProfile& profile)
    -> CleanDocument;

[[nodiscard]] auto ingest_corpus(std::span<const RawDocument> sources,
                                 const TokenizerProfile& profile = default_profile()) -> Corpus;

/// Downloads `uri` (http or https). 404 raises NotFoundError, any other
/// failure FetchError; non-text payloads raise UnsupportedContentError.
[[nodiscard]] auto fetch_remote(const std::string& uri, const Owner& owner) -> RawDocument;

[[nodiscard]] auto to_string(DocumentKind kind) -> std::string_view;
[[nodiscard]] auto to_string(OwnerRole role) -> std::string_view;
[[nodiscard]] auto parse_document_kind(std::string_view s) -> DocumentKind;
[[nodiscard]] auto parse_owner_role(std::string_view s) -> OwnerRole;

}  // namespace grantrec
