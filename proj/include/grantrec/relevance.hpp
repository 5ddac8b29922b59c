#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grantrec/corpus.hpp"
#include "grantrec/researcher.hpp"
#include "grantrec/taxonomy.hpp"

namespace grantrec {

struct TermWeight {
    std::string term;
    std::string document_id;
    double tf = 0.0;
    double idf = 0.0;
    double tfidf = 0.0;
};

/// tf(t,d) = n(t,d) / Σ_k n(k,d); idf(t) = ln(|D| / df(t)); tfidf = tf · idf.
/// A term found in no document gets df = 1 (so tf = 0 and tfidf = 0).
/// `term` is normalized with text::match_key before lookup.
///
/// Throws NotFoundError for an unknown document and UndefinedTfError when the
/// document has no terms.
[[nodiscard]] auto tfidf(std::string_view term, std::string_view document_id, const Corpus& corpus)
    -> TermWeight;

/// Surface channel result for one researcher against one grant.
struct SurfaceMatch {
    std::string researcher_id;
    std::string grant_id;
    std::vector<std::string> matched_keywords;  // table spelling, sorted
    double raw_score = 0.0;
    double normalized_score = 0.0;

    auto operator==(const SurfaceMatch&) const -> bool = default;
};

/// Per-keyword weight of one grant's surface documents: for every table keyword
/// present in any of them, the maximum tfidf over those documents. TF-IDF is taken
/// over the collection of all grants' surface documents.
struct GrantKeywordWeights {
    std::string grant_id;
    std::map<std::string, double> weight_by_key;  // match_key → max tfidf
    std::map<std::string, std::string> spelling_by_key;
    double total = 0.0;                           // Σ weight over present keywords
};

/// Throws EmptyGrantError if the grant has no surface document.
[[nodiscard]] auto grant_keyword_weights(std::string_view grant_id, const Corpus& corpus,
                                         const KeywordTable& table) -> GrantKeywordWeights;

[[nodiscard]] auto score_against(const Researcher& researcher, const GrantKeywordWeights& weights)
    -> SurfaceMatch;

/// raw = Σ weight over the researcher's matched keywords; normalized = raw / total,
/// clamped to [0, 1].
[[nodiscard]] auto surface_score(const Researcher& researcher, std::string_view grant_id,
                                 const Corpus& corpus, const KeywordTable& table) -> SurfaceMatch;

/// Matches with at least one keyword, by normalized score descending then id.
[[nodiscard]] auto surface_rankings(std::string_view grant_id, std::span<const Researcher> researchers,
                                    const Corpus& corpus, const KeywordTable& table)
    -> std::vector<SurfaceMatch>;

/// Ordering used by surface_rankings, exposed for already computed matches.
void sort_surface_matches(std::vector<SurfaceMatch>& matches);

}  // namespace grantrec
