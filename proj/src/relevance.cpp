#include "grantrec/relevance.hpp"

#include <algorithm>
#include <cmath>

#include "grantrec/error.hpp"
#include "grantrec/text.hpp"

namespace grantrec {

auto tfidf(std::string_view term, std::string_view document_id, const Corpus& corpus) -> TermWeight
{
    const CleanDocument* doc = corpus.find(document_id);
    if (doc == nullptr) {
        throw NotFoundError("unknown document: " + std::string(document_id));
    }
    if (doc->term_total == 0) {
        throw UndefinedTfError("document has no terms: " + doc->id);
    }
    TermWeight w;
    w.term = text::match_key(term);
    w.document_id = doc->id;

    auto count = doc->term_counts.find(w.term);
    const std::size_t n = count == doc->term_counts.end() ? 0 : count->second;
    w.tf = static_cast<double>(n) / static_cast<double>(doc->term_total);

    const std::size_t df = std::max<std::size_t>(corpus.document_frequency(w.term), 1);
    w.idf = std::log(static_cast<double>(corpus.document_count()) / static_cast<double>(df));
    w.tfidf = w.tf * w.idf;
    return w;
}

auto grant_keyword_weights(std::string_view grant_id, const Corpus& corpus, const KeywordTable& table)
    -> GrantKeywordWeights
{
    const Owner owner{OwnerRole::grant, std::string(grant_id)};
    const Corpus surface = corpus.subset([](const CleanDocument& d) { return d.owner.role == OwnerRole::grant; });
    const auto docs = surface.owned_by(owner);
    if (docs.empty()) {
        throw EmptyGrantError("grant has no surface documents: " + std::string(grant_id));
    }

    GrantKeywordWeights out;
    out.grant_id = std::string(grant_id);
    for (const CleanDocument* doc : docs) {
        for (const auto& keyword : match_keywords_in_text(table, doc->text)) {
            const std::string key = text::match_key(keyword);
            out.spelling_by_key.emplace(key, keyword);
            double& weight = out.weight_by_key[key];
            if (doc->term_total > 0) {
                weight = std::max(weight, tfidf(key, doc->id, surface).tfidf);
            }
        }
    }
    for (const auto& [key, weight] : out.weight_by_key) {
        out.total += weight;
    }
    return out;
}

auto score_against(const Researcher& researcher, const GrantKeywordWeights& weights) -> SurfaceMatch
{
    SurfaceMatch match;
    match.researcher_id = researcher.id;
    match.grant_id = weights.grant_id;

    std::set<std::string> keys;
    for (const auto& keyword : researcher.kaken_keywords) {
        keys.insert(text::match_key(keyword));
    }
    for (const auto& key : keys) {
        auto it = weights.weight_by_key.find(key);
        if (it == weights.weight_by_key.end()) {
            continue;
        }
        auto spelling = weights.spelling_by_key.find(key);
        match.matched_keywords.push_back(spelling == weights.spelling_by_key.end() ? key : spelling->second);
        match.raw_score += it->second;
    }
    std::sort(match.matched_keywords.begin(), match.matched_keywords.end());
    if (match.raw_score > 0.0 && weights.total > 0.0) {
        match.normalized_score = std::clamp(match.raw_score / weights.total, 0.0, 1.0);
    }
    return match;
}

auto surface_score(const Researcher& researcher, std::string_view grant_id, const Corpus& corpus,
                   const KeywordTable& table) -> SurfaceMatch
{
    return score_against(researcher, grant_keyword_weights(grant_id, corpus, table));
}

void sort_surface_matches(std::vector<SurfaceMatch>& matches)
{
    std::sort(matches.begin(), matches.end(), [](const SurfaceMatch& a, const SurfaceMatch& b) {
        if (a.normalized_score != b.normalized_score) {
            return a.normalized_score > b.normalized_score;
        }
        return a.researcher_id < b.researcher_id;
    });
}

auto surface_rankings(std::string_view grant_id, std::span<const Researcher> researchers,
                      const Corpus& corpus, const KeywordTable& table) -> std::vector<SurfaceMatch>
{
    const auto weights = grant_keyword_weights(grant_id, corpus, table);
    std::vector<SurfaceMatch> out;
    for (const auto& researcher : researchers) {
        auto match = score_against(researcher, weights);
        if (!match.matched_keywords.empty()) {
            out.push_back(std::move(match));
        }
    }
    sort_surface_matches(out);
    return out;
}

}  // namespace grantrec
