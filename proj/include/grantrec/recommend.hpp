#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grantrec/assoc.hpp"
#include "grantrec/relevance.hpp"

namespace grantrec {

/// Channel weights with α + β = 1.
class WeightParams {
public:
    /// α = β = 0.5.
    WeightParams() = default;

    /// Throws InvalidWeightsError unless both lie in [0, 1] and |α + β − 1| ≤ 1e-9.
    WeightParams(double alpha, double beta);

    /// β derived as 1 − α.
    [[nodiscard]] static auto from_alpha(double alpha) -> WeightParams;

    [[nodiscard]] auto alpha() const -> double { return alpha_; }
    [[nodiscard]] auto beta() const -> double { return beta_; }

    auto operator==(const WeightParams&) const -> bool = default;

private:
    double alpha_ = 0.5;
    double beta_ = 0.5;
};

inline constexpr double default_threshold = 0.4;

/// α · surface + β · historical.
[[nodiscard]] auto total_score(double surface, double historical, const WeightParams& params) -> double;

struct RecommendationEntry {
    std::string researcher_id;
    double surface = 0.0;
    double historical = 0.0;
    double total = 0.0;
    std::vector<std::string> matched_keywords;
    std::vector<AssociationRule> matched_rules;

    auto operator==(const RecommendationEntry&) const -> bool = default;
};

struct RecommendationList {
    std::string grant_id;
    WeightParams params;
    double threshold = default_threshold;
    std::vector<RecommendationEntry> entries;   // total desc, then researcher id
    std::vector<RecommendationEntry> selected;  // entries with total ≥ threshold, same order

    auto operator==(const RecommendationList&) const -> bool = default;
};

/// One entry per researcher present in either channel; a missing channel scores 0.
/// `selected` is filled with apply_threshold(entries, threshold).
[[nodiscard]] auto rank_candidates(std::string grant_id, std::span<const SurfaceMatch> surface,
                                   std::span<const HistoricalMatch> historical, const WeightParams& params,
                                   double threshold = default_threshold) -> RecommendationList;

/// Entries with total ≥ threshold, order preserved. Throws ValidationError
/// (field "threshold") outside [0, 1].
[[nodiscard]] auto apply_threshold(std::span<const RecommendationEntry> entries, double threshold)
    -> std::vector<RecommendationEntry>;

[[nodiscard]] auto apply_threshold(const RecommendationList& list, double threshold)
    -> std::vector<RecommendationEntry>;

/// "table" (plain text) or "json". Throws UsageError for anything else.
[[nodiscard]] auto render_report(const RecommendationList& list, std::string_view format) -> std::string;

/// Side-by-side totals of the same grant under several weight settings, one
/// column per list, rows in the first list's order. Totals at or above each
/// list's threshold are starred.
[[nodiscard]] auto render_total_table(std::span<const RecommendationList> lists) -> std::string;

}  // namespace grantrec
