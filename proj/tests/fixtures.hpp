#pragma once

// Reported values used as fixtures: the five-transaction example database, the
// Kayamori surface/historical channel scores and the three weight settings.

#include <string>
#include <utility>
#include <vector>

#include "grantrec/assoc.hpp"
#include "grantrec/recommend.hpp"

namespace fixtures {

/// Example transaction database. Transaction 5 lists "Neural Network Information
/// Retrieval" without a comma; it is read as the two items. Transaction 4 keeps
/// the plural "Knowledge Acquisitions" as printed.
inline auto example_itemsets() -> std::vector<grantrec::Itemset>
{
    return {
        {"machine learning", "neural network"},
        {"machine learning", "information retrieval", "knowledge acquisition", "industrial engineering"},
        {"neural network", "information retrieval", "knowledge acquisition", "information theory"},
        {"machine learning", "neural network", "information retrieval", "knowledge acquisitions"},
        {"machine learning", "neural network", "information retrieval", "information theory"},
    };
}

inline auto example_db() -> grantrec::TransactionDB
{
    return grantrec::TransactionDB::from_itemsets(example_itemsets());
}

inline constexpr const char* kayamori = "kayamori";

/// Surface channel of the Kayamori grant (researcher, score, matched keywords).
inline auto kayamori_surface() -> std::vector<grantrec::SurfaceMatch>
{
    auto match = [](std::string id, double score, std::vector<std::string> keywords) {
        return grantrec::SurfaceMatch{std::move(id), kayamori, std::move(keywords), score, score};
    };
    return {
        match("1-A", 0.708, {"Information Retrieval", "Knowledge Acquisition", "Natural Language Processing"}),
        match("1-B", 0.608, {"Industrial Engineering", "Information Theory"}),
        match("1-C", 0.377, {"Machine Learning", "Neural Network"}),
        match("1-D", 0.350, {"Knowledge Acquisition", "Neural Network"}),
        match("1-E", 0.250, {"Computational Neuroscience", "Neuroinformatics"}),
    };
}

/// Historical channel of the Kayamori grant restricted to 1-C. Researcher 1-F
/// (0.256) is left out: its reported totals imply a different historical score.
inline auto kayamori_historical() -> std::vector<grantrec::HistoricalMatch>
{
    const double unknown = std::numeric_limits<double>::quiet_NaN();
    grantrec::HistoricalMatch c;
    c.researcher_id = "1-C";
    c.grant_id = kayamori;
    c.matched_rules = {
        {{"Reinforcement Learning"}, {"Machine Learning"}, unknown, unknown, unknown},
        {{"Reinforcement Learning"}, {"Neural Network"}, unknown, unknown, unknown},
    };
    c.raw_score = unknown;
    c.normalized_score = 0.759;
    return {c};
}

struct ReportedTotals {
    double alpha;
    double beta;
    std::vector<std::pair<std::string, double>> totals;  // 1-A … 1-E
};

/// Total-score table. The third column is printed as "α = 0.8, β = 0.2" but its
/// values are those of α = 0.2, β = 0.8 (0.2·0.377 + 0.8·0.759 = 0.682 for 1-C).
inline auto kayamori_totals() -> std::vector<ReportedTotals>
{
    return {
        {0.5, 0.5, {{"1-A", 0.354}, {"1-B", 0.304}, {"1-C", 0.568}, {"1-D", 0.175}, {"1-E", 0.125}}},
        {0.8, 0.2, {{"1-A", 0.566}, {"1-B", 0.486}, {"1-C", 0.453}, {"1-D", 0.280}, {"1-E", 0.200}}},
        {0.2, 0.8, {{"1-A", 0.141}, {"1-B", 0.121}, {"1-C", 0.682}, {"1-D", 0.070}, {"1-E", 0.050}}},
    };
}

}  // namespace fixtures
