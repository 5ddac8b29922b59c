#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grantrec/corpus.hpp"
#include "grantrec/researcher.hpp"
#include "grantrec/tokenize.hpp"

namespace grantrec {

/// Sorted, duplicate-free set of items.
class Itemset {
public:
    Itemset() = default;
    Itemset(std::initializer_list<std::string> items);
    explicit Itemset(std::vector<std::string> items);
    explicit Itemset(const std::set<std::string>& items);

    [[nodiscard]] auto items() const -> const std::vector<std::string>& { return items_; }
    [[nodiscard]] auto size() const -> std::size_t { return items_.size(); }
    [[nodiscard]] auto empty() const -> bool { return items_.empty(); }
    [[nodiscard]] auto begin() const { return items_.begin(); }
    [[nodiscard]] auto end() const { return items_.end(); }

    [[nodiscard]] auto contains(const std::string& item) const -> bool;
    [[nodiscard]] auto is_subset_of(const Itemset& other) const -> bool;
    [[nodiscard]] auto intersects(const Itemset& other) const -> bool;
    [[nodiscard]] auto united(const Itemset& other) const -> Itemset;

    auto operator==(const Itemset&) const -> bool = default;
    auto operator<=>(const Itemset&) const = default;

private:
    std::vector<std::string> items_;
};

[[nodiscard]] auto to_string(const Itemset& items) -> std::string;  // "{a, b}"

struct SentenceRef {
    std::string document_id;
    std::size_t sentence_index = 0;

    auto operator==(const SentenceRef&) const -> bool = default;
};

struct Transaction {
    std::string id;
    Itemset items;
    SentenceRef source;

    auto operator==(const Transaction&) const -> bool = default;
};

/// Transactions T = {t_1..t_N} over the item universe I.
class TransactionDB {
public:
    TransactionDB() = default;

    /// Throws ValidationError on an empty itemset or a repeated transaction id.
    void add(Transaction transaction);

    [[nodiscard]] auto transactions() const -> const std::vector<Transaction>& { return transactions_; }
    [[nodiscard]] auto transaction_count() const -> std::size_t { return transactions_.size(); }
    [[nodiscard]] auto item_universe() const -> const std::set<std::string>& { return universe_; }

    /// σ(X): transactions containing every item of X. Duplicate transactions count separately.
    [[nodiscard]] auto support_count(const Itemset& items) const -> std::size_t;

    /// Database from bare itemsets, ids t1..tN.
    [[nodiscard]] static auto from_itemsets(const std::vector<Itemset>& itemsets) -> TransactionDB;

private:
    std::vector<Transaction> transactions_;
    std::set<std::string> ids_;
    std::set<std::string> universe_;
};

using DocumentFilter = std::function<bool(const CleanDocument&)>;

/// Past selection results of one grant.
[[nodiscard]] auto historical_documents_of(std::string grant_id) -> DocumentFilter;

/// Researcher papers and past KAKEN abstracts.
[[nodiscard]] auto researcher_documents() -> DocumentFilter;

/// One transaction per sentence with a non-empty noun itemset.
/// Transaction id is "<document id>#<sentence index>".
[[nodiscard]] auto build_transactions(const Corpus& corpus, const DocumentFilter& filter,
                                      const TokenizerProfile& profile) -> TransactionDB;

/// Concatenates both databases; ids are prefixed "a:" and "b:".
[[nodiscard]] auto merge_dbs(const TransactionDB& a, const TransactionDB& b) -> TransactionDB;

struct RuleMetrics {
    double support = 0.0;
    double confidence = 0.0;
    double lift = 0.0;
};

/// support = σ(X∪Y)/N, confidence = σ(X∪Y)/σ(X), lift = confidence/supp(Y),
/// each evaluated from integer counts in one division.
///
/// Throws InvalidRuleError (X or Y empty, or X ∩ Y ≠ ∅), EmptyDatabaseError (N = 0),
/// UndefinedMetricError (σ(X) = 0 or σ(Y) = 0).
[[nodiscard]] auto rule_metrics(const TransactionDB& db, const Itemset& antecedent,
                                const Itemset& consequent) -> RuleMetrics;

struct AssociationRule {
    Itemset antecedent;
    Itemset consequent;
    double support = 0.0;
    double confidence = 0.0;
    double lift = 0.0;

    auto operator==(const AssociationRule&) const -> bool = default;
};

[[nodiscard]] auto to_string(const AssociationRule& rule) -> std::string;  // "{X} → {Y}"

struct MiningParams {
    double min_support = 0.05;
    double min_confidence = 0.5;
    std::size_t max_itemset_width = 3;

    /// Throws ValidationError naming the out-of-range field.
    void validate() const;
};

/// All rules X → Y with X, Y non-empty and disjoint, |X ∪ Y| ≤ max_itemset_width,
/// σ(X ∪ Y) ≥ 1, support ≥ min_support and confidence ≥ min_confidence.
/// Frequent itemsets come from level-wise Apriori. Result is sorted by
/// (antecedent, consequent). Throws EmptyDatabaseError when N = 0.
[[nodiscard]] auto mine_rules(const TransactionDB& db, const MiningParams& params)
    -> std::vector<AssociationRule>;

/// Items a rule consequent may draw on for this researcher: KAKEN keywords plus
/// the noun items of the researcher's own documents, all match_key() normalized.
[[nodiscard]] auto researcher_match_set(const Researcher& researcher, const Corpus& corpus)
    -> std::set<std::string>;

/// Rules whose consequent lies inside `match_set`, by lift descending.
[[nodiscard]] auto match_rules_to_researcher(std::span<const AssociationRule> rules,
                                             const std::set<std::string>& match_set)
    -> std::vector<AssociationRule>;

/// Historical channel result for one researcher against one grant.
struct HistoricalMatch {
    std::string researcher_id;
    std::string grant_id;
    std::vector<AssociationRule> matched_rules;
    double raw_score = 0.0;
    double normalized_score = 0.0;

    auto operator==(const HistoricalMatch&) const -> bool = default;
};

/// raw = Σ lift over matched rules; normalized = raw / Σ lift over `all_rules`,
/// clamped to [0, 1].
[[nodiscard]] auto historical_score(std::string researcher_id, std::string grant_id,
                                    std::span<const AssociationRule> all_rules,
                                    const std::set<std::string>& match_set) -> HistoricalMatch;

/// Ordering by normalized score descending then researcher id.
void sort_historical_matches(std::vector<HistoricalMatch>& matches);

}  // namespace grantrec
