#include "grantrec/assoc.hpp"

#include <algorithm>
#include <map>

#include "grantrec/error.hpp"
#include "grantrec/text.hpp"

namespace grantrec {

Itemset::Itemset(std::initializer_list<std::string> items) : Itemset(std::vector<std::string>(items)) {}

Itemset::Itemset(std::vector<std::string> items) : items_(std::move(items))
{
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

Itemset::Itemset(const std::set<std::string>& items) : items_(items.begin(), items.end()) {}

auto Itemset::contains(const std::string& item) const -> bool
{
    return std::binary_search(items_.begin(), items_.end(), item);
}

auto Itemset::is_subset_of(const Itemset& other) const -> bool
{
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

auto Itemset::intersects(const Itemset& other) const -> bool
{
    auto a = items_.begin();
    auto b = other.items_.begin();
    while (a != items_.end() && b != other.items_.end()) {
        if (*a == *b) {
            return true;
        }
        if (*a < *b) {
            ++a;
        } else {
            ++b;
        }
    }
    return false;
}

auto Itemset::united(const Itemset& other) const -> Itemset
{
    std::vector<std::string> out;
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(out));
    Itemset result;
    result.items_ = std::move(out);
    return result;
}

auto to_string(const Itemset& items) -> std::string
{
    std::string out = "{";
    for (const auto& item : items) {
        if (out.size() > 1) {
            out += ", ";
        }
        out += item;
    }
    return out + "}";
}

auto to_string(const AssociationRule& rule) -> std::string
{
    return to_string(rule.antecedent) + " → " + to_string(rule.consequent);
}

void TransactionDB::add(Transaction transaction)
{
    if (transaction.items.empty()) {
        throw ValidationError("transaction has no items: " + transaction.id, "items");
    }
    if (!ids_.insert(transaction.id).second) {
        throw ValidationError("duplicate transaction id: " + transaction.id, "id");
    }
    universe_.insert(transaction.items.begin(), transaction.items.end());
    transactions_.push_back(std::move(transaction));
}

auto TransactionDB::support_count(const Itemset& items) const -> std::size_t
{
    return static_cast<std::size_t>(std::count_if(
        transactions_.begin(), transactions_.end(),
        [&](const Transaction& t) { return items.is_subset_of(t.items); }));
}

auto TransactionDB::from_itemsets(const std::vector<Itemset>& itemsets) -> TransactionDB
{
    TransactionDB db;
    for (std::size_t i = 0; i < itemsets.size(); ++i) {
        db.add({"t" + std::to_string(i + 1), itemsets[i], {}});
    }
    return db;
}

auto historical_documents_of(std::string grant_id) -> DocumentFilter
{
    return [id = std::move(grant_id)](const CleanDocument& d) {
        return d.owner.role == OwnerRole::historical && d.owner.id == id;
    };
}

auto researcher_documents() -> DocumentFilter
{
    return [](const CleanDocument& d) { return d.owner.role == OwnerRole::researcher; };
}

auto build_transactions(const Corpus& corpus, const DocumentFilter& filter, const TokenizerProfile& profile)
    -> TransactionDB
{
    TransactionDB db;
    for (const auto& doc : corpus.documents()) {
        if (!filter(doc)) {
            continue;
        }
        for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
            auto nouns = extract_nouns(profile, doc.sentences[i]);
            if (nouns.empty()) {
                continue;
            }
            db.add({doc.id + "#" + std::to_string(i), Itemset(nouns), {doc.id, i}});
        }
    }
    return db;
}

auto merge_dbs(const TransactionDB& a, const TransactionDB& b) -> TransactionDB
{
    TransactionDB merged;
    for (const auto& t : a.transactions()) {
        merged.add({"a:" + t.id, t.items, t.source});
    }
    for (const auto& t : b.transactions()) {
        merged.add({"b:" + t.id, t.items, t.source});
    }
    return merged;
}

auto rule_metrics(const TransactionDB& db, const Itemset& antecedent, const Itemset& consequent)
    -> RuleMetrics
{
    if (antecedent.empty() || consequent.empty()) {
        throw InvalidRuleError("rule sides must be non-empty");
    }
    if (antecedent.intersects(consequent)) {
        throw InvalidRuleError("antecedent and consequent overlap: " + to_string(antecedent) + " → "
                               + to_string(consequent));
    }
    const std::size_t n = db.transaction_count();
    if (n == 0) {
        throw EmptyDatabaseError("transaction database is empty");
    }
    const std::size_t sigma_x = db.support_count(antecedent);
    const std::size_t sigma_y = db.support_count(consequent);
    if (sigma_x == 0 || sigma_y == 0) {
        throw UndefinedMetricError("σ(" + to_string(sigma_x == 0 ? antecedent : consequent) + ") = 0");
    }
    const std::size_t sigma_xy = db.support_count(antecedent.united(consequent));
    const auto xy = static_cast<double>(sigma_xy);
    return {
        xy / static_cast<double>(n),
        xy / static_cast<double>(sigma_x),
        xy * static_cast<double>(n) / (static_cast<double>(sigma_x) * static_cast<double>(sigma_y)),
    };
}

void MiningParams::validate() const
{
    if (!(min_support >= 0.0 && min_support <= 1.0)) {
        throw ValidationError("min_support must lie in [0, 1]", "min_support");
    }
    if (!(min_confidence >= 0.0 && min_confidence <= 1.0)) {
        throw ValidationError("min_confidence must lie in [0, 1]", "min_confidence");
    }
    if (max_itemset_width < 1 || max_itemset_width > 16) {
        throw ValidationError("max_itemset_width must lie in [1, 16]", "max_itemset_width");
    }
}

namespace {

using Ids = std::vector<std::size_t>;

auto count_in(const std::vector<Ids>& transactions, const Ids& candidate) -> std::size_t
{
    return static_cast<std::size_t>(std::count_if(transactions.begin(), transactions.end(), [&](const Ids& t) {
        return std::includes(t.begin(), t.end(), candidate.begin(), candidate.end());
    }));
}

// Joins itemsets sharing their first k-2 items and drops candidates with an
// infrequent (k-1)-subset.
auto next_candidates(const std::vector<Ids>& level, const std::set<Ids>& frequent) -> std::vector<Ids>
{
    std::vector<Ids> out;
    for (std::size_t i = 0; i < level.size(); ++i) {
        for (std::size_t j = i + 1; j < level.size(); ++j) {
            const Ids& a = level[i];
            const Ids& b = level[j];
            if (!std::equal(a.begin(), a.end() - 1, b.begin(), b.end() - 1)) {
                break;  // level is sorted, so no later b shares a's prefix
            }
            Ids candidate = a;
            candidate.push_back(b.back());
            bool closed = true;
            for (std::size_t drop = 0; drop + 2 < candidate.size() && closed; ++drop) {
                Ids subset;
                for (std::size_t k = 0; k < candidate.size(); ++k) {
                    if (k != drop) {
                        subset.push_back(candidate[k]);
                    }
                }
                closed = frequent.contains(subset);
            }
            if (closed) {
                out.push_back(std::move(candidate));
            }
        }
    }
    return out;
}

}  // namespace

auto mine_rules(const TransactionDB& db, const MiningParams& params) -> std::vector<AssociationRule>
{
    params.validate();
    const std::size_t n = db.transaction_count();
    if (n == 0) {
        throw EmptyDatabaseError("transaction database is empty");
    }

    const std::vector<std::string> items(db.item_universe().begin(), db.item_universe().end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < items.size(); ++i) {
        index.emplace(items[i], i);
    }
    std::vector<Ids> transactions;
    transactions.reserve(n);
    for (const auto& t : db.transactions()) {
        Ids ids;
        for (const auto& item : t.items) {
            ids.push_back(index.at(item));
        }
        transactions.push_back(std::move(ids));  // sorted: items and index share an order
    }

    auto is_frequent = [&](std::size_t sigma) {
        return sigma >= 1 && static_cast<double>(sigma) / static_cast<double>(n) >= params.min_support;
    };

    std::map<Ids, std::size_t> sigma;
    std::vector<Ids> level;
    {
        std::vector<std::size_t> counts(items.size(), 0);
        for (const auto& t : transactions) {
            for (std::size_t id : t) {
                ++counts[id];
            }
        }
        for (std::size_t id = 0; id < items.size(); ++id) {
            if (is_frequent(counts[id])) {
                level.push_back({id});
                sigma.emplace(Ids{id}, counts[id]);
            }
        }
    }
    for (std::size_t width = 2; width <= params.max_itemset_width && !level.empty(); ++width) {
        const std::set<Ids> previous(level.begin(), level.end());
        std::vector<Ids> next;
        for (auto& candidate : next_candidates(level, previous)) {
            const std::size_t count = count_in(transactions, candidate);
            if (is_frequent(count)) {
                sigma.emplace(candidate, count);
                next.push_back(std::move(candidate));
            }
        }
        level = std::move(next);
    }

    auto to_itemset = [&](const Ids& ids) {
        std::vector<std::string> names;
        names.reserve(ids.size());
        for (std::size_t id : ids) {
            names.push_back(items[id]);
        }
        return Itemset(std::move(names));
    };

    std::vector<AssociationRule> rules;
    for (const auto& [itemset, sigma_xy] : sigma) {
        const std::size_t width = itemset.size();
        if (width < 2) {
            continue;
        }
        for (unsigned mask = 1; mask + 1 < (1u << width); ++mask) {
            Ids x;
            Ids y;
            for (std::size_t k = 0; k < width; ++k) {
                ((mask >> k) & 1u ? x : y).push_back(itemset[k]);
            }
            // downward closure: both sides are frequent, so their counts are known
            const std::size_t sigma_x = sigma.at(x);
            const std::size_t sigma_y = sigma.at(y);
            const double confidence = static_cast<double>(sigma_xy) / static_cast<double>(sigma_x);
            if (confidence < params.min_confidence) {
                continue;
            }
            rules.push_back({
                to_itemset(x),
                to_itemset(y),
                static_cast<double>(sigma_xy) / static_cast<double>(n),
                confidence,
                static_cast<double>(sigma_xy) * static_cast<double>(n)
                    / (static_cast<double>(sigma_x) * static_cast<double>(sigma_y)),
            });
        }
    }
    std::sort(rules.begin(), rules.end(), [](const AssociationRule& a, const AssociationRule& b) {
        if (a.antecedent != b.antecedent) {
            return a.antecedent < b.antecedent;
        }
        return a.consequent < b.consequent;
    });
    return rules;
}

auto researcher_match_set(const Researcher& researcher, const Corpus& corpus) -> std::set<std::string>
{
    std::set<std::string> out;
    for (const auto& keyword : researcher.kaken_keywords) {
        std::string key = text::match_key(keyword);
        if (!key.empty()) {
            out.insert(std::move(key));
        }
    }
    for (const auto& id : researcher.paper_document_ids) {
        const CleanDocument* doc = corpus.find(id);
        if (doc == nullptr) {
            continue;
        }
        for (const auto& [term, count] : doc->term_counts) {
            out.insert(term);
        }
    }
    return out;
}

auto match_rules_to_researcher(std::span<const AssociationRule> rules, const std::set<std::string>& match_set)
    -> std::vector<AssociationRule>
{
    std::vector<AssociationRule> matched;
    for (const auto& rule : rules) {
        const bool inside = std::all_of(rule.consequent.begin(), rule.consequent.end(),
                                        [&](const std::string& item) { return match_set.contains(item); });
        if (inside) {
            matched.push_back(rule);
        }
    }
    std::stable_sort(matched.begin(), matched.end(), [](const AssociationRule& a, const AssociationRule& b) {
        if (a.lift != b.lift) {
            return a.lift > b.lift;
        }
        if (a.antecedent != b.antecedent) {
            return a.antecedent < b.antecedent;
        }
        return a.consequent < b.consequent;
    });
    return matched;
}

auto historical_score(std::string researcher_id, std::string grant_id, std::span<const AssociationRule> all_rules,
                      const std::set<std::string>& match_set) -> HistoricalMatch
{
    HistoricalMatch match;
    match.researcher_id = std::move(researcher_id);
    match.grant_id = std::move(grant_id);
    match.matched_rules = match_rules_to_researcher(all_rules, match_set);
    if (match.matched_rules.empty()) {
        return match;
    }
    double total = 0.0;
    for (const auto& rule : all_rules) {
        total += rule.lift;
    }
    for (const auto& rule : match.matched_rules) {
        match.raw_score += rule.lift;
    }
    if (total > 0.0) {
        match.normalized_score = std::clamp(match.raw_score / total, 0.0, 1.0);
    }
    return match;
}

void sort_historical_matches(std::vector<HistoricalMatch>& matches)
{
    std::sort(matches.begin(), matches.end(), [](const HistoricalMatch& a, const HistoricalMatch& b) {
        if (a.normalized_score != b.normalized_score) {
            return a.normalized_score > b.normalized_score;
        }
        return a.researcher_id < b.researcher_id;
    });
}

}  // namespace grantrec
