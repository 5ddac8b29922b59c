#include "grantrec/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "grantrec/error.hpp"

namespace grantrec {

using nlohmann::json;

namespace {

auto number_or_nan(const json& j, const char* key) -> double
{
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return it->get<double>();
}

auto number(double value) -> json
{
    return std::isnan(value) ? json(nullptr) : json(value);
}

template <typename T>
auto optional_field(const json& j, const char* key, T fallback) -> T
{
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? fallback : it->get<T>();
}

}  // namespace

void to_json(json& j, const Itemset& items)
{
    j = items.items();
}

void from_json(const json& j, Itemset& items)
{
    items = Itemset(j.get<std::vector<std::string>>());
}

void to_json(json& j, const AssociationRule& rule)
{
    j = json{{"antecedent", rule.antecedent},
             {"consequent", rule.consequent},
             {"support", number(rule.support)},
             {"confidence", number(rule.confidence)},
             {"lift", number(rule.lift)}};
}

void from_json(const json& j, AssociationRule& rule)
{
    rule.antecedent = j.at("antecedent").get<Itemset>();
    rule.consequent = j.at("consequent").get<Itemset>();
    rule.support = number_or_nan(j, "support");
    rule.confidence = number_or_nan(j, "confidence");
    rule.lift = number_or_nan(j, "lift");
}

void to_json(json& j, const SurfaceMatch& match)
{
    j = json{{"researcher_id", match.researcher_id},
             {"grant_id", match.grant_id},
             {"matched_keywords", match.matched_keywords},
             {"raw_score", number(match.raw_score)},
             {"normalized_score", match.normalized_score}};
}

void from_json(const json& j, SurfaceMatch& match)
{
    match.researcher_id = j.at("researcher_id").get<std::string>();
    match.grant_id = j.at("grant_id").get<std::string>();
    match.matched_keywords = optional_field(j, "matched_keywords", std::vector<std::string>{});
    match.raw_score = number_or_nan(j, "raw_score");
    match.normalized_score = j.at("normalized_score").get<double>();
}

void to_json(json& j, const HistoricalMatch& match)
{
    j = json{{"researcher_id", match.researcher_id},
             {"grant_id", match.grant_id},
             {"matched_rules", match.matched_rules},
             {"raw_score", number(match.raw_score)},
             {"normalized_score", match.normalized_score}};
}

void from_json(const json& j, HistoricalMatch& match)
{
    match.researcher_id = j.at("researcher_id").get<std::string>();
    match.grant_id = j.at("grant_id").get<std::string>();
    match.matched_rules = optional_field(j, "matched_rules", std::vector<AssociationRule>{});
    match.raw_score = number_or_nan(j, "raw_score");
    match.normalized_score = j.at("normalized_score").get<double>();
}

void to_json(json& j, const WeightParams& params)
{
    j = json{{"alpha", params.alpha()}, {"beta", params.beta()}};
}

void from_json(const json& j, WeightParams& params)
{
    const double alpha = j.at("alpha").get<double>();
    params = j.contains("beta") ? WeightParams(alpha, j.at("beta").get<double>()) : WeightParams::from_alpha(alpha);
}

void to_json(json& j, const RecommendationEntry& entry)
{
    j = json{{"researcher_id", entry.researcher_id},
             {"surface", entry.surface},
             {"historical", entry.historical},
             {"total", entry.total},
             {"matched_keywords", entry.matched_keywords},
             {"matched_rules", entry.matched_rules}};
}

void from_json(const json& j, RecommendationEntry& entry)
{
    entry.researcher_id = j.at("researcher_id").get<std::string>();
    entry.surface = j.at("surface").get<double>();
    entry.historical = j.at("historical").get<double>();
    entry.total = j.at("total").get<double>();
    entry.matched_keywords = optional_field(j, "matched_keywords", std::vector<std::string>{});
    entry.matched_rules = optional_field(j, "matched_rules", std::vector<AssociationRule>{});
}

void to_json(json& j, const RecommendationList& list)
{
    json entries = json::array();
    for (const auto& entry : list.entries) {
        json e = entry;
        e["selected"] = entry.total >= list.threshold;
        entries.push_back(std::move(e));
    }
    json selected = json::array();
    for (const auto& entry : list.selected) {
        selected.push_back(entry.researcher_id);
    }
    j = json{{"grant_id", list.grant_id},
             {"params", list.params},
             {"threshold", list.threshold},
             {"entries", std::move(entries)},
             {"selected", std::move(selected)}};
}

void from_json(const json& j, RecommendationList& list)
{
    list.grant_id = j.at("grant_id").get<std::string>();
    list.params = j.at("params").get<WeightParams>();
    list.threshold = j.at("threshold").get<double>();
    list.entries = j.at("entries").get<std::vector<RecommendationEntry>>();
    list.selected.clear();
    for (const auto& id : j.at("selected")) {
        const auto wanted = id.get<std::string>();
        auto it = std::find_if(list.entries.begin(), list.entries.end(),
                               [&](const RecommendationEntry& e) { return e.researcher_id == wanted; });
        if (it == list.entries.end()) {
            throw ParseError("selected researcher " + wanted + " is not among the entries", 0);
        }
        list.selected.push_back(*it);
    }
}

void to_json(json& j, const Researcher& researcher)
{
    j = json{{"id", researcher.id},
             {"display_name", researcher.display_name},
             {"kaken_keywords", researcher.kaken_keywords},
             {"paper_document_ids", researcher.paper_document_ids},
             {"past_kaken_document_ids", researcher.past_kaken_document_ids}};
}

void from_json(const json& j, Researcher& researcher)
{
    researcher.id = j.at("id").get<std::string>();
    researcher.display_name = optional_field(j, "display_name", researcher.id);
    researcher.kaken_keywords = optional_field(j, "kaken_keywords", std::set<std::string>{});
    researcher.paper_document_ids = optional_field(j, "paper_document_ids", std::set<std::string>{});
    researcher.past_kaken_document_ids = optional_field(j, "past_kaken_document_ids", std::set<std::string>{});
}

void to_json(json& j, const Owner& owner)
{
    j = json{{"role", to_string(owner.role)}, {"id", owner.id}};
}

void from_json(const json& j, Owner& owner)
{
    owner.role = parse_owner_role(j.at("role").get<std::string>());
    owner.id = j.at("id").get<std::string>();
}

void to_json(json& j, const CleanDocument& doc)
{
    j = json{{"id", doc.id},
             {"origin", doc.origin},
             {"kind", to_string(doc.kind)},
             {"owner", doc.owner},
             {"text", doc.text},
             {"sentences", doc.sentences},
             {"term_counts", doc.term_counts}};
}

void from_json(const json& j, CleanDocument& doc)
{
    doc.id = j.at("id").get<std::string>();
    doc.origin = optional_field(j, "origin", std::string{});
    doc.kind = parse_document_kind(j.at("kind").get<std::string>());
    doc.owner = j.at("owner").get<Owner>();
    doc.text = j.at("text").get<std::string>();
    doc.sentences = j.at("sentences").get<std::vector<std::string>>();
    doc.term_counts = j.at("term_counts").get<std::map<std::string, std::size_t>>();
    doc.term_total = 0;
    for (const auto& [term, count] : doc.term_counts) {
        doc.term_total += count;
    }
}

void to_json(json& j, const TokenizerProfile& profile)
{
    j = json{{"name", profile.name()}, {"stopwords", profile.stopwords()}, {"noun_lexicon", profile.noun_lexicon()}};
}

void from_json(const json& j, TokenizerProfile& profile)
{
    profile = TokenizerProfile(j.at("name").get<std::string>(), j.at("stopwords").get<std::set<std::string>>(),
                               j.at("noun_lexicon").get<std::set<std::string>>());
}

auto corpus_to_json(const Corpus& corpus) -> json
{
    return json{{"document_count", corpus.document_count()},
                {"documents", corpus.documents()},
                {"term_document_index", corpus.term_document_index()},
                {"profile", corpus.profile()}};
}

auto corpus_from_json(const json& j) -> Corpus
{
    Corpus corpus(j.at("documents").get<std::vector<CleanDocument>>(), j.at("profile").get<TokenizerProfile>());
    if (j.at("document_count").get<std::size_t>() != corpus.document_count()) {
        throw ParseError("document_count does not match the number of documents", 0);
    }
    if (j.contains("term_document_index")
        && j.at("term_document_index").get<std::map<std::string, std::set<std::string>>>()
               != corpus.term_document_index()) {
        throw ParseError("term_document_index is inconsistent with the document term counts", 0);
    }
    return corpus;
}

auto read_json_file(const std::filesystem::path& file) -> json
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw NotFoundError("cannot open " + file.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(file.string() + ": " + e.what(), 0);
    }
}

void write_json_file(const std::filesystem::path& file, const json& j)
{
    std::ofstream out(file, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + file.string());
    }
    out << dump(j);
}

auto dump(const json& j) -> std::string
{
    return j.dump(2) + "\n";
}

}  // namespace grantrec
