#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "grantrec/assoc.hpp"
#include "grantrec/corpus.hpp"
#include "grantrec/recommend.hpp"
#include "grantrec/relevance.hpp"
#include "grantrec/researcher.hpp"
#include "grantrec/taxonomy.hpp"

// JSON mappings for the persisted and exchanged types. Scores that are unknown
// (imported report values without their raw sums, rules without metrics) are
// written and read as null ↔ NaN.

namespace grantrec {

void to_json(nlohmann::json& j, const Itemset& items);
void from_json(const nlohmann::json& j, Itemset& items);

void to_json(nlohmann::json& j, const AssociationRule& rule);
void from_json(const nlohmann::json& j, AssociationRule& rule);

void to_json(nlohmann::json& j, const SurfaceMatch& match);
void from_json(const nlohmann::json& j, SurfaceMatch& match);

void to_json(nlohmann::json& j, const HistoricalMatch& match);
void from_json(const nlohmann::json& j, HistoricalMatch& match);

void to_json(nlohmann::json& j, const WeightParams& params);
void from_json(const nlohmann::json& j, WeightParams& params);

void to_json(nlohmann::json& j, const RecommendationEntry& entry);
void from_json(const nlohmann::json& j, RecommendationEntry& entry);

void to_json(nlohmann::json& j, const RecommendationList& list);
void from_json(const nlohmann::json& j, RecommendationList& list);

void to_json(nlohmann::json& j, const Researcher& researcher);
void from_json(const nlohmann::json& j, Researcher& researcher);

void to_json(nlohmann::json& j, const Owner& owner);
void from_json(const nlohmann::json& j, Owner& owner);

void to_json(nlohmann::json& j, const CleanDocument& doc);
void from_json(const nlohmann::json& j, CleanDocument& doc);

void to_json(nlohmann::json& j, const TokenizerProfile& profile);
void from_json(const nlohmann::json& j, TokenizerProfile& profile);

/// Corpus fields plus the tokenizer profile used to count terms. Reading
/// rebuilds postings and fails with ParseError if the stored index disagrees.
[[nodiscard]] auto corpus_to_json(const Corpus& corpus) -> nlohmann::json;
[[nodiscard]] auto corpus_from_json(const nlohmann::json& j) -> Corpus;

[[nodiscard]] auto read_json_file(const std::filesystem::path& file) -> nlohmann::json;
void write_json_file(const std::filesystem::path& file, const nlohmann::json& j);

/// Canonical text form: two-space indent, trailing newline.
[[nodiscard]] auto dump(const nlohmann::json& j) -> std::string;

}  // namespace grantrec
