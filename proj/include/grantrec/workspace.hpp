#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grantrec/assoc.hpp"
#include "grantrec/corpus.hpp"
#include "grantrec/relevance.hpp"
#include "grantrec/researcher.hpp"
#include "grantrec/taxonomy.hpp"

namespace grantrec {

struct GrantInfo {
    std::string id;
    std::string title;

    auto operator==(const GrantInfo&) const -> bool = default;
};

/// Everything ingested from one input root: the corpus plus the grant and
/// researcher records that own its documents.
struct Workspace {
    Corpus corpus;
    std::vector<GrantInfo> grants;          // sorted by id
    std::vector<Researcher> researchers;    // sorted by id

    [[nodiscard]] auto find_grant(std::string_view id) const -> const GrantInfo*;
    [[nodiscard]] auto find_researcher(std::string_view id) const -> const Researcher*;
};

/// Reads the input layout
///
///     grants/<id>/title.txt            optional one-line title
///     grants/<id>/surface/*.html|txt   public call text
///     grants/<id>/historical/*         past selection results
///     researchers/<id>/papers/*        the researcher's papers (pre-extracted text or html)
///     researchers/<id>/kaken.txt       "name:" and "keywords:" header lines
///                                      (keywords separated by ';'), a blank
///                                      line, then the application abstract
///
/// Document ids are paths relative to `root`, with '/' separators.
[[nodiscard]] auto read_sources(const std::filesystem::path& root, std::vector<GrantInfo>& grants,
                                std::vector<Researcher>& researchers) -> std::vector<RawDocument>;

[[nodiscard]] auto ingest_directory(const std::filesystem::path& root, const TokenizerProfile& profile)
    -> Workspace;

[[nodiscard]] auto workspace_to_json(const Workspace& workspace) -> nlohmann::json;
[[nodiscard]] auto workspace_from_json(const nlohmann::json& j) -> Workspace;

void save_workspace(const Workspace& workspace, const std::filesystem::path& file);
[[nodiscard]] auto load_workspace(const std::filesystem::path& file) -> Workspace;

/// Rules of one grant: its historical transactions merged with the transactions
/// of every researcher document, then mined. Empty when both are empty.
[[nodiscard]] auto grant_rules(const Workspace& workspace, std::string_view grant_id, const MiningParams& params)
    -> std::vector<AssociationRule>;

/// Surface matches with at least one keyword, ranked.
[[nodiscard]] auto surface_channel(const Workspace& workspace, std::string_view grant_id,
                                   const KeywordTable& table) -> std::vector<SurfaceMatch>;

/// Historical matches with at least one matched rule, ranked.
[[nodiscard]] auto historical_channel(const Workspace& workspace, std::string_view grant_id,
                                      std::span<const AssociationRule> rules) -> std::vector<HistoricalMatch>;

}  // namespace grantrec
