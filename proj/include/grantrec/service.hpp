#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "grantrec/assoc.hpp"
#include "grantrec/recommend.hpp"
#include "grantrec/relevance.hpp"
#include "grantrec/workspace.hpp"

namespace httplib {
class Server;
}

namespace grantrec {

/// Precomputed channel scores of one grant.
struct GrantChannels {
    GrantInfo info;
    std::size_t surface_documents = 0;
    std::size_t historical_documents = 0;
    std::vector<SurfaceMatch> surface;
    std::vector<HistoricalMatch> historical;
};

/// What the service answers from; immutable once built.
struct Dataset {
    std::vector<GrantChannels> grants;   // sorted by id
    std::vector<Researcher> researchers; // sorted by id

    [[nodiscard]] auto find_grant(std::string_view id) const -> const GrantChannels*;
    [[nodiscard]] auto find_researcher(std::string_view id) const -> const Researcher*;
};

/// Runs both channels for every grant of the workspace.
[[nodiscard]] auto build_dataset(const Workspace& workspace, const KeywordTable& table, const MiningParams& params)
    -> Dataset;

/// Dataset from already computed channel files, described by a manifest:
///
///     {"grants": [{"id", "title", "surface": "<surface.json>", "historical": "<historical.json>"}],
///      "researchers": [{"id", "display_name", "kaken_keywords"}]}
///
/// Paths are relative to the manifest. Researchers that only appear in channel
/// files get a bare record.
[[nodiscard]] auto load_fixture_dataset(const std::filesystem::path& manifest) -> Dataset;

struct ServiceConfig {
    std::filesystem::path corpus;    // workspace JSON written by `ingest`
    std::filesystem::path table;     // keywords.tsv
    std::filesystem::path fixtures;  // alternative to corpus + table
    MiningParams mining;
    std::string host = "127.0.0.1";
    int port = 8080;

    /// Relative paths resolve against `base`.
    [[nodiscard]] static auto from_json(const nlohmann::json& j, const std::filesystem::path& base) -> ServiceConfig;
    [[nodiscard]] static auto from_file(const std::filesystem::path& file) -> ServiceConfig;

    /// GRANTREC_CORPUS, GRANTREC_TABLE, GRANTREC_FIXTURES, GRANTREC_HOST, GRANTREC_PORT,
    /// GRANTREC_MIN_SUPPORT, GRANTREC_MIN_CONFIDENCE, GRANTREC_MAX_WIDTH.
    void apply_env(const std::function<std::optional<std::string>(const char*)>& getenv);
    void apply_env();
};

[[nodiscard]] auto load_dataset(const ServiceConfig& config) -> Dataset;

struct RecommendationQuery {
    std::string grant_id;
    double alpha = 0.5;
    double threshold = default_threshold;

    /// Throws ValidationError naming `alpha` or `threshold`.
    void validate() const;
};

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// HTTP-independent request handlers over an atomically swappable dataset.
///
/// Channel scores are computed by the loader; each request only fuses and
/// thresholds. Handlers never throw: failures become {error, field?} bodies.
class RecommendationService {
public:
    using Loader = std::function<Dataset()>;

    /// Calls `loader` once; its exceptions propagate.
    explicit RecommendationService(Loader loader);

    [[nodiscard]] auto list_grants() const -> Response;

    /// Missing parameters fall back to alpha 0.5 and threshold 0.4.
    [[nodiscard]] auto recommendations(std::string_view grant_id, const std::optional<std::string>& alpha,
                                       const std::optional<std::string>& threshold) const -> Response;
    [[nodiscard]] auto handle_recommendations(const RecommendationQuery& query) const -> Response;

    [[nodiscard]] auto researcher(std::string_view id) const -> Response;

    /// Re-runs the loader; on failure the current dataset stays in place.
    auto reload() -> Response;

    /// Registers GET /grants, GET /grants/{id}/recommendations,
    /// GET /researchers/{id} and POST /reload.
    void install(httplib::Server& server);

private:
    [[nodiscard]] auto snapshot() const -> std::shared_ptr<const Dataset>;

    Loader loader_;
    mutable std::mutex mutex_;
    std::shared_ptr<const Dataset> data_;
};

}  // namespace grantrec
