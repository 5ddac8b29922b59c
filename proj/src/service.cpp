#include "grantrec/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include <httplib.h>

#include "grantrec/error.hpp"
#include "grantrec/serialize.hpp"

namespace grantrec {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

auto error_body(const std::string& message, const std::string& field = {}) -> json
{
    json body{{"error", message}};
    if (!field.empty()) {
        body["field"] = field;
    }
    return body;
}

auto parse_unit_interval(const std::string& raw, const char* field) -> double
{
    double value = 0.0;
    const char* first = raw.data();
    const char* last = raw.data() + raw.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ValidationError(std::string(field) + " is not a number: '" + raw + "'", field);
    }
    return value;
}

auto resolve(const fs::path& base, const fs::path& p) -> fs::path
{
    return p.empty() || p.is_absolute() ? p : base / p;
}

template <typename Fn>
auto guarded(Fn&& fn) -> Response
{
    try {
        return fn();
    } catch (const NotFoundError& e) {
        return {404, error_body(e.what())};
    } catch (const ValidationError& e) {
        return {400, error_body(e.what(), e.field())};
    } catch (const std::exception& e) {
        return {500, error_body(e.what())};
    }
}

}  // namespace

auto Dataset::find_grant(std::string_view id) const -> const GrantChannels*
{
    auto it = std::find_if(grants.begin(), grants.end(), [&](const GrantChannels& g) { return g.info.id == id; });
    return it == grants.end() ? nullptr : &*it;
}

auto Dataset::find_researcher(std::string_view id) const -> const Researcher*
{
    auto it = std::find_if(researchers.begin(), researchers.end(), [&](const Researcher& r) { return r.id == id; });
    return it == researchers.end() ? nullptr : &*it;
}

auto build_dataset(const Workspace& workspace, const KeywordTable& table, const MiningParams& params) -> Dataset
{
    Dataset data;
    data.researchers = workspace.researchers;
    for (const auto& grant : workspace.grants) {
        GrantChannels channels;
        channels.info = grant;
        channels.surface_documents = workspace.corpus.owned_by({OwnerRole::grant, grant.id}).size();
        channels.historical_documents = workspace.corpus.owned_by({OwnerRole::historical, grant.id}).size();
        if (channels.surface_documents > 0) {
            channels.surface = surface_channel(workspace, grant.id, table);
        }
        const auto rules = grant_rules(workspace, grant.id, params);
        channels.historical = historical_channel(workspace, grant.id, rules);
        data.grants.push_back(std::move(channels));
    }
    return data;
}

auto load_fixture_dataset(const fs::path& manifest) -> Dataset
{
    const json j = read_json_file(manifest);
    const fs::path base = manifest.parent_path();
    Dataset data;
    try {
        std::map<std::string, Researcher> researchers;
        for (const auto& r : j.value("researchers", json::array())) {
            auto researcher = r.get<Researcher>();
            researchers.emplace(researcher.id, std::move(researcher));
        }
        for (const auto& g : j.at("grants")) {
            GrantChannels channels;
            channels.info.id = g.at("id").get<std::string>();
            channels.info.title = g.value("title", channels.info.id);
            channels.surface_documents = g.value("surface_documents", std::size_t{0});
            channels.historical_documents = g.value("historical_documents", std::size_t{0});
            if (g.contains("surface")) {
                channels.surface = read_json_file(resolve(base, g.at("surface").get<std::string>()))
                                       .get<std::vector<SurfaceMatch>>();
            }
            if (g.contains("historical")) {
                channels.historical = read_json_file(resolve(base, g.at("historical").get<std::string>()))
                                          .get<std::vector<HistoricalMatch>>();
            }
            sort_surface_matches(channels.surface);
            sort_historical_matches(channels.historical);
            auto note = [&](const std::string& id) {
                researchers.try_emplace(id, Researcher{id, id, {}, {}, {}});
            };
            for (const auto& m : channels.surface) {
                note(m.researcher_id);
            }
            for (const auto& m : channels.historical) {
                note(m.researcher_id);
            }
            data.grants.push_back(std::move(channels));
        }
        for (auto& [id, researcher] : researchers) {
            data.researchers.push_back(std::move(researcher));
        }
    } catch (const json::exception& e) {
        throw ParseError(manifest.string() + ": " + e.what(), 0);
    }
    std::sort(data.grants.begin(), data.grants.end(),
              [](const GrantChannels& a, const GrantChannels& b) { return a.info.id < b.info.id; });
    return data;
}

auto ServiceConfig::from_json(const json& j, const fs::path& base) -> ServiceConfig
{
    ServiceConfig config;
    try {
        config.corpus = resolve(base, j.value("corpus", std::string{}));
        config.table = resolve(base, j.value("table", std::string{}));
        config.fixtures = resolve(base, j.value("fixtures", std::string{}));
        if (j.contains("mining")) {
            const auto& m = j.at("mining");
            config.mining.min_support = m.value("min_support", config.mining.min_support);
            config.mining.min_confidence = m.value("min_confidence", config.mining.min_confidence);
            config.mining.max_itemset_width = m.value("max_itemset_width", config.mining.max_itemset_width);
        }
        config.host = j.value("host", config.host);
        config.port = j.value("port", config.port);
    } catch (const json::exception& e) {
        throw ParseError(std::string("service config: ") + e.what(), 0);
    }
    return config;
}

auto ServiceConfig::from_file(const fs::path& file) -> ServiceConfig
{
    return from_json(read_json_file(file), file.parent_path());
}

void ServiceConfig::apply_env(const std::function<std::optional<std::string>(const char*)>& getenv)
{
    if (auto v = getenv("GRANTREC_CORPUS")) {
        corpus = *v;
    }
    if (auto v = getenv("GRANTREC_TABLE")) {
        table = *v;
    }
    if (auto v = getenv("GRANTREC_FIXTURES")) {
        fixtures = *v;
    }
    if (auto v = getenv("GRANTREC_HOST")) {
        host = *v;
    }
    auto number = [](const std::string& raw, const char* field) {
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
        if (ec != std::errc() || ptr != raw.data() + raw.size()) {
            throw ValidationError(std::string(field) + " is not a number: '" + raw + "'", field);
        }
        return value;
    };
    if (auto v = getenv("GRANTREC_PORT")) {
        port = static_cast<int>(number(*v, "GRANTREC_PORT"));
    }
    if (auto v = getenv("GRANTREC_MIN_SUPPORT")) {
        mining.min_support = number(*v, "GRANTREC_MIN_SUPPORT");
    }
    if (auto v = getenv("GRANTREC_MIN_CONFIDENCE")) {
        mining.min_confidence = number(*v, "GRANTREC_MIN_CONFIDENCE");
    }
    if (auto v = getenv("GRANTREC_MAX_WIDTH")) {
        mining.max_itemset_width = static_cast<std::size_t>(number(*v, "GRANTREC_MAX_WIDTH"));
    }
}

void ServiceConfig::apply_env()
{
    apply_env([](const char* name) -> std::optional<std::string> {
        const char* value = std::getenv(name);
        return value == nullptr ? std::nullopt : std::optional<std::string>(value);
    });
}

auto load_dataset(const ServiceConfig& config) -> Dataset
{
    if (!config.fixtures.empty()) {
        return load_fixture_dataset(config.fixtures);
    }
    if (config.corpus.empty() || config.table.empty()) {
        throw ValidationError("service config needs either fixtures or both corpus and table", "corpus");
    }
    config.mining.validate();
    return build_dataset(load_workspace(config.corpus), load_keyword_table(config.table), config.mining);
}

void RecommendationQuery::validate() const
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError("alpha must lie in [0, 1]", "alpha");
    }
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ValidationError("threshold must lie in [0, 1]", "threshold");
    }
}

RecommendationService::RecommendationService(Loader loader)
    : loader_(std::move(loader)), data_(std::make_shared<const Dataset>(loader_()))
{}

auto RecommendationService::snapshot() const -> std::shared_ptr<const Dataset>
{
    std::lock_guard lock(mutex_);
    return data_;
}

auto RecommendationService::list_grants() const -> Response
{
    return guarded([&] {
        const auto data = snapshot();
        json grants = json::array();
        for (const auto& g : data->grants) {
            grants.push_back({{"grant_id", g.info.id},
                              {"title", g.info.title},
                              {"surface_documents", g.surface_documents},
                              {"historical_documents", g.historical_documents},
                              {"surface_matches", g.surface.size()},
                              {"historical_matches", g.historical.size()}});
        }
        return Response{200, std::move(grants)};
    });
}

auto RecommendationService::handle_recommendations(const RecommendationQuery& query) const -> Response
{
    return guarded([&] {
        query.validate();
        const auto data = snapshot();
        const GrantChannels* grant = data->find_grant(query.grant_id);
        if (grant == nullptr) {
            throw NotFoundError("unknown grant: " + query.grant_id);
        }
        const auto list = rank_candidates(grant->info.id, grant->surface, grant->historical,
                                          WeightParams::from_alpha(query.alpha), query.threshold);
        return Response{200, json(list)};
    });
}

auto RecommendationService::recommendations(std::string_view grant_id, const std::optional<std::string>& alpha,
                                            const std::optional<std::string>& threshold) const -> Response
{
    return guarded([&] {
        RecommendationQuery query;
        query.grant_id = std::string(grant_id);
        if (alpha) {
            query.alpha = parse_unit_interval(*alpha, "alpha");
        }
        if (threshold) {
            query.threshold = parse_unit_interval(*threshold, "threshold");
        }
        return handle_recommendations(query);
    });
}

auto RecommendationService::researcher(std::string_view id) const -> Response
{
    return guarded([&] {
        const auto data = snapshot();
        const Researcher* researcher = data->find_researcher(id);
        if (researcher == nullptr) {
            throw NotFoundError("unknown researcher: " + std::string(id));
        }
        json body = *researcher;
        json grants = json::array();
        for (const auto& g : data->grants) {
            auto s = std::find_if(g.surface.begin(), g.surface.end(),
                                  [&](const SurfaceMatch& m) { return m.researcher_id == researcher->id; });
            auto h = std::find_if(g.historical.begin(), g.historical.end(),
                                  [&](const HistoricalMatch& m) { return m.researcher_id == researcher->id; });
            if (s == g.surface.end() && h == g.historical.end()) {
                continue;
            }
            json entry{{"grant_id", g.info.id}};
            entry["surface"] = s == g.surface.end() ? json(nullptr) : json(*s);
            entry["historical"] = h == g.historical.end() ? json(nullptr) : json(*h);
            grants.push_back(std::move(entry));
        }
        body["grants"] = std::move(grants);
        return Response{200, std::move(body)};
    });
}

auto RecommendationService::reload() -> Response
{
    return guarded([&] {
        auto fresh = std::make_shared<const Dataset>(loader_());
        const auto count = fresh->grants.size();
        {
            std::lock_guard lock(mutex_);
            data_ = std::move(fresh);
        }
        return Response{200, json{{"status", "reloaded"}, {"grants", count}}};
    });
}

void RecommendationService::install(httplib::Server& server)
{
    auto send = [](httplib::Response& res, const Response& out) {
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json");
    };
    auto param = [](const httplib::Request& req, const char* name) -> std::optional<std::string> {
        if (!req.has_param(name)) {
            return std::nullopt;
        }
        return req.get_param_value(name);
    };

    server.Get("/grants", [this, send](const httplib::Request&, httplib::Response& res) { send(res, list_grants()); });
    server.Get(R"(/grants/([^/]+)/recommendations)",
               [this, send, param](const httplib::Request& req, httplib::Response& res) {
                   send(res, recommendations(req.matches[1].str(), param(req, "alpha"), param(req, "threshold")));
               });
    server.Get(R"(/researchers/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, researcher(req.matches[1].str()));
    });
    server.Post("/reload", [this, send](const httplib::Request&, httplib::Response& res) { send(res, reload()); });
}

}  // namespace grantrec
