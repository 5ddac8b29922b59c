#include <doctest.h>

#include <atomic>
#include <chrono>
#include <thread>

#include <httplib.h>

#include "grantrec/error.hpp"
#include "grantrec/serialize.hpp"
#include "grantrec/service.hpp"

using namespace grantrec;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const fs::path fixtures_dir = fs::path(GRANTREC_TEST_DATA) / "fixtures";
const fs::path corpus_dir = fs::path(GRANTREC_TEST_DATA) / "corpus";

auto fixture_loader() -> RecommendationService::Loader
{
    return [] { return load_fixture_dataset(fixtures_dir / "manifest.json"); };
}

auto selected_ids(const json& body) -> std::vector<std::string>
{
    return body.at("selected").get<std::vector<std::string>>();
}

// Runs an httplib server on an ephemeral loopback port for the lifetime of the object.
class LocalServer {
public:
    LocalServer()
    {
        port_ = server_.bind_to_any_port("127.0.0.1");
        REQUIRE(port_ > 0);
    }
    ~LocalServer()
    {
        server_.stop();
        if (thread_.joinable()) {
            thread_.join();
        }
    }
    LocalServer(const LocalServer&) = delete;
    auto operator=(const LocalServer&) -> LocalServer& = delete;

    auto server() -> httplib::Server& { return server_; }
    auto port() const -> int { return port_; }
    auto url(const std::string& path) const -> std::string
    {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }
    void start()
    {
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }

private:
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
};

}  // namespace

TEST_CASE("fixture dataset")
{
    const auto data = load_fixture_dataset(fixtures_dir / "manifest.json");
    REQUIRE(data.grants.size() == 1);
    const auto& g = data.grants[0];
    CHECK(g.info.id == "kayamori");
    CHECK(g.surface.size() == 5);
    CHECK(g.historical.size() == 1);
    CHECK(std::isnan(g.surface[0].raw_score));
    CHECK(g.surface[0].researcher_id == "1-A");
    CHECK(data.researchers.size() == 5);  // two listed, three added from the channels
    CHECK(data.find_researcher("1-C")->display_name == "Researcher 1-C");
    CHECK(data.find_researcher("1-E")->display_name == "1-E");
}

TEST_CASE("recommendations at the reported settings")
{
    const RecommendationService service(fixture_loader());
    auto equal = service.handle_recommendations({"kayamori", 0.5, 0.4});
    REQUIRE(equal.status == 200);
    CHECK(selected_ids(equal.body) == std::vector<std::string>{"1-C"});
    CHECK(equal.body.at("entries").at(0).at("matched_rules").size() == 2);
    CHECK(equal.body.at("entries").at(0).at("matched_keywords").size() == 2);

    auto surface_heavy = service.recommendations("kayamori", "0.8", "0.4");
    REQUIRE(surface_heavy.status == 200);
    CHECK(selected_ids(surface_heavy.body) == std::vector<std::string>{"1-A", "1-B", "1-C"});
    CHECK(surface_heavy.body.at("params").at("beta").get<double>() == doctest::Approx(0.2));

    auto defaults = service.recommendations("kayamori", std::nullopt, std::nullopt);
    CHECK(defaults.body == equal.body);
}

TEST_CASE("request validation")
{
    const RecommendationService service(fixture_loader());
    auto bad_alpha = service.recommendations("kayamori", "1.3", std::nullopt);
    CHECK(bad_alpha.status == 400);
    CHECK(bad_alpha.body.at("field") == "alpha");
    CHECK(bad_alpha.body.contains("error"));

    auto bad_threshold = service.handle_recommendations({"kayamori", 0.5, -0.2});
    CHECK(bad_threshold.status == 400);
    CHECK(bad_threshold.body.at("field") == "threshold");

    auto not_a_number = service.recommendations("kayamori", "abc", std::nullopt);
    CHECK(not_a_number.status == 400);
    CHECK(not_a_number.body.at("field") == "alpha");
    CHECK(service.recommendations("kayamori", "nan", std::nullopt).status == 400);
    CHECK(service.recommendations("kayamori", "0.5x", std::nullopt).status == 400);

    auto missing = service.recommendations("nope", "0.5", "0.4");
    CHECK(missing.status == 404);
    CHECK_FALSE(missing.body.contains("field"));
}

TEST_CASE("grant list and researcher view are read-only")
{
    const RecommendationService service(fixture_loader());
    const auto first = service.list_grants();
    CHECK(first.status == 200);
    REQUIRE(first.body.size() == 1);
    CHECK(first.body[0].at("grant_id") == "kayamori");
    CHECK(first.body[0].at("surface_documents") == 5);
    CHECK(service.list_grants().body == first.body);

    const auto c = service.researcher("1-C");
    REQUIRE(c.status == 200);
    CHECK(c.body.at("display_name") == "Researcher 1-C");
    REQUIRE(c.body.at("grants").size() == 1);
    CHECK(c.body.at("grants")[0].at("historical").at("normalized_score") == 0.759);
    const auto a = service.researcher("1-A");
    CHECK(a.body.at("grants")[0].at("historical").is_null());
    CHECK(service.researcher("zzz").status == 404);
}

TEST_CASE("empty dataset")
{
    const RecommendationService service([] { return Dataset{}; });
    CHECK(service.list_grants().body == json::array());
}

TEST_CASE("corpus-backed dataset lists the three grants")
{
    const auto dir = fs::temp_directory_path() / "grantrec_service";
    fs::create_directories(dir);
    auto stop = default_stopwords();
    stop.merge(read_phrase_list(corpus_dir / "stopwords.txt"));
    const auto table = load_keyword_table(corpus_dir / "keywords.tsv");
    const auto profile =
        TokenizerProfile("default", stop, read_phrase_list(corpus_dir / "noun_lexicon.txt")).with_lexicon(table.keywords());
    save_workspace(ingest_directory(corpus_dir, profile), dir / "ws.json");

    ServiceConfig config;
    config.corpus = dir / "ws.json";
    config.table = corpus_dir / "keywords.tsv";
    const RecommendationService service([config] { return load_dataset(config); });
    const auto grants = service.list_grants().body;
    REQUIRE(grants.size() == 3);
    CHECK(grants[0].at("grant_id") == "kayamori");
    CHECK(grants[0].at("title") == "Kayamori Foundation of Informational Science Advancement");
    CHECK(grants[0].at("surface_documents") == 2);
    CHECK(grants[0].at("historical_documents") == 1);
    const auto list = service.handle_recommendations({"kayamori", 0.5, 0.0});
    REQUIRE(list.status == 200);
    CHECK(list.body.at("entries").size() == 6);
    fs::remove_all(dir);
}

TEST_CASE("reload swaps the dataset and keeps the old one on failure")
{
    std::atomic<int> mode{0};
    RecommendationService service([&mode]() -> Dataset {
        if (mode == 2) {
            throw ParseError("broken manifest", 0);
        }
        auto data = load_fixture_dataset(fixtures_dir / "manifest.json");
        if (mode == 1) {
            data.grants.push_back({{"second", "Second"}, 0, 0, {}, {}});
        }
        return data;
    });
    CHECK(service.list_grants().body.size() == 1);
    mode = 1;
    const auto ok = service.reload();
    CHECK(ok.status == 200);
    CHECK(ok.body.at("grants") == 2);
    CHECK(service.list_grants().body.size() == 2);
    mode = 2;
    const auto failed = service.reload();
    CHECK(failed.status == 500);
    CHECK(failed.body.at("error").get<std::string>().find("broken") != std::string::npos);
    CHECK(service.list_grants().body.size() == 2);
}

TEST_CASE("configuration file and environment overrides")
{
    auto config = ServiceConfig::from_file(fixtures_dir / "service.json");
    CHECK(config.fixtures == fixtures_dir / "manifest.json");
    CHECK(config.port == 8080);
    CHECK(config.mining.min_support == 0.05);

    std::map<std::string, std::string> env{{"GRANTREC_PORT", "9090"},
                                           {"GRANTREC_MIN_SUPPORT", "0.2"},
                                           {"GRANTREC_HOST", "0.0.0.0"}};
    config.apply_env([&](const char* name) -> std::optional<std::string> {
        auto it = env.find(name);
        return it == env.end() ? std::nullopt : std::optional<std::string>(it->second);
    });
    CHECK(config.port == 9090);
    CHECK(config.host == "0.0.0.0");
    CHECK(config.mining.min_support == 0.2);
    CHECK(load_dataset(config).grants.size() == 1);

    env = {{"GRANTREC_MIN_CONFIDENCE", "high"}};
    CHECK_THROWS_AS(config.apply_env([&](const char* name) -> std::optional<std::string> {
        auto it = env.find(name);
        return it == env.end() ? std::nullopt : std::optional<std::string>(it->second);
    }),
                    ValidationError);

    const auto from_json = ServiceConfig::from_json(
        json{{"corpus", "ws.json"}, {"table", "/abs/keywords.tsv"}, {"mining", {{"max_itemset_width", 4}}}},
        "/base");
    CHECK(from_json.corpus == fs::path("/base/ws.json"));
    CHECK(from_json.table == fs::path("/abs/keywords.tsv"));
    CHECK(from_json.mining.max_itemset_width == 4);
    CHECK_THROWS_AS((void)load_dataset(ServiceConfig{}), ValidationError);
    CHECK_THROWS_AS((void)ServiceConfig::from_json(json{{"port", "eighty"}}, "/"), ParseError);
}

TEST_CASE("HTTP endpoints on loopback")
{
    RecommendationService service(fixture_loader());
    LocalServer local;
    service.install(local.server());
    local.start();

    httplib::Client client("127.0.0.1", local.port());
    auto grants = client.Get("/grants");
    REQUIRE(grants);
    CHECK(grants->status == 200);
    CHECK(grants->get_header_value("Content-Type") == "application/json");
    CHECK(json::parse(grants->body).size() == 1);

    auto rec = client.Get("/grants/kayamori/recommendations?alpha=0.8&threshold=0.4");
    REQUIRE(rec);
    CHECK(rec->status == 200);
    const auto body = json::parse(rec->body);
    CHECK(selected_ids(body) == std::vector<std::string>{"1-A", "1-B", "1-C"});
    std::vector<std::string> order;
    for (const auto& e : body.at("entries")) {
        order.push_back(e.at("researcher_id"));
    }
    CHECK(order == std::vector<std::string>{"1-A", "1-B", "1-C", "1-D", "1-E"});

    auto bad = client.Get("/grants/kayamori/recommendations?alpha=1.3");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    CHECK(json::parse(bad->body).at("field") == "alpha");

    auto missing = client.Get("/grants/none/recommendations");
    REQUIRE(missing);
    CHECK(missing->status == 404);

    auto person = client.Get("/researchers/1-C");
    REQUIRE(person);
    CHECK(person->status == 200);

    auto reload = client.Post("/reload");
    REQUIRE(reload);
    CHECK(reload->status == 200);

    // per-request latency on fixture data
    const auto start = std::chrono::steady_clock::now();
    constexpr int requests = 50;
    for (int i = 0; i < requests; ++i) {
        auto r = client.Get("/grants/kayamori/recommendations?alpha=0.35&threshold=0.4");
        REQUIRE(r);
        CHECK(r->status == 200);
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    CHECK(elapsed.count() / requests < 50.0);
}

TEST_CASE("concurrent reads during reload")
{
    RecommendationService service(fixture_loader());
    LocalServer local;
    service.install(local.server());
    local.start();

    std::atomic<int> failures{0};
    std::vector<std::thread> readers;
    for (int t = 0; t < 4; ++t) {
        readers.emplace_back([&] {
            httplib::Client client("127.0.0.1", local.port());
            for (int i = 0; i < 25; ++i) {
                auto r = client.Get("/grants/kayamori/recommendations?alpha=0.5");
                if (!r || r->status != 200 || json::parse(r->body).at("selected").size() != 1) {
                    ++failures;
                }
            }
        });
    }
    httplib::Client admin("127.0.0.1", local.port());
    for (int i = 0; i < 10; ++i) {
        auto r = admin.Post("/reload");
        CHECK(r);
    }
    for (auto& t : readers) {
        t.join();
    }
    CHECK(failures == 0);
}

TEST_CASE("fetching remote documents")
{
    LocalServer local;
    local.server().Get("/call.html", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("<p>grant call</p>", "text/html; charset=utf-8");
    });
    local.server().Get("/abstract.txt", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("plain abstract", "text/plain");
    });
    local.server().Get("/moved", [](const httplib::Request&, httplib::Response& res) {
        res.set_redirect("/abstract.txt");
    });
    local.server().Get("/report.pdf", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(std::string("%PDF-1.4\x00\x01", 10), "application/pdf");
    });
    local.server().Get("/latin1", [](const httplib::Request&, httplib::Response& res) {
        res.set_content("caf\xe9", "text/plain");
    });
    local.server().Get("/broken", [](const httplib::Request&, httplib::Response& res) {
        res.status = 503;
    });
    local.start();

    const Owner owner{OwnerRole::grant, "g"};
    const auto page = fetch_remote(local.url("/call.html"), owner);
    CHECK(page.kind == DocumentKind::html);
    CHECK(page.body == "<p>grant call</p>");
    CHECK(page.origin == local.url("/call.html"));
    CHECK(page.owner == owner);

    CHECK(fetch_remote(local.url("/abstract.txt"), owner).kind == DocumentKind::plain_text);
    CHECK(fetch_remote(local.url("/moved"), owner).body == "plain abstract");
    CHECK_THROWS_AS((void)fetch_remote(local.url("/missing"), owner), NotFoundError);
    CHECK_THROWS_AS((void)fetch_remote(local.url("/report.pdf"), owner), UnsupportedContentError);
    CHECK_THROWS_AS((void)fetch_remote(local.url("/latin1"), owner), DecodeError);
    try {
        (void)fetch_remote(local.url("/broken"), owner);
        FAIL("expected FetchError");
    } catch (const FetchError& e) {
        CHECK(e.uri() == local.url("/broken"));
        CHECK(e.status() == 503);
    }
    CHECK_THROWS_AS((void)fetch_remote("http://127.0.0.1:1/unreachable", owner), FetchError);
    CHECK_THROWS_AS((void)fetch_remote("ftp://example.org/file", owner), ValidationError);
}
