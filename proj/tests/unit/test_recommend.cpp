#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "grantrec/error.hpp"
#include "grantrec/recommend.hpp"
#include "grantrec/serialize.hpp"

using namespace grantrec;

namespace {

auto ids(const std::vector<RecommendationEntry>& entries) -> std::vector<std::string>
{
    std::vector<std::string> out;
    for (const auto& e : entries) {
        out.push_back(e.researcher_id);
    }
    return out;
}

auto fixture_list(double alpha, double threshold = default_threshold) -> RecommendationList
{
    const auto surface = fixtures::kayamori_surface();
    const auto historical = fixtures::kayamori_historical();
    return rank_candidates(fixtures::kayamori, surface, historical, WeightParams::from_alpha(alpha), threshold);
}

auto total_of(const RecommendationList& list, const std::string& id) -> double
{
    for (const auto& e : list.entries) {
        if (e.researcher_id == id) {
            return e.total;
        }
    }
    FAIL("missing " << id);
    return 0.0;
}

}  // namespace

TEST_CASE("weights must sum to one")
{
    const WeightParams defaults;
    CHECK(defaults.alpha() == 0.5);
    CHECK(defaults.beta() == 0.5);
    CHECK(WeightParams(0.3, 0.7).beta() == 0.7);
    CHECK_NOTHROW(WeightParams(0.1, 0.9 + 1e-10));
    try {
        WeightParams(0.5, 0.6);
        FAIL("expected InvalidWeightsError");
    } catch (const InvalidWeightsError& e) {
        CHECK(e.field() == "beta");
    }
    try {
        (void)WeightParams::from_alpha(1.3);
        FAIL("expected InvalidWeightsError");
    } catch (const InvalidWeightsError& e) {
        CHECK(e.field() == "alpha");
    }
    CHECK_THROWS_AS(WeightParams(-0.1, 1.1), InvalidWeightsError);
    CHECK_THROWS_AS((void)WeightParams::from_alpha(std::nan("")), InvalidWeightsError);
    CHECK(WeightParams::from_alpha(0.8).beta() == doctest::Approx(0.2));
}

TEST_CASE("total score examples")
{
    CHECK(total_score(0.708, 0.0, {0.5, 0.5}) == doctest::Approx(0.354).epsilon(1e-12));
    CHECK(total_score(0.377, 0.759, {0.5, 0.5}) == doctest::Approx(0.568).epsilon(1e-12));
    CHECK(total_score(0.377, 0.759, {0.2, 0.8}) == doctest::Approx(0.6826).epsilon(1e-12));
    CHECK(std::abs(total_score(0.377, 0.759, {0.2, 0.8}) - 0.682) <= 0.001);
}

TEST_CASE("fusion is linear, monotone and reproduces each channel at the endpoints")
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double s = unit(rng);
        const double h = unit(rng);
        const double a = unit(rng);
        const auto params = WeightParams::from_alpha(a);
        const double t = total_score(s, h, params);
        CHECK(t == doctest::Approx(a * s + (1.0 - a) * h).epsilon(1e-12));
        CHECK(t >= 0.0);
        CHECK(t <= 1.0 + 1e-12);
        CHECK(total_score(std::min(1.0, s + 0.1), h, params) >= t);
        CHECK(total_score(s, std::min(1.0, h + 0.1), params) >= t);
    }

    std::vector<SurfaceMatch> surface;
    std::vector<HistoricalMatch> historical;
    for (int i = 0; i < 12; ++i) {
        const std::string id = "r" + std::to_string(i);
        const double s = std::round(unit(rng) * 20.0) / 20.0;
        const double h = std::round(unit(rng) * 20.0) / 20.0;
        surface.push_back({id, "g", {}, s, s});
        HistoricalMatch m;
        m.researcher_id = id;
        m.grant_id = "g";
        m.normalized_score = h;
        historical.push_back(m);
    }
    auto by_surface = surface;
    sort_surface_matches(by_surface);
    auto by_historical = historical;
    sort_historical_matches(by_historical);

    const auto only_surface = rank_candidates("g", surface, historical, WeightParams::from_alpha(1.0));
    const auto only_historical = rank_candidates("g", surface, historical, WeightParams::from_alpha(0.0));
    for (std::size_t i = 0; i < surface.size(); ++i) {
        CHECK(only_surface.entries[i].researcher_id == by_surface[i].researcher_id);
        CHECK(only_historical.entries[i].researcher_id == by_historical[i].researcher_id);
    }
}

TEST_CASE("fixture totals match the reported table")
{
    for (const auto& column : fixtures::kayamori_totals()) {
        const auto list = fixture_list(column.alpha);
        CHECK(list.params.beta() == doctest::Approx(column.beta));
        for (const auto& [id, expected] : column.totals) {
            INFO(id << " at alpha " << column.alpha);
            CHECK(std::abs(total_of(list, id) - expected) <= 0.001);
        }
    }
}

TEST_CASE("fixture ranking at equal weights")
{
    const auto list = fixture_list(0.5);
    CHECK(ids(list.entries) == std::vector<std::string>{"1-C", "1-A", "1-B", "1-D", "1-E"});
    const auto& c = list.entries.front();
    CHECK(c.matched_keywords == std::vector<std::string>{"Machine Learning", "Neural Network"});
    CHECK(c.matched_rules.size() == 2);
    CHECK(list.entries[1].historical == 0.0);  // 1-A has no historical match
}

TEST_CASE("threshold selection on the fixture")
{
    CHECK(ids(fixture_list(0.5).selected) == std::vector<std::string>{"1-C"});
    CHECK(ids(fixture_list(0.8).selected) == std::vector<std::string>{"1-A", "1-B", "1-C"});
    CHECK(ids(fixture_list(0.2).selected) == std::vector<std::string>{"1-C"});
    const auto list = fixture_list(0.5);
    CHECK(ids(apply_threshold(list, 0.0)) == ids(list.entries));  // NaN rule metrics rule out entry equality
    CHECK(apply_threshold(list, 1.0).empty());
    // 1-C stays selected under every reported weight setting
    for (double alpha : {0.5, 0.8, 0.2}) {
        CHECK(total_of(fixture_list(alpha), "1-C") >= 0.4);
    }
}

TEST_CASE("researcher with a historical-only match")
{
    HistoricalMatch f;
    f.researcher_id = "1-F";
    f.grant_id = "k";
    f.normalized_score = 0.256;
    const auto list = rank_candidates("k", std::vector<SurfaceMatch>{}, std::vector<HistoricalMatch>{f},
                                      WeightParams::from_alpha(0.2));
    REQUIRE(list.entries.size() == 1);
    CHECK(list.entries[0].surface == 0.0);
    CHECK(list.entries[0].total == doctest::Approx(0.8 * 0.256));
    CHECK(list.selected.empty());
}

TEST_CASE("empty channels give an empty list")
{
    const auto list = rank_candidates("g", std::vector<SurfaceMatch>{}, std::vector<HistoricalMatch>{}, {});
    CHECK(list.entries.empty());
    CHECK(list.selected.empty());
    CHECK(list.threshold == default_threshold);
}

TEST_CASE("thresholds are validated and monotone")
{
    const auto list = fixture_list(0.5);
    CHECK_THROWS_AS((void)apply_threshold(list, 1.5), ValidationError);
    CHECK_THROWS_AS((void)apply_threshold(list, -0.01), ValidationError);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const auto list_a = fixture_list(unit(rng));
        double t1 = unit(rng);
        double t2 = unit(rng);
        if (t1 > t2) {
            std::swap(t1, t2);
        }
        const auto low = ids(apply_threshold(list_a, t1));
        const auto high = ids(apply_threshold(list_a, t2));
        CHECK(high.size() <= low.size());
        // preserved order: high is a prefix of low because entries are sorted by total
        CHECK(std::equal(high.begin(), high.end(), low.begin()));
    }
}

TEST_CASE("ties are broken by researcher id")
{
    const std::vector<SurfaceMatch> surface{
        {"z", "g", {}, 0.5, 0.5}, {"a", "g", {}, 0.5, 0.5}, {"m", "g", {}, 0.7, 0.7}};
    const auto list = rank_candidates("g", surface, std::vector<HistoricalMatch>{}, {});
    CHECK(ids(list.entries) == std::vector<std::string>{"m", "a", "z"});
}

TEST_CASE("table report")
{
    const auto report = render_report(fixture_list(0.5), "table");
    CHECK(report.find("Researcher") != std::string::npos);
    CHECK(report.find("0.568") != std::string::npos);
    CHECK(report.find("{Reinforcement Learning} → {Machine Learning}") != std::string::npos);
    CHECK(report.find("Selected: 1 of 5 (two or fewer selected") != std::string::npos);
    CHECK(report == render_report(fixture_list(0.5), "table"));
    CHECK(render_report(fixture_list(0.8), "table").find("Selected: 3 of 5 (more than two") != std::string::npos);

    const auto empty = render_report(
        rank_candidates("g", std::vector<SurfaceMatch>{}, std::vector<HistoricalMatch>{}, {}), "table");
    CHECK(empty.find("Researcher") != std::string::npos);
    CHECK(empty.find("Selected: 0 of 0") != std::string::npos);

    CHECK_THROWS_AS((void)render_report(fixture_list(0.5), "xml"), UsageError);
}

TEST_CASE("three-column total table")
{
    const std::vector<RecommendationList> lists{fixture_list(0.5), fixture_list(0.8), fixture_list(0.2)};
    const auto table = render_total_table(lists);
    CHECK(table.find("alpha = 0.50, beta = 0.50") != std::string::npos);
    CHECK(table.find("alpha = 0.20, beta = 0.80") != std::string::npos);
    CHECK(table.find("0.568 *") != std::string::npos);
    CHECK(table.find("0.683 *") != std::string::npos);  // 0.6826 printed with three decimals
    CHECK(table.find("0.354 ") != std::string::npos);
}

TEST_CASE("JSON report round-trips")
{
    auto list = fixture_list(0.8);
    // unknown rule metrics are written as null and read back as NaN; use known ones here
    for (auto& e : list.entries) {
        for (auto& r : e.matched_rules) {
            r.support = 0.1;
            r.confidence = 0.5;
            r.lift = 1.25;
        }
    }
    list.selected = apply_threshold(list, list.threshold);
    const auto text = render_report(list, "json");
    const auto back = nlohmann::json::parse(text).get<RecommendationList>();
    CHECK(back == list);

    const auto j = nlohmann::json::parse(text);
    CHECK(j.at("params").at("alpha") == 0.8);
    CHECK(j.at("selected") == nlohmann::json::array({"1-A", "1-B", "1-C"}));
    CHECK(j.at("entries").at(0).at("selected") == true);
}

TEST_CASE("unknown metrics serialize as null")
{
    const auto list = fixture_list(0.5);
    const auto j = nlohmann::json(list);
    const auto& rule = j.at("entries").at(0).at("matched_rules").at(0);
    CHECK(rule.at("lift").is_null());
    const auto back = j.get<RecommendationList>();
    CHECK(std::isnan(back.entries[0].matched_rules[0].lift));
    CHECK(back.entries[0].total == list.entries[0].total);
}
