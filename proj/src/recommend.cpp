#include "grantrec/recommend.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "grantrec/error.hpp"
#include "grantrec/serialize.hpp"

namespace grantrec {

namespace {

constexpr double weight_sum_tolerance = 1e-9;

auto fixed3(double value) -> std::string
{
    if (std::isnan(value)) {
        return "n/a";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", value);
    return buf;
}

auto fixed2(double value) -> std::string
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

auto join(const std::vector<std::string>& parts, std::string_view separator) -> std::string
{
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) {
            out += separator;
        }
        out += part;
    }
    return out;
}

// Code points, not bytes, so Japanese names and arrows pad correctly enough.
auto display_width(std::string_view s) -> std::size_t
{
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

auto render_rows(const std::vector<std::vector<std::string>>& rows) -> std::string
{
    std::vector<std::size_t> widths;
    for (const auto& row : rows) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], display_width(row[c]));
        }
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::string line;
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            if (c > 0) {
                line += " | ";
            }
            line += rows[r][c];
            if (c + 1 < rows[r].size()) {
                line.append(widths[c] - display_width(rows[r][c]), ' ');
            }
        }
        out << line << '\n';
        if (r == 0) {
            std::size_t rule = 0;
            for (std::size_t c = 0; c < widths.size(); ++c) {
                rule += widths[c] + (c > 0 ? 3 : 0);
            }
            out << std::string(rule, '-') << '\n';
        }
    }
    return out.str();
}

auto weights_label(const WeightParams& params) -> std::string
{
    return "alpha = " + fixed2(params.alpha()) + ", beta = " + fixed2(params.beta());
}

}  // namespace

WeightParams::WeightParams(double alpha, double beta) : alpha_(alpha), beta_(beta)
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidWeightsError("alpha must lie in [0, 1]", "alpha");
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw InvalidWeightsError("beta must lie in [0, 1]", "beta");
    }
    if (std::abs(alpha + beta - 1.0) > weight_sum_tolerance) {
        throw InvalidWeightsError("alpha + beta must equal 1", "beta");
    }
}

auto WeightParams::from_alpha(double alpha) -> WeightParams
{
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw InvalidWeightsError("alpha must lie in [0, 1]", "alpha");
    }
    return WeightParams(alpha, 1.0 - alpha);
}

auto total_score(double surface, double historical, const WeightParams& params) -> double
{
    return params.alpha() * surface + params.beta() * historical;
}

auto apply_threshold(std::span<const RecommendationEntry> entries, double threshold)
    -> std::vector<RecommendationEntry>
{
    if (!(threshold >= 0.0 && threshold <= 1.0)) {
        throw ValidationError("threshold must lie in [0, 1]", "threshold");
    }
    std::vector<RecommendationEntry> selected;
    std::copy_if(entries.begin(), entries.end(), std::back_inserter(selected),
                 [threshold](const RecommendationEntry& e) { return e.total >= threshold; });
    return selected;
}

auto apply_threshold(const RecommendationList& list, double threshold) -> std::vector<RecommendationEntry>
{
    return apply_threshold(list.entries, threshold);
}

auto rank_candidates(std::string grant_id, std::span<const SurfaceMatch> surface,
                     std::span<const HistoricalMatch> historical, const WeightParams& params, double threshold)
    -> RecommendationList
{
    RecommendationList list;
    list.grant_id = std::move(grant_id);
    list.params = params;
    list.threshold = threshold;

    std::map<std::string, RecommendationEntry> by_id;
    for (const auto& match : surface) {
        auto& entry = by_id[match.researcher_id];
        entry.researcher_id = match.researcher_id;
        entry.surface = match.normalized_score;
        entry.matched_keywords = match.matched_keywords;
    }
    for (const auto& match : historical) {
        auto& entry = by_id[match.researcher_id];
        entry.researcher_id = match.researcher_id;
        entry.historical = match.normalized_score;
        entry.matched_rules = match.matched_rules;
    }
    for (auto& [id, entry] : by_id) {
        entry.total = total_score(entry.surface, entry.historical, params);
        list.entries.push_back(std::move(entry));
    }
    std::stable_sort(list.entries.begin(), list.entries.end(),
                     [](const RecommendationEntry& a, const RecommendationEntry& b) { return a.total > b.total; });
    list.selected = apply_threshold(list.entries, threshold);
    return list;
}

auto render_report(const RecommendationList& list, std::string_view format) -> std::string
{
    if (format == "json") {
        return dump(nlohmann::json(list));
    }
    if (format != "table") {
        throw UsageError("unsupported report format '" + std::string(format) + "' (expected table or json)");
    }

    std::ostringstream out;
    out << "Grant: " << list.grant_id << "  (" << weights_label(list.params)
        << ", threshold = " << fixed3(list.threshold) << ")\n\n";

    std::vector<std::vector<std::string>> rows;
    rows.push_back({"Researcher", "Surface", "Historical", "Total", "Selected", "Matched KAKEN keywords",
                    "Matched association rules"});
    for (const auto& entry : list.entries) {
        std::vector<std::string> rules;
        for (const auto& rule : entry.matched_rules) {
            rules.push_back(to_string(rule) + " (lift " + fixed3(rule.lift) + ")");
        }
        const bool selected = entry.total >= list.threshold;
        rows.push_back({entry.researcher_id, fixed3(entry.surface), fixed3(entry.historical), fixed3(entry.total),
                        selected ? "yes" : "no", join(entry.matched_keywords, ", "), join(rules, "; ")});
    }
    out << render_rows(rows);

    const auto count = list.selected.size();
    out << "\nSelected: " << count << " of " << list.entries.size();
    if (count >= 1 && count <= 2) {
        out << " (two or fewer selected: weights suit a recommendation letter)";
    } else if (count > 2) {
        out << " (more than two selected: consider other weights or a higher threshold)";
    }
    out << '\n';
    return out.str();
}

auto render_total_table(std::span<const RecommendationList> lists) -> std::string
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Researcher"};
    for (const auto& list : lists) {
        header.push_back(weights_label(list.params));
    }
    rows.push_back(std::move(header));
    if (!lists.empty()) {
        for (const auto& entry : lists.front().entries) {
            std::vector<std::string> row{entry.researcher_id};
            for (const auto& list : lists) {
                auto it = std::find_if(list.entries.begin(), list.entries.end(),
                                       [&](const RecommendationEntry& e) { return e.researcher_id == entry.researcher_id; });
                if (it == list.entries.end()) {
                    row.emplace_back("-");
                } else {
                    row.push_back(fixed3(it->total) + (it->total >= list.threshold ? " *" : ""));
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return render_rows(rows);
}

}  // namespace grantrec
