#include "grantrec/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "grantrec/error.hpp"
#include "grantrec/serialize.hpp"
#include "grantrec/text.hpp"

namespace grantrec {

namespace fs = std::filesystem;

namespace {

auto read_file(const fs::path& file) -> std::string
{
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw NotFoundError("cannot open " + file.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

auto sorted_entries(const fs::path& dir, bool directories) -> std::vector<fs::path>
{
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) {
        return out;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (directories ? entry.is_directory() : entry.is_regular_file()) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

auto kind_of(const fs::path& file) -> std::optional<DocumentKind>
{
    const auto ext = file.extension().string();
    if (ext == ".html" || ext == ".htm") {
        return DocumentKind::html;
    }
    if (ext == ".txt") {
        return DocumentKind::plain_text;
    }
    return std::nullopt;
}

void add_documents(const fs::path& root, const fs::path& dir, const Owner& owner, std::vector<RawDocument>& out,
                   std::set<std::string>* ids)
{
    for (const auto& file : sorted_entries(dir, false)) {
        const auto kind = kind_of(file);
        if (!kind) {
            continue;
        }
        RawDocument doc;
        doc.id = fs::relative(file, root).generic_string();
        doc.origin = file.string();
        doc.kind = *kind;
        doc.body = read_file(file);
        doc.owner = owner;
        if (ids != nullptr) {
            ids->insert(doc.id);
        }
        out.push_back(std::move(doc));
    }
}

struct KakenFile {
    std::string name;
    std::set<std::string> keywords;
    std::string abstract;
};

auto parse_kaken(const std::string& body, const std::string& origin) -> KakenFile
{
    if (!text::is_valid_utf8(body)) {
        throw DecodeError(origin);
    }
    KakenFile out;
    std::istringstream in(body);
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (text::trim(line).empty()) {
            break;
        }
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ParseError(origin + ": expected 'key: value' header line", number);
        }
        const std::string key = text::fold_case(text::trim(std::string_view(line).substr(0, colon)));
        const std::string value = text::nfc(text::trim(std::string_view(line).substr(colon + 1)));
        if (key == "name") {
            out.name = value;
        } else if (key == "keywords") {
            std::size_t start = 0;
            while (start <= value.size()) {
                const auto semi = value.find(';', start);
                const auto piece = text::trim(std::string_view(value).substr(
                    start, semi == std::string::npos ? std::string::npos : semi - start));
                if (!piece.empty()) {
                    out.keywords.emplace(piece);
                }
                if (semi == std::string::npos) {
                    break;
                }
                start = semi + 1;
            }
        }
    }
    std::ostringstream rest;
    rest << in.rdbuf();
    out.abstract = rest.str();
    return out;
}

}  // namespace

auto Workspace::find_grant(std::string_view id) const -> const GrantInfo*
{
    auto it = std::find_if(grants.begin(), grants.end(), [&](const GrantInfo& g) { return g.id == id; });
    return it == grants.end() ? nullptr : &*it;
}

auto Workspace::find_researcher(std::string_view id) const -> const Researcher*
{
    auto it = std::find_if(researchers.begin(), researchers.end(), [&](const Researcher& r) { return r.id == id; });
    return it == researchers.end() ? nullptr : &*it;
}

auto read_sources(const fs::path& root, std::vector<GrantInfo>& grants, std::vector<Researcher>& researchers)
    -> std::vector<RawDocument>
{
    if (!fs::is_directory(root)) {
        throw NotFoundError("input root is not a directory: " + root.string());
    }
    std::vector<RawDocument> sources;

    for (const auto& dir : sorted_entries(root / "grants", true)) {
        GrantInfo grant;
        grant.id = dir.filename().string();
        grant.title = grant.id;
        if (fs::exists(dir / "title.txt")) {
            const auto title = read_file(dir / "title.txt");
            if (!text::is_valid_utf8(title)) {
                throw DecodeError((dir / "title.txt").string());
            }
            if (const auto trimmed = text::trim(title); !trimmed.empty()) {
                grant.title = text::nfc(trimmed);
            }
        }
        add_documents(root, dir / "surface", {OwnerRole::grant, grant.id}, sources, nullptr);
        add_documents(root, dir / "historical", {OwnerRole::historical, grant.id}, sources, nullptr);
        grants.push_back(std::move(grant));
    }

    for (const auto& dir : sorted_entries(root / "researchers", true)) {
        Researcher researcher;
        researcher.id = dir.filename().string();
        researcher.display_name = researcher.id;
        const Owner owner{OwnerRole::researcher, researcher.id};
        add_documents(root, dir / "papers", owner, sources, &researcher.paper_document_ids);

        const fs::path kaken = dir / "kaken.txt";
        if (fs::exists(kaken)) {
            auto parsed = parse_kaken(read_file(kaken), kaken.string());
            if (!parsed.name.empty()) {
                researcher.display_name = parsed.name;
            }
            researcher.kaken_keywords = std::move(parsed.keywords);
            if (!text::trim(parsed.abstract).empty()) {
                RawDocument doc;
                doc.id = fs::relative(kaken, root).generic_string();
                doc.origin = kaken.string();
                doc.kind = DocumentKind::plain_text;
                doc.body = std::move(parsed.abstract);
                doc.owner = owner;
                researcher.past_kaken_document_ids.insert(doc.id);
                sources.push_back(std::move(doc));
            }
        }
        researchers.push_back(std::move(researcher));
    }
    return sources;
}

auto ingest_directory(const fs::path& root, const TokenizerProfile& profile) -> Workspace
{
    Workspace workspace;
    const auto sources = read_sources(root, workspace.grants, workspace.researchers);
    workspace.corpus = ingest_corpus(sources, profile);
    return workspace;
}

auto workspace_to_json(const Workspace& workspace) -> nlohmann::json
{
    nlohmann::json j = corpus_to_json(workspace.corpus);
    nlohmann::json grants = nlohmann::json::array();
    for (const auto& grant : workspace.grants) {
        grants.push_back({{"id", grant.id}, {"title", grant.title}});
    }
    j["grants"] = std::move(grants);
    j["researchers"] = workspace.researchers;
    return j;
}

auto workspace_from_json(const nlohmann::json& j) -> Workspace
{
    Workspace workspace;
    try {
        workspace.corpus = corpus_from_json(j);
        for (const auto& g : j.at("grants")) {
            workspace.grants.push_back({g.at("id").get<std::string>(), g.value("title", g.at("id").get<std::string>())});
        }
        workspace.researchers = j.at("researchers").get<std::vector<Researcher>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed corpus file: ") + e.what(), 0);
    }
    return workspace;
}

void save_workspace(const Workspace& workspace, const fs::path& file)
{
    write_json_file(file, workspace_to_json(workspace));
}

auto load_workspace(const fs::path& file) -> Workspace
{
    return workspace_from_json(read_json_file(file));
}

auto grant_rules(const Workspace& workspace, std::string_view grant_id, const MiningParams& params)
    -> std::vector<AssociationRule>
{
    if (workspace.find_grant(grant_id) == nullptr) {
        throw NotFoundError("unknown grant: " + std::string(grant_id));
    }
    const auto& profile = workspace.corpus.profile();
    const auto historical =
        build_transactions(workspace.corpus, historical_documents_of(std::string(grant_id)), profile);
    const auto papers = build_transactions(workspace.corpus, researcher_documents(), profile);
    const auto merged = merge_dbs(historical, papers);
    if (merged.transaction_count() == 0) {
        return {};
    }
    return mine_rules(merged, params);
}

auto surface_channel(const Workspace& workspace, std::string_view grant_id, const KeywordTable& table)
    -> std::vector<SurfaceMatch>
{
    if (workspace.find_grant(grant_id) == nullptr) {
        throw NotFoundError("unknown grant: " + std::string(grant_id));
    }
    return surface_rankings(grant_id, workspace.researchers, workspace.corpus, table);
}

auto historical_channel(const Workspace& workspace, std::string_view grant_id, std::span<const AssociationRule> rules)
    -> std::vector<HistoricalMatch>
{
    std::vector<HistoricalMatch> out;
    for (const auto& researcher : workspace.researchers) {
        auto match = historical_score(researcher.id, std::string(grant_id), rules,
                                      researcher_match_set(researcher, workspace.corpus));
        if (!match.matched_rules.empty()) {
            out.push_back(std::move(match));
        }
    }
    sort_historical_matches(out);
    return out;
}

}  // namespace grantrec
