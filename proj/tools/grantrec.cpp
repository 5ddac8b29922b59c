// Command-line front end: ingest → score → mine → recommend, plus the HTTP service.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "grantrec/error.hpp"
#include "grantrec/recommend.hpp"
#include "grantrec/serialize.hpp"
#include "grantrec/service.hpp"
#include "grantrec/taxonomy.hpp"
#include "grantrec/workspace.hpp"

namespace {

using namespace grantrec;

void emit(const std::string& out_path, const std::string& content)
{
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + out_path);
    }
    out << content;
}

void add_mining_options(CLI::App* cmd, MiningParams& params)
{
    cmd->add_option("--min-support", params.min_support, "Minimum rule support")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--min-confidence", params.min_confidence, "Minimum rule confidence")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--max-width", params.max_itemset_width, "Largest |X ∪ Y| considered")->check(CLI::Range(1, 16));
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Grant-to-researcher recommendation: TF-IDF keyword matching fused with association-rule lift"};
    app.require_subcommand(1);

    // ingest
    std::string root, corpus_out, stopwords_file, lexicon_file, ingest_table;
    auto* ingest = app.add_subcommand("ingest", "Read an input directory into a corpus file");
    ingest->add_option("--root", root, "Input root with grants/ and researchers/")->required()->check(CLI::ExistingDirectory);
    ingest->add_option("--out", corpus_out, "Corpus JSON to write")->required();
    ingest->add_option("--stopwords", stopwords_file, "Extra stopwords, one per line")->check(CLI::ExistingFile);
    ingest->add_option("--lexicon", lexicon_file, "Noun lexicon, one phrase per line")->check(CLI::ExistingFile);
    ingest->add_option("--table", ingest_table, "Keyword table whose keywords join the lexicon")->check(CLI::ExistingFile);

    // taxonomy stats
    std::string stats_table;
    auto* taxonomy = app.add_subcommand("taxonomy", "Keyword table utilities");
    taxonomy->require_subcommand(1);
    auto* stats = taxonomy->add_subcommand("stats", "Print level counts of a keyword table");
    stats->add_option("--table", stats_table, "keywords.tsv")->required()->check(CLI::ExistingFile);

    // score surface / historical
    std::string grant, corpus_file, table_file, out_file;
    MiningParams mining;
    auto* score = app.add_subcommand("score", "Compute one channel for a grant");
    score->require_subcommand(1);
    auto* surface = score->add_subcommand("surface", "TF-IDF keyword channel");
    surface->add_option("--grant", grant, "Grant id")->required();
    surface->add_option("--corpus", corpus_file, "Corpus JSON")->required()->check(CLI::ExistingFile);
    surface->add_option("--table", table_file, "keywords.tsv")->required()->check(CLI::ExistingFile);
    surface->add_option("--out", out_file, "Output JSON (default stdout)");
    auto* historical = score->add_subcommand("historical", "Association-rule channel");
    historical->add_option("--grant", grant, "Grant id")->required();
    historical->add_option("--corpus", corpus_file, "Corpus JSON")->required()->check(CLI::ExistingFile);
    historical->add_option("--out", out_file, "Output JSON (default stdout)");
    add_mining_options(historical, mining);

    // mine
    auto* mine = app.add_subcommand("mine", "Mine association rules for a grant");
    mine->add_option("--grant", grant, "Grant id")->required();
    mine->add_option("--corpus", corpus_file, "Corpus JSON")->required()->check(CLI::ExistingFile);
    mine->add_option("--out", out_file, "Output JSON (default stdout)");
    add_mining_options(mine, mining);

    // recommend
    double alpha = 0.5;
    double threshold = default_threshold;
    std::string surface_file, historical_file, format = "table";
    auto* recommend = app.add_subcommand("recommend", "Fuse both channels and select researchers");
    recommend->add_option("--grant", grant, "Grant id")->required();
    recommend->add_option("--alpha", alpha, "Surface weight; beta = 1 - alpha")->check(CLI::Range(0.0, 1.0));
    recommend->add_option("--threshold", threshold, "Selection threshold on the total")->check(CLI::Range(0.0, 1.0));
    recommend->add_option("--surface", surface_file, "surface.json from `score surface`")->check(CLI::ExistingFile);
    recommend->add_option("--historical", historical_file, "historical.json from `score historical`")
        ->check(CLI::ExistingFile);
    recommend->add_option("--format", format, "table or json");
    recommend->add_option("--out", out_file, "Output file (default stdout)");

    // serve
    std::string config_file, host;
    int port = 0;
    auto* serve = app.add_subcommand("serve", "Serve recommendations over HTTP");
    serve->add_option("--config", config_file, "Service config JSON")->required()->check(CLI::ExistingFile);
    serve->add_option("--host", host, "Bind address (overrides config)");
    serve->add_option("--port", port, "Port (overrides config)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            auto stop = default_stopwords();
            if (!stopwords_file.empty()) {
                stop.merge(read_phrase_list(stopwords_file));
            }
            std::set<std::string> lexicon;
            if (!lexicon_file.empty()) {
                lexicon = read_phrase_list(lexicon_file);
            }
            TokenizerProfile profile("default", std::move(stop), std::move(lexicon));
            if (!ingest_table.empty()) {
                profile = profile.with_lexicon(load_keyword_table(ingest_table).keywords());
            }
            const auto workspace = ingest_directory(root, profile);
            save_workspace(workspace, corpus_out);
            std::cerr << "ingested " << workspace.corpus.document_count() << " documents, " << workspace.grants.size()
                      << " grants, " << workspace.researchers.size() << " researchers\n";
        } else if (*stats) {
            const auto table = load_keyword_table(stats_table);
            std::cout << "categories:    " << table.category_count() << '\n'
                      << "subcategories: " << table.subcategory_count() << '\n'
                      << "fields:        " << table.field_count() << '\n'
                      << "keywords:      " << table.keyword_count() << '\n';
        } else if (*surface) {
            const auto workspace = load_workspace(corpus_file);
            const auto matches = surface_channel(workspace, grant, load_keyword_table(table_file));
            emit(out_file, dump(nlohmann::json(matches)));
        } else if (*historical) {
            const auto workspace = load_workspace(corpus_file);
            const auto rules = grant_rules(workspace, grant, mining);
            emit(out_file, dump(nlohmann::json(historical_channel(workspace, grant, rules))));
        } else if (*mine) {
            const auto workspace = load_workspace(corpus_file);
            emit(out_file, dump(nlohmann::json(grant_rules(workspace, grant, mining))));
        } else if (*recommend) {
            std::vector<SurfaceMatch> s;
            std::vector<HistoricalMatch> h;
            if (!surface_file.empty()) {
                s = read_json_file(surface_file).get<std::vector<SurfaceMatch>>();
            }
            if (!historical_file.empty()) {
                h = read_json_file(historical_file).get<std::vector<HistoricalMatch>>();
            }
            auto keep = [&](const auto& m) { return m.grant_id == grant; };
            std::erase_if(s, [&](const SurfaceMatch& m) { return !keep(m); });
            std::erase_if(h, [&](const HistoricalMatch& m) { return !keep(m); });
            const auto list = rank_candidates(grant, s, h, WeightParams::from_alpha(alpha), threshold);
            emit(out_file, render_report(list, format));
        } else if (*serve) {
            auto config = ServiceConfig::from_file(config_file);
            config.apply_env();
            if (!host.empty()) {
                config.host = host;
            }
            if (port != 0) {
                config.port = port;
            }
            RecommendationService service([config] { return load_dataset(config); });
            httplib::Server server;
            service.install(server);
            std::cerr << "listening on " << config.host << ":" << config.port << '\n';
            if (!server.listen(config.host, config.port)) {
                throw Error("cannot bind " + config.host + ":" + std::to_string(config.port));
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << (e.field().empty() ? "" : " [" + e.field() + "]") << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
