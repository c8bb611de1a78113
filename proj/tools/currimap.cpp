#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "currimap/corpus.hpp"
#include "currimap/pipeline.hpp"
#include "currimap/report.hpp"

namespace {

using namespace currimap;

NormalizationRules rules_from(const std::string& rules_path) {
    return rules_path.empty() ? NormalizationRules{} : load_rules(rules_path);
}

void add_pipeline_command(CLI::App& app) {
    auto* sub = app.add_subcommand("pipeline", "Run the full analysis pipeline");
    auto corpus_path = std::make_shared<std::string>();
    auto config_path = std::make_shared<std::string>();
    auto out_dir = std::make_shared<std::string>();
    auto rules_path = std::make_shared<std::string>();
    auto min_weight = std::make_shared<std::int64_t>(3);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto restarts = std::make_shared<int>(8);
    auto resolution = std::make_shared<double>(1.0);
    auto tree_mode = std::make_shared<std::string>("arborescence");
    auto root = std::make_shared<std::string>();
    auto freq_unit = std::make_shared<std::string>("module");

    sub->add_option("--corpus", *corpus_path, "Corpus file (.json or .tsv)")->required();
    sub->add_option("--config", *config_path, "Pipeline config JSON");
    sub->add_option("--out", *out_dir, "Output directory (overrides config)");
    sub->add_option("--rules", *rules_path, "Rewording rules CSV");
    sub->add_option("--min-weight", *min_weight, "Minimum edge weight kept by the filter");
    sub->add_option("--seed", *seed, "Seed for community detection");
    sub->add_option("--restarts", *restarts, "Community detection restarts");
    sub->add_option("--resolution", *resolution, "Modularity resolution");
    sub->add_option("--tree-mode", *tree_mode, "arborescence or undirected");
    sub->add_option("--root", *root, "Backbone root topic");
    sub->add_option("--frequency-unit", *freq_unit, "module or course");

    sub->callback([=] {
        PipelineConfig config;
        if (!config_path->empty()) {
            config = PipelineConfig::from_json_file(*config_path);
        }
        if (sub->count("--rules")) config.rules_path = *rules_path;
        if (sub->count("--min-weight")) config.min_edge_weight = *min_weight;
        if (sub->count("--seed")) config.seed = *seed;
        if (sub->count("--restarts")) config.restarts = *restarts;
        if (sub->count("--resolution")) config.resolution = *resolution;
        if (sub->count("--tree-mode")) config.tree_mode = parse_tree_mode(*tree_mode);
        if (sub->count("--root")) config.root = *root;
        if (sub->count("--frequency-unit")) {
            config.frequency_unit = parse_frequency_unit(*freq_unit);
        }
        if (sub->count("--out")) config.output_dir = *out_dir;

        const PipelineResult result = run_pipeline(*corpus_path, config);
        std::cout << "corpus: " << result.corpus.courses.size() << " courses, "
                  << result.corpus.module_count() << " modules, "
                  << result.corpus.topics().size() << " topics\n"
                  << "network: " << result.network.nodes.size() << " nodes, "
                  << result.network.edges.size() << " edges\n"
                  << "filtered scc: " << result.scc.nodes.size() << " nodes, "
                  << result.scc.edges.size() << " edges\n"
                  << "communities: " << result.communities.community_count()
                  << " (modularity " << result.communities.modularity << ")\n"
                  << "backbone: root '" << result.tree.root << "', total distance "
                  << result.tree.total_distance << "\n"
                  << "outputs in " << config.output_dir.string() << "\n";
    });
}

void add_ingest_command(CLI::App& app) {
    auto* sub = app.add_subcommand("ingest", "Normalize a corpus into canonical JSON");
    auto corpus_path = std::make_shared<std::string>();
    auto rules_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--corpus", *corpus_path, "Corpus file (.json or .tsv)")->required();
    sub->add_option("--rules", *rules_path, "Rewording rules CSV");
    sub->add_option("--out", *out_path, "Canonical corpus JSON output")->required();
    sub->callback([=] {
        save_corpus(load_corpus(*corpus_path, rules_from(*rules_path)), *out_path);
    });
}

void add_freq_command(CLI::App& app) {
    auto* sub = app.add_subcommand("freq", "Topic frequency table");
    auto corpus_path = std::make_shared<std::string>();
    auto rules_path = std::make_shared<std::string>();
    auto unit = std::make_shared<std::string>("module");
    auto top_k = std::make_shared<std::size_t>(0);
    auto out_path = std::make_shared<std::string>();
    auto cloud_path = std::make_shared<std::string>();
    auto max_size = std::make_shared<double>(100.0);
    sub->add_option("--corpus", *corpus_path, "Corpus file (.json or .tsv)")->required();
    sub->add_option("--rules", *rules_path, "Rewording rules CSV");
    sub->add_option("--unit", *unit, "module or course");
    sub->add_option("--top-k", *top_k, "Keep the top k entries, ties included");
    sub->add_option("--out", *out_path, "Frequencies CSV output")->required();
    sub->add_option("--wordcloud", *cloud_path, "Also write word-cloud sizes CSV here");
    sub->add_option("--max-size", *max_size, "Largest word-cloud font size");
    sub->callback([=] {
        const Corpus corpus = load_corpus(*corpus_path, rules_from(*rules_path));
        FrequencyTable table = topic_frequencies(corpus, parse_frequency_unit(*unit));
        if (*top_k > 0) table = top_k_with_ties(table, *top_k);
        export_frequencies(table, *out_path);
        if (!cloud_path->empty()) {
            export_wordcloud(wordcloud_sizes(table, *max_size), *cloud_path);
        }
    });
}

void add_build_command(CLI::App& app) {
    auto* sub = app.add_subcommand("build", "Build the weighted topic network");
    auto corpus_path = std::make_shared<std::string>();
    auto rules_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--corpus", *corpus_path, "Corpus file (.json or .tsv)")->required();
    sub->add_option("--rules", *rules_path, "Rewording rules CSV");
    sub->add_option("--out", *out_path, "Network JSON output")->required();
    sub->callback([=] {
        const Corpus corpus = load_corpus(*corpus_path, rules_from(*rules_path));
        const TopicNetwork net = aggregate(build_multigraph(corpus));
        export_graph(to_doc(net), GraphFormat::json, *out_path);
    });
}

void add_filter_command(CLI::App& app) {
    auto* sub = app.add_subcommand("filter", "Drop edges below a weight threshold");
    auto net_path = std::make_shared<std::string>();
    auto min_weight = std::make_shared<std::int64_t>(3);
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--net", *net_path, "Network JSON input")->required();
    sub->add_option("--min-weight", *min_weight, "Minimum edge weight kept");
    sub->add_option("--out", *out_path, "Network JSON output")->required();
    sub->callback([=] {
        const TopicNetwork net = to_topic_network(import_graph_json(*net_path));
        export_graph(to_doc(threshold(net, *min_weight)), GraphFormat::json, *out_path);
    });
}

void add_scc_command(CLI::App& app) {
    auto* sub = app.add_subcommand("scc", "Largest strongly connected component");
    auto net_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--net", *net_path, "Network JSON input")->required();
    sub->add_option("--out", *out_path, "Network JSON output")->required();
    sub->callback([=] {
        const TopicNetwork net = to_topic_network(import_graph_json(*net_path));
        export_graph(to_doc(largest_scc(net)), GraphFormat::json, *out_path);
    });
}

void add_communities_command(CLI::App& app) {
    auto* sub = app.add_subcommand("communities", "Modularity-maximization communities");
    auto net_path = std::make_shared<std::string>();
    auto seed = std::make_shared<std::uint64_t>(0);
    auto restarts = std::make_shared<int>(8);
    auto resolution = std::make_shared<double>(1.0);
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--net", *net_path, "Network JSON input")->required();
    sub->add_option("--seed", *seed, "Seed");
    sub->add_option("--restarts", *restarts, "Restarts");
    sub->add_option("--resolution", *resolution, "Resolution");
    sub->add_option("--out", *out_path, "Partition CSV output")->required();
    sub->callback([=] {
        const TopicNetwork net = to_topic_network(import_graph_json(*net_path));
        export_partition(detect_communities(net, *seed, *resolution, *restarts), *out_path);
    });
}

void add_mst_command(CLI::App& app) {
    auto* sub = app.add_subcommand(
        "mst", "Spanning tree of the weight-inverted network");
    auto net_path = std::make_shared<std::string>();
    auto mode = std::make_shared<std::string>("arborescence");
    auto root = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--net", *net_path, "Strength network JSON input")->required();
    sub->add_option("--mode", *mode, "arborescence or undirected");
    sub->add_option("--root", *root, "Root topic");
    sub->add_option("--out", *out_path, "Backbone JSON output")->required();
    sub->callback([=] {
        const TopicNetwork net = to_topic_network(import_graph_json(*net_path));
        std::optional<std::string> root_opt;
        if (sub->count("--root")) root_opt = *root;
        const Backbone tree =
            spanning_tree(invert_weights(net), parse_tree_mode(*mode), root_opt);
        export_graph(to_doc(tree), GraphFormat::json, *out_path);
    });
}

void add_export_command(CLI::App& app) {
    auto* sub = app.add_subcommand("export", "Re-serialize a graph JSON file");
    auto in_path = std::make_shared<std::string>();
    auto format = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--in", *in_path, "Graph JSON input")->required();
    sub->add_option("--format", *format, "dot, graphml, json, or csv")->required();
    sub->add_option("--out", *out_path, "Output file")->required();
    sub->callback([=] {
        export_graph(import_graph_json(*in_path), parse_graph_format(*format), *out_path);
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curriculum topic-network analysis"};
    app.require_subcommand(1);
    add_pipeline_command(app);
    add_ingest_command(app);
    add_freq_command(app);
    add_build_command(app);
    add_filter_command(app);
    add_scc_command(app);
    add_communities_command(app);
    add_mst_command(app);
    add_export_command(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const currimap::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const currimap::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
