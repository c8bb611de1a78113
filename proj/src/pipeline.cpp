#include "currimap/pipeline.hpp"

#include <utility>

#include <json.hpp>

#include "strutil.hpp"

namespace currimap {

TreeMode parse_tree_mode(std::string_view name) {
    if (name == "arborescence") return TreeMode::arborescence;
    if (name == "undirected") return TreeMode::undirected;
    throw validation_error("unknown tree mode '" + std::string(name) +
                           "' (expected 'arborescence' or 'undirected')");
}

std::string_view to_string(TreeMode mode) {
    return mode == TreeMode::arborescence ? "arborescence" : "undirected";
}

void PipelineConfig::validate() const {
    if (min_edge_weight < 1) {
        throw validation_error("config: min_edge_weight must be >= 1");
    }
    if (restarts < 1) {
        throw validation_error("config: restarts must be >= 1");
    }
    if (!(resolution > 0.0)) {
        throw validation_error("config: resolution must be > 0");
    }
    if (output_dir.empty()) {
        throw validation_error("config: output_dir must be set");
    }
}

PipelineConfig PipelineConfig::from_json_file(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(detail::read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path.string() + ": invalid config JSON: " + e.what());
    }
    if (!j.is_object()) {
        throw parse_error(path.string() + ": config must be a JSON object");
    }
    PipelineConfig config;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "rules_path") {
                if (!value.is_null()) config.rules_path = value.get<std::string>();
            } else if (key == "min_edge_weight") {
                config.min_edge_weight = value.get<std::int64_t>();
            } else if (key == "seed") {
                config.seed = value.get<std::uint64_t>();
            } else if (key == "restarts") {
                config.restarts = value.get<int>();
            } else if (key == "resolution") {
                config.resolution = value.get<double>();
            } else if (key == "tree_mode") {
                config.tree_mode = parse_tree_mode(value.get<std::string>());
            } else if (key == "root") {
                if (!value.is_null()) config.root = value.get<std::string>();
            } else if (key == "frequency_unit") {
                config.frequency_unit = parse_frequency_unit(value.get<std::string>());
            } else if (key == "output_dir") {
                config.output_dir = value.get<std::string>();
            } else {
                throw validation_error(path.string() + ": unknown config key '" + key + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(path.string() + ": config key '" + key + "': " + e.what());
        }
    }
    return config;
}

namespace {

template <typename F>
auto run_stage(const char* stage, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const validation_error& e) {
        throw validation_error("stage " + std::string(stage) + ": " + e.what());
    } catch (const parse_error& e) {
        throw parse_error("stage " + std::string(stage) + ": " + e.what());
    } catch (const io_error& e) {
        throw io_error("stage " + std::string(stage) + ": " + e.what());
    }
}

nlohmann::ordered_json config_json(const PipelineConfig& config) {
    nlohmann::ordered_json j;
    j["min_edge_weight"] = config.min_edge_weight;
    j["seed"] = config.seed;
    j["restarts"] = config.restarts;
    j["resolution"] = config.resolution;
    j["tree_mode"] = std::string(to_string(config.tree_mode));
    j["root"] = config.root ? nlohmann::ordered_json(*config.root)
                            : nlohmann::ordered_json(nullptr);
    j["frequency_unit"] = std::string(to_string(config.frequency_unit));
    return j;
}

}  // namespace

Backbone spanning_tree(const DistanceNetwork& distances, TreeMode mode,
                       const std::optional<std::string>& root) {
    if (mode == TreeMode::arborescence) {
        return backbone(distances, root);
    }
    Backbone tree = undirected_mst(distances);
    if (root) {
        if (!distances.nodes.count(*root)) {
            throw validation_error("root '" + *root + "' is not a node of the network");
        }
        DistanceNetwork tree_net;
        tree_net.nodes = distances.nodes;
        for (const auto& e : tree.edges) {
            tree_net.edges[{e.parent, e.child}] = e.distance;
            tree_net.edges[{e.child, e.parent}] = e.distance;
        }
        tree = backbone(tree_net, root);
    }
    return tree;
}

PipelineResult run_pipeline(const std::filesystem::path& corpus_path,
                            const PipelineConfig& config) {
    config.validate();

    NormalizationRules rules;
    std::string rules_hash;
    if (config.rules_path) {
        const std::string rules_text = detail::read_file(*config.rules_path);
        rules_hash = detail::fnv1a64_hex(rules_text);
        rules = run_stage("load", [&] { return parse_rules_csv(rules_text); });
    }
    const std::string corpus_bytes = detail::read_file(corpus_path);

    PipelineResult result;
    result.corpus = run_stage("load", [&] { return load_corpus(corpus_path, rules); });
    result.frequencies = run_stage("frequencies", [&] {
        return topic_frequencies(result.corpus, config.frequency_unit);
    });
    const TopicMultigraph mg =
        run_stage("build", [&] { return build_multigraph(result.corpus); });
    result.network = run_stage("aggregate", [&] { return aggregate(mg); });
    result.filtered = run_stage("threshold", [&] {
        return threshold(result.network, config.min_edge_weight);
    });
    result.scc = run_stage("scc", [&] { return largest_scc(result.filtered); });
    result.communities = run_stage("communities", [&] {
        return detect_communities(result.scc, config.seed, config.resolution, config.restarts);
    });
    const DistanceNetwork distances =
        run_stage("invert", [&] { return invert_weights(result.scc); });
    result.tree = run_stage("backbone", [&] {
        return spanning_tree(distances, config.tree_mode, config.root);
    });

    // Write artifacts.
    std::error_code ec;
    std::filesystem::create_directories(config.output_dir, ec);
    if (ec) {
        throw io_error("cannot create output directory " + config.output_dir.string() +
                       ": " + ec.message());
    }
    const auto out = [&](const char* name) { return config.output_dir / name; };
    std::vector<std::string> outputs;
    const auto emit = [&](const char* name, const std::string& content) {
        detail::write_file(out(name), content);
        outputs.emplace_back(name);
    };
    emit("corpus.normalized.json", corpus_to_json(result.corpus));
    emit("frequencies.csv", render_frequencies_csv(result.frequencies));
    emit("wordcloud.csv", render_wordcloud_csv(wordcloud_sizes(result.frequencies)));
    emit("network.json", render_graph(to_doc(result.network), GraphFormat::json));
    emit("network.filtered.json", render_graph(to_doc(result.scc), GraphFormat::json));
    emit("network.filtered.dot", render_graph(to_doc(result.scc), GraphFormat::dot));
    emit("communities.csv", render_partition_csv(result.communities));
    emit("backbone.json", render_graph(to_doc(result.tree), GraphFormat::json));
    emit("backbone.dot", render_graph(to_doc(result.tree), GraphFormat::dot));

    nlohmann::ordered_json manifest;
    manifest["tool"] = "currimap";
    manifest["config"] = config_json(config);
    manifest["input"]["corpus_hash"] = detail::fnv1a64_hex(corpus_bytes);
    manifest["input"]["rules_hash"] =
        rules_hash.empty() ? nlohmann::ordered_json(nullptr)
                           : nlohmann::ordered_json(rules_hash);
    auto& stages = manifest["stages"];
    stages["corpus"]["courses"] = result.corpus.courses.size();
    stages["corpus"]["modules"] = result.corpus.module_count();
    stages["corpus"]["topics"] = result.corpus.topics().size();
    stages["multigraph"]["nodes"] = mg.nodes.size();
    stages["multigraph"]["edges"] = mg.edges.size();
    stages["network"]["nodes"] = result.network.nodes.size();
    stages["network"]["edges"] = result.network.edges.size();
    stages["network"]["total_weight"] = result.network.total_weight();
    stages["filtered"]["nodes"] = result.filtered.nodes.size();
    stages["filtered"]["edges"] = result.filtered.edges.size();
    stages["scc"]["nodes"] = result.scc.nodes.size();
    stages["scc"]["edges"] = result.scc.edges.size();
    stages["communities"]["count"] = result.communities.community_count();
    stages["communities"]["modularity"] = result.communities.modularity;
    stages["backbone"]["mode"] = std::string(to_string(config.tree_mode));
    stages["backbone"]["root"] = result.tree.root;
    stages["backbone"]["edges"] = result.tree.edges.size();
    stages["backbone"]["total_distance"] = result.tree.total_distance;
    manifest["frequencies"]["distinct_topics"] = result.frequencies.entries.size();
    if (!result.frequencies.entries.empty()) {
        manifest["frequencies"]["top_topic"] = result.frequencies.entries.front().first;
        manifest["frequencies"]["top_count"] = result.frequencies.entries.front().second;
    }
    manifest["outputs"] = outputs;

    result.manifest_json = manifest.dump(2) + "\n";
    detail::write_file(out("manifest.json"), result.manifest_json);
    return result;
}

}  // namespace currimap
