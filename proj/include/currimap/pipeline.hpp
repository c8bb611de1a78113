#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "currimap/report.hpp"

namespace currimap {

enum class TreeMode { arborescence, undirected };

TreeMode parse_tree_mode(std::string_view name);
std::string_view to_string(TreeMode mode);

struct PipelineConfig {
    std::optional<std::filesystem::path> rules_path;
    std::int64_t min_edge_weight = 3;
    std::uint64_t seed = 0;
    int restarts = 8;
    double resolution = 1.0;
    TreeMode tree_mode = TreeMode::arborescence;
    std::optional<std::string> root;
    FrequencyUnit frequency_unit = FrequencyUnit::module;
    std::filesystem::path output_dir;

    void validate() const;

    // Reads the JSON config file; unknown keys are rejected.
    static PipelineConfig from_json_file(const std::filesystem::path& path);
};

// Dispatches on the tree mode. In undirected mode an explicit root only
// re-orients the tree; the edge set stays the MST's.
Backbone spanning_tree(const DistanceNetwork& distances, TreeMode mode,
                       const std::optional<std::string>& root);

struct PipelineResult {
    Corpus corpus;
    FrequencyTable frequencies;
    TopicNetwork network;
    TopicNetwork filtered;
    TopicNetwork scc;
    CommunityPartition communities;
    Backbone tree;
    std::string manifest_json;
};

// Full run: load -> build -> aggregate -> frequencies -> threshold ->
// largest_scc -> communities -> invert -> backbone -> exports. Writes all
// artifacts plus manifest.json into config.output_dir. Errors are prefixed
// with the stage that raised them.
PipelineResult run_pipeline(const std::filesystem::path& corpus_path,
                            const PipelineConfig& config);

}  // namespace currimap
