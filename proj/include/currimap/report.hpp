#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "currimap/corpus.hpp"
#include "currimap/graphops.hpp"
#include "currimap/topicnet.hpp"

namespace currimap {

// Entries sorted by count descending, then topic ascending.
struct FrequencyTable {
    std::vector<std::pair<std::string, std::int64_t>> entries;

    bool operator==(const FrequencyTable&) const = default;
};

enum class FrequencyUnit { module, course };

FrequencyUnit parse_frequency_unit(std::string_view name);
std::string_view to_string(FrequencyUnit unit);

// Count of a topic = number of (course, module) pairs containing it, or with
// FrequencyUnit::course the number of courses covering it anywhere.
FrequencyTable topic_frequencies(const Corpus& corpus,
                                 FrequencyUnit unit = FrequencyUnit::module);

// Smallest prefix containing every topic whose count reaches the k-th
// entry's count; may hold more than k entries.
FrequencyTable top_k_with_ties(const FrequencyTable& table, std::size_t k);

// size(t) = max_size * sqrt(count(t) / max count).
std::vector<std::pair<std::string, double>> wordcloud_sizes(const FrequencyTable& table,
                                                            double max_size = 100.0);

enum class GraphFormat { dot, graphml, json, csv };

GraphFormat parse_graph_format(std::string_view name);
std::string_view to_string(GraphFormat format);

// Format-independent view of anything exportable: a strength network, a
// distance network, or a backbone (which carries a root).
struct GraphDoc {
    struct Edge {
        std::string source;
        std::string target;
        double weight = 0.0;

        bool operator==(const Edge&) const = default;
    };

    std::vector<std::string> nodes;  // sorted
    std::vector<Edge> edges;         // sorted by (source, target)
    bool integer_weights = false;
    std::optional<std::string> root;
    std::optional<double> total_distance;

    bool operator==(const GraphDoc&) const = default;
};

GraphDoc to_doc(const TopicNetwork& net);
GraphDoc to_doc(const DistanceNetwork& net);
GraphDoc to_doc(const Backbone& tree);

std::string render_graph(const GraphDoc& doc, GraphFormat format);
void export_graph(const GraphDoc& doc, GraphFormat format, const std::filesystem::path& out);

GraphDoc parse_graph_json(std::string_view text);
GraphDoc import_graph_json(const std::filesystem::path& path);

TopicNetwork to_topic_network(const GraphDoc& doc);
DistanceNetwork to_distance_network(const GraphDoc& doc);
Backbone to_backbone(const GraphDoc& doc);

std::string render_frequencies_csv(const FrequencyTable& table);
std::string render_wordcloud_csv(const std::vector<std::pair<std::string, double>>& sizes);
void export_frequencies(const FrequencyTable& table, const std::filesystem::path& out);
void export_wordcloud(const std::vector<std::pair<std::string, double>>& sizes,
                      const std::filesystem::path& out);

// CSV topic,community_id sorted by topic, with a trailing comment line
// carrying the modularity value.
std::string render_partition_csv(const CommunityPartition& partition);
void export_partition(const CommunityPartition& partition, const std::filesystem::path& out);
CommunityPartition parse_partition_csv(std::string_view text);
CommunityPartition import_partition(const std::filesystem::path& path);

}  // namespace currimap
