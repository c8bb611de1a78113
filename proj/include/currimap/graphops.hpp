#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "currimap/topicnet.hpp"

namespace currimap {

// Same topology as a TopicNetwork but weights are distances (1/strength).
struct DistanceNetwork {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, double> edges;

    bool operator==(const DistanceNetwork&) const = default;
};

struct CommunityPartition {
    // Community ids are dense integers from 0, no empty communities.
    std::map<std::string, int> assignment;
    double modularity = 0.0;

    int community_count() const;

    bool operator==(const CommunityPartition&) const = default;
};

struct BackboneEdge {
    std::string parent;
    std::string child;
    double distance = 0.0;

    auto operator<=>(const BackboneEdge&) const = default;
};

// Spanning tree over inverted weights; every non-root node has exactly one
// parent and is reachable from the root along tree edges.
struct Backbone {
    std::string root;
    std::vector<BackboneEdge> edges;  // sorted by (parent, child)
    double total_distance = 0.0;

    bool operator==(const Backbone&) const = default;
};

// Keeps edges with weight >= min_weight; nodes left without any incident
// edge are dropped.
TopicNetwork threshold(const TopicNetwork& net, std::int64_t min_weight = 3);

// Induced subgraph on the largest strongly connected node set. Size ties go
// to the component whose lexicographically smallest member is smallest.
TopicNetwork largest_scc(const TopicNetwork& net);

// Louvain-style greedy modularity maximization on the symmetrized graph
// (w{u,v} = w(u,v) + w(v,u)). Deterministic for a fixed seed; the best of
// `restarts` seeded runs is returned, ties broken by the lexicographically
// smallest canonical form of the partition. The reported modularity is the
// standard (resolution 1) score.
CommunityPartition detect_communities(const TopicNetwork& net, std::uint64_t seed,
                                      double resolution = 1.0, int restarts = 8);

// Newman-Girvan Q of an assignment on the symmetrized graph. Community ids
// may be arbitrary integers. Throws if a node of `net` is missing.
double modularity(const TopicNetwork& net, const std::map<std::string, int>& assignment);

// distance(u,v) = 1 / weight(u,v); topology unchanged.
DistanceNetwork invert_weights(const TopicNetwork& net);

// Minimum spanning arborescence (Chu-Liu/Edmonds) over directed distances.
// Without an explicit root, every node is tried and the cheapest arborescence
// wins, ties going to the lexicographically smallest root label.
Backbone backbone(const DistanceNetwork& net, const std::optional<std::string>& root = {});

// Classic MST on symmetrized distances (min of the two directed distances per
// pair), oriented away from the lexicographically smallest node.
Backbone undirected_mst(const DistanceNetwork& net);

}  // namespace currimap
