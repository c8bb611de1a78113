#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "currimap/corpus.hpp"

namespace currimap {

enum class EdgeKind { intra, inter };

// One directed edge of the construction-time multigraph, tagged with where
// it came from. For inter edges module_index is the earlier module.
struct MultiEdge {
    std::string source;
    std::string target;
    std::string course_id;
    std::size_t module_index = 0;
    EdgeKind kind = EdgeKind::intra;

    auto operator<=>(const MultiEdge&) const = default;
};

struct TopicMultigraph {
    std::set<std::string> nodes;
    std::vector<MultiEdge> edges;
};

// Directed weighted simple graph; weight = multiplicity of multigraph edges.
struct TopicNetwork {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, std::int64_t> edges;

    bool operator==(const TopicNetwork&) const = default;

    std::int64_t total_weight() const;
};

// Two-step edge construction: every topic pair within a module gets both
// directed edges; every topic of module i points to every topic of module
// i+1 of the same course (self-pairs skipped). No self-loops.
TopicMultigraph build_multigraph(const Corpus& corpus);

// Collapses parallel edges into weights; keeps isolated nodes.
TopicNetwork aggregate(const TopicMultigraph& mg);

}  // namespace currimap
