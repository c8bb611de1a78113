#include "currimap/topicnet.hpp"

namespace currimap {

std::int64_t TopicNetwork::total_weight() const {
    std::int64_t sum = 0;
    for (const auto& [pair, w] : edges) sum += w;
    return sum;
}

TopicMultigraph build_multigraph(const Corpus& corpus) {
    TopicMultigraph mg;
    for (const auto& course : corpus.courses) {
        for (std::size_t m = 0; m < course.modules.size(); ++m) {
            const auto& module = course.modules[m];
            mg.nodes.insert(module.begin(), module.end());
            // Step 1: topics of one module form a fully connected cluster,
            // both directions of every pair.
            for (const auto& a : module) {
                for (const auto& b : module) {
                    if (a == b) continue;
                    mg.edges.push_back({a, b, course.id, m, EdgeKind::intra});
                }
            }
            // Step 2: curricular flow from every topic of the previous module
            // to every topic of this one; same-topic pairs make no self-loop.
            if (m > 0) {
                const auto& previous = course.modules[m - 1];
                for (const auto& u : previous) {
                    for (const auto& v : module) {
                        if (u == v) continue;
                        mg.edges.push_back({u, v, course.id, m - 1, EdgeKind::inter});
                    }
                }
            }
        }
    }
    return mg;
}

TopicNetwork aggregate(const TopicMultigraph& mg) {
    TopicNetwork net;
    net.nodes = mg.nodes;
    for (const auto& edge : mg.edges) {
        ++net.edges[{edge.source, edge.target}];
    }
    return net;
}

}  // namespace currimap
