#include "currimap/graphops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>

#include "strutil.hpp"

namespace currimap {

namespace {

std::vector<std::string> sorted_nodes(const std::set<std::string>& nodes) {
    return {nodes.begin(), nodes.end()};
}

std::map<std::string, int> make_index(const std::vector<std::string>& nodes) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        index.emplace(nodes[i], static_cast<int>(i));
    }
    return index;
}

}  // namespace

int CommunityPartition::community_count() const {
    std::set<int> ids;
    for (const auto& [node, id] : assignment) ids.insert(id);
    return static_cast<int>(ids.size());
}

TopicNetwork threshold(const TopicNetwork& net, std::int64_t min_weight) {
    if (min_weight < 1) {
        throw validation_error("threshold: min_weight must be >= 1");
    }
    TopicNetwork out;
    for (const auto& [pair, w] : net.edges) {
        if (w >= min_weight) {
            out.edges.emplace(pair, w);
            out.nodes.insert(pair.first);
            out.nodes.insert(pair.second);
        }
    }
    return out;
}

// --- strongly connected components -----------------------------------------

namespace {

struct TarjanScc {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> index, low, comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int next_index = 0;
    int comp_count = 0;

    explicit TarjanScc(const std::vector<std::vector<int>>& a)
        : adj(a),
          index(a.size(), -1),
          low(a.size(), 0),
          comp(a.size(), -1),
          on_stack(a.size(), false) {}

    void run() {
        for (int v = 0; v < static_cast<int>(adj.size()); ++v) {
            if (index[v] == -1) dfs(v);
        }
    }

    void dfs(int v) {
        index[v] = low[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
        for (const int w : adj[v]) {
            if (index[w] == -1) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            while (true) {
                const int w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = comp_count;
                if (w == v) break;
            }
            ++comp_count;
        }
    }
};

}  // namespace

TopicNetwork largest_scc(const TopicNetwork& net) {
    if (net.nodes.empty()) {
        throw validation_error("largest_scc: empty network");
    }
    const auto nodes = sorted_nodes(net.nodes);
    const auto index = make_index(nodes);
    std::vector<std::vector<int>> adj(nodes.size());
    for (const auto& [pair, w] : net.edges) {
        adj[static_cast<std::size_t>(index.at(pair.first))].push_back(index.at(pair.second));
    }

    TarjanScc tarjan(adj);
    tarjan.run();

    // Members per component; nodes are scanned in label order, so the first
    // member recorded for a component is its lexicographically smallest.
    std::vector<std::vector<int>> members(static_cast<std::size_t>(tarjan.comp_count));
    for (std::size_t v = 0; v < nodes.size(); ++v) {
        members[static_cast<std::size_t>(tarjan.comp[v])].push_back(static_cast<int>(v));
    }
    int best = 0;
    for (int c = 1; c < tarjan.comp_count; ++c) {
        const auto& cur = members[static_cast<std::size_t>(c)];
        const auto& win = members[static_cast<std::size_t>(best)];
        if (cur.size() > win.size() || (cur.size() == win.size() && cur[0] < win[0])) {
            best = c;
        }
    }

    TopicNetwork out;
    for (const int v : members[static_cast<std::size_t>(best)]) {
        out.nodes.insert(nodes[static_cast<std::size_t>(v)]);
    }
    for (const auto& [pair, w] : net.edges) {
        if (out.nodes.count(pair.first) && out.nodes.count(pair.second)) {
            out.edges.emplace(pair, w);
        }
    }
    return out;
}

// --- modularity and community detection -------------------------------------

namespace {

// Symmetric weighted graph used by the Louvain passes. loop[i] holds the
// ordered internal weight of an aggregated node (twice the undirected
// internal weight); at the finest level all loops are zero.
struct UndirectedGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj;  // no self entries
    std::vector<double> loop;
    std::vector<double> degree;  // k_i = loop[i] + sum of incident weights
    double two_m = 0.0;          // sum of degrees

    void finish() {
        degree.assign(static_cast<std::size_t>(n), 0.0);
        two_m = 0.0;
        for (int i = 0; i < n; ++i) {
            double k = loop[static_cast<std::size_t>(i)];
            for (const auto& [j, w] : adj[static_cast<std::size_t>(i)]) k += w;
            degree[static_cast<std::size_t>(i)] = k;
            two_m += k;
        }
    }
};

UndirectedGraph symmetrize(const TopicNetwork& net, const std::vector<std::string>& nodes,
                           const std::map<std::string, int>& index) {
    std::map<std::pair<int, int>, double> pair_weight;
    for (const auto& [pair, w] : net.edges) {
        int u = index.at(pair.first);
        int v = index.at(pair.second);
        if (u > v) std::swap(u, v);
        pair_weight[{u, v}] += static_cast<double>(w);
    }
    UndirectedGraph g;
    g.n = static_cast<int>(nodes.size());
    g.adj.assign(nodes.size(), {});
    g.loop.assign(nodes.size(), 0.0);
    for (const auto& [pair, w] : pair_weight) {
        g.adj[static_cast<std::size_t>(pair.first)].emplace_back(pair.second, w);
        g.adj[static_cast<std::size_t>(pair.second)].emplace_back(pair.first, w);
    }
    g.finish();
    return g;
}

double partition_quality(const UndirectedGraph& g, const std::vector<int>& com,
                         double resolution) {
    if (g.two_m <= 0.0) return 0.0;
    const int k = 1 + *std::max_element(com.begin(), com.end());
    std::vector<double> internal(static_cast<std::size_t>(k), 0.0);
    std::vector<double> total(static_cast<std::size_t>(k), 0.0);
    for (int i = 0; i < g.n; ++i) {
        const auto c = static_cast<std::size_t>(com[static_cast<std::size_t>(i)]);
        total[c] += g.degree[static_cast<std::size_t>(i)];
        internal[c] += g.loop[static_cast<std::size_t>(i)];
        for (const auto& [j, w] : g.adj[static_cast<std::size_t>(i)]) {
            if (com[static_cast<std::size_t>(j)] == com[static_cast<std::size_t>(i)]) {
                internal[c] += w;  // counted from both endpoints = ordered sum
            }
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
        const double frac_tot = total[c] / g.two_m;
        q += internal[c] / g.two_m - resolution * frac_tot * frac_tot;
    }
    return q;
}

// One Louvain local-move phase; mutates `com` until no single-node move
// improves the objective. Returns whether anything moved.
bool local_moves(const UndirectedGraph& g, std::vector<int>& com,
                 const std::vector<int>& order, double resolution) {
    std::vector<double> tot(static_cast<std::size_t>(g.n), 0.0);
    for (int i = 0; i < g.n; ++i) {
        tot[static_cast<std::size_t>(com[static_cast<std::size_t>(i)])] +=
            g.degree[static_cast<std::size_t>(i)];
    }
    constexpr double kEps = 1e-12;
    bool moved_any = false;
    bool moved = true;
    while (moved) {
        moved = false;
        for (const int i : order) {
            const auto iu = static_cast<std::size_t>(i);
            const int old_com = com[iu];
            std::map<int, double> links;
            for (const auto& [j, w] : g.adj[iu]) {
                links[com[static_cast<std::size_t>(j)]] += w;
            }
            tot[static_cast<std::size_t>(old_com)] -= g.degree[iu];
            const double scale = resolution * g.degree[iu] / g.two_m;
            const auto gain_of = [&](int c, double link) {
                return link - scale * tot[static_cast<std::size_t>(c)];
            };
            double link_old = 0.0;
            if (const auto it = links.find(old_com); it != links.end()) {
                link_old = it->second;
            }
            int best_com = old_com;
            double best_gain = gain_of(old_com, link_old);
            for (const auto& [c, link] : links) {
                if (c == old_com) continue;
                const double gain = gain_of(c, link);
                if (gain > best_gain + kEps) {
                    best_gain = gain;
                    best_com = c;
                }
            }
            tot[static_cast<std::size_t>(best_com)] += g.degree[iu];
            com[iu] = best_com;
            if (best_com != old_com) {
                moved = true;
                moved_any = true;
            }
        }
    }
    return moved_any;
}

// Renumbers community ids densely by first appearance in node order.
int relabel_dense(std::vector<int>& com) {
    std::map<int, int> remap;
    for (int& c : com) {
        auto it = remap.find(c);
        if (it == remap.end()) {
            it = remap.emplace(c, static_cast<int>(remap.size())).first;
        }
        c = it->second;
    }
    return static_cast<int>(remap.size());
}

UndirectedGraph induce(const UndirectedGraph& g, const std::vector<int>& com, int k) {
    UndirectedGraph out;
    out.n = k;
    out.adj.assign(static_cast<std::size_t>(k), {});
    out.loop.assign(static_cast<std::size_t>(k), 0.0);
    std::map<std::pair<int, int>, double> cross;
    for (int i = 0; i < g.n; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const auto ci = com[iu];
        out.loop[static_cast<std::size_t>(ci)] += g.loop[iu];
        for (const auto& [j, w] : g.adj[iu]) {
            if (j < i) continue;  // each undirected edge once
            const int cj = com[static_cast<std::size_t>(j)];
            if (ci == cj) {
                out.loop[static_cast<std::size_t>(ci)] += 2.0 * w;
            } else {
                cross[{std::min(ci, cj), std::max(ci, cj)}] += w;
            }
        }
    }
    for (const auto& [pair, w] : cross) {
        out.adj[static_cast<std::size_t>(pair.first)].emplace_back(pair.second, w);
        out.adj[static_cast<std::size_t>(pair.second)].emplace_back(pair.first, w);
    }
    out.finish();
    return out;
}

std::vector<int> shuffled_order(int n, std::mt19937_64& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    // Fisher-Yates with a plain modulo draw keeps the sequence identical
    // across standard library implementations.
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(i + 1));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
    }
    return order;
}

// Full multilevel pass for one restart; returns the dense assignment of the
// finest-level nodes.
std::vector<int> louvain_once(const UndirectedGraph& base, double resolution,
                              std::uint64_t restart_seed) {
    std::mt19937_64 rng(restart_seed);
    std::vector<int> assignment(static_cast<std::size_t>(base.n));
    std::iota(assignment.begin(), assignment.end(), 0);
    if (base.two_m <= 0.0) {
        return assignment;
    }

    UndirectedGraph level = base;
    std::vector<int> com = assignment;  // community per level node
    while (true) {
        const auto order = shuffled_order(level.n, rng);
        const bool moved = local_moves(level, com, order, resolution);
        const int k = relabel_dense(com);
        for (int& a : assignment) {
            a = com[static_cast<std::size_t>(a)];
        }
        if (!moved || k == level.n) break;
        level = induce(level, com, k);
        com.resize(static_cast<std::size_t>(k));
        std::iota(com.begin(), com.end(), 0);
    }

    // Final polish at the finest level so the result is stable under single
    // original-node moves, not just aggregated-node moves.
    std::vector<int> order(static_cast<std::size_t>(base.n));
    std::iota(order.begin(), order.end(), 0);
    local_moves(base, assignment, order, resolution);
    relabel_dense(assignment);
    return assignment;
}

}  // namespace

double modularity(const TopicNetwork& net, const std::map<std::string, int>& assignment) {
    const auto nodes = sorted_nodes(net.nodes);
    const auto index = make_index(nodes);
    std::vector<int> com(nodes.size());
    std::map<int, int> dense;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto it = assignment.find(nodes[i]);
        if (it == assignment.end()) {
            throw validation_error("modularity: node '" + nodes[i] +
                                   "' missing from community assignment");
        }
        auto dit = dense.find(it->second);
        if (dit == dense.end()) {
            dit = dense.emplace(it->second, static_cast<int>(dense.size())).first;
        }
        com[i] = dit->second;
    }
    if (nodes.empty()) return 0.0;
    const UndirectedGraph g = symmetrize(net, nodes, index);
    return partition_quality(g, com, 1.0);
}

CommunityPartition detect_communities(const TopicNetwork& net, std::uint64_t seed,
                                      double resolution, int restarts) {
    if (net.nodes.empty()) {
        throw validation_error("detect_communities: empty network");
    }
    if (resolution <= 0.0) {
        throw validation_error("detect_communities: resolution must be > 0");
    }
    if (restarts < 1) {
        throw validation_error("detect_communities: restarts must be >= 1");
    }
    const auto nodes = sorted_nodes(net.nodes);
    const auto index = make_index(nodes);
    const UndirectedGraph g = symmetrize(net, nodes, index);

    std::vector<int> best;
    double best_q = 0.0;
    constexpr double kEps = 1e-12;
    for (int r = 0; r < restarts; ++r) {
        const std::uint64_t restart_seed =
            detail::splitmix64(seed + 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(r));
        std::vector<int> candidate = louvain_once(g, resolution, restart_seed);
        const double q = partition_quality(g, candidate, resolution);
        // Dense relabeling by node order is the canonical form, so candidate
        // vectors compare lexicographically for tie-breaks.
        if (best.empty() || q > best_q + kEps || (q >= best_q - kEps && candidate < best)) {
            best = std::move(candidate);
            best_q = q;
        }
    }

    CommunityPartition partition;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        partition.assignment.emplace(nodes[i], best[i]);
    }
    partition.modularity = partition_quality(g, best, 1.0);
    return partition;
}

// --- distance transforms and spanning structures ----------------------------

DistanceNetwork invert_weights(const TopicNetwork& net) {
    DistanceNetwork out;
    out.nodes = net.nodes;
    for (const auto& [pair, w] : net.edges) {
        if (w < 1) {
            throw validation_error("invert_weights: nonpositive weight on edge '" +
                                   pair.first + "' -> '" + pair.second + "'");
        }
        out.edges.emplace(pair, 1.0 / static_cast<double>(w));
    }
    return out;
}

namespace {

struct ArbEdge {
    int u = 0;
    int v = 0;
    double w = 0.0;
    std::size_t orig = 0;  // index into the top-level edge list
};

// Chu-Liu/Edmonds with cycle contraction; returns the original edge indices
// of a minimum arborescence rooted at `root`, or nullopt when some node has
// no incoming path.
std::optional<std::vector<std::size_t>> solve_arborescence(int n, int root,
                                                           const std::vector<ArbEdge>& edges) {
    if (n <= 1) return std::vector<std::size_t>{};

    std::vector<int> best(static_cast<std::size_t>(n), -1);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto& ed = edges[e];
        if (ed.v == root || ed.u == ed.v) continue;
        const auto bv = static_cast<std::size_t>(ed.v);
        if (best[bv] == -1 || ed.w < edges[static_cast<std::size_t>(best[bv])].w) {
            best[bv] = static_cast<int>(e);
        }
    }
    for (int v = 0; v < n; ++v) {
        if (v != root && best[static_cast<std::size_t>(v)] == -1) return std::nullopt;
    }

    // Look for a cycle among the chosen parents.
    std::vector<int> color(static_cast<std::size_t>(n), 0);  // 0 new, 1 current walk, 2 done
    std::vector<int> cycle;
    for (int start = 0; start < n && cycle.empty(); ++start) {
        if (start == root || color[static_cast<std::size_t>(start)] != 0) continue;
        std::vector<int> path;
        int v = start;
        while (v != root && color[static_cast<std::size_t>(v)] == 0) {
            color[static_cast<std::size_t>(v)] = 1;
            path.push_back(v);
            v = edges[static_cast<std::size_t>(best[static_cast<std::size_t>(v)])].u;
        }
        if (v != root && color[static_cast<std::size_t>(v)] == 1) {
            const auto it = std::find(path.begin(), path.end(), v);
            cycle.assign(it, path.end());
        }
        for (const int u : path) color[static_cast<std::size_t>(u)] = 2;
    }

    if (cycle.empty()) {
        std::vector<std::size_t> result;
        for (int v = 0; v < n; ++v) {
            if (v != root) {
                result.push_back(edges[static_cast<std::size_t>(best[static_cast<std::size_t>(v)])].orig);
            }
        }
        return result;
    }

    // Contract the cycle into one supernode and reweight entering edges.
    std::vector<char> in_cycle(static_cast<std::size_t>(n), 0);
    for (const int v : cycle) in_cycle[static_cast<std::size_t>(v)] = 1;
    std::vector<int> new_id(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (!in_cycle[static_cast<std::size_t>(v)]) new_id[static_cast<std::size_t>(v)] = next++;
    }
    const int cyc_id = next;
    const int new_n = next + 1;

    std::vector<ArbEdge> contracted;
    std::vector<int> enters_at;  // cycle node an entering edge points to, else -1
    for (const auto& ed : edges) {
        const bool u_in = in_cycle[static_cast<std::size_t>(ed.u)] != 0;
        const bool v_in = in_cycle[static_cast<std::size_t>(ed.v)] != 0;
        const int cu = u_in ? cyc_id : new_id[static_cast<std::size_t>(ed.u)];
        const int cv = v_in ? cyc_id : new_id[static_cast<std::size_t>(ed.v)];
        if (cu == cv) continue;
        double w = ed.w;
        int enter = -1;
        if (v_in) {
            w -= edges[static_cast<std::size_t>(best[static_cast<std::size_t>(ed.v)])].w;
            enter = ed.v;
        }
        contracted.push_back({cu, cv, w, ed.orig});
        enters_at.push_back(enter);
    }

    const int new_root = new_id[static_cast<std::size_t>(root)];
    const auto sub = solve_arborescence(new_n, new_root, contracted);
    if (!sub) return std::nullopt;

    const std::set<std::size_t> chosen(sub->begin(), sub->end());
    int broken = -1;  // cycle node whose internal edge is replaced
    for (std::size_t i = 0; i < contracted.size(); ++i) {
        if (contracted[i].v == cyc_id && chosen.count(contracted[i].orig)) {
            broken = enters_at[i];
            break;
        }
    }
    std::vector<std::size_t> result(sub->begin(), sub->end());
    for (const int v : cycle) {
        if (v != broken) {
            result.push_back(edges[static_cast<std::size_t>(best[static_cast<std::size_t>(v)])].orig);
        }
    }
    return result;
}

std::vector<bool> reachable_from(int root, int n,
                                 const std::vector<std::vector<int>>& adj) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{root};
    seen[static_cast<std::size_t>(root)] = true;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const int w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
        }
    }
    return seen;
}

Backbone assemble_backbone(const std::vector<std::string>& nodes, const std::string& root,
                           const std::vector<ArbEdge>& edges,
                           const std::vector<std::size_t>& chosen) {
    Backbone tree;
    tree.root = root;
    for (const std::size_t e : chosen) {
        const auto& ed = edges[e];
        tree.edges.push_back({nodes[static_cast<std::size_t>(ed.u)],
                              nodes[static_cast<std::size_t>(ed.v)], ed.w});
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    tree.total_distance = 0.0;
    for (const auto& ed : tree.edges) tree.total_distance += ed.distance;
    return tree;
}

}  // namespace

Backbone backbone(const DistanceNetwork& net, const std::optional<std::string>& root) {
    if (net.nodes.empty()) {
        throw validation_error("backbone: empty network");
    }
    const auto nodes = sorted_nodes(net.nodes);
    const auto index = make_index(nodes);
    const int n = static_cast<int>(nodes.size());

    std::vector<ArbEdge> edges;
    std::vector<std::vector<int>> adj(nodes.size());
    for (const auto& [pair, d] : net.edges) {
        const int u = index.at(pair.first);
        const int v = index.at(pair.second);
        edges.push_back({u, v, d, edges.size()});
        adj[static_cast<std::size_t>(u)].push_back(v);
    }

    if (root) {
        const auto it = index.find(*root);
        if (it == index.end()) {
            throw validation_error("backbone: root '" + *root + "' is not a node of the network");
        }
        const int r = it->second;
        const auto seen = reachable_from(r, n, adj);
        std::string unreachable;
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            if (!seen[v]) {
                if (!unreachable.empty()) unreachable += ", ";
                unreachable += nodes[v];
            }
        }
        if (!unreachable.empty()) {
            throw validation_error("backbone: no arborescence from root '" + *root +
                                   "': unreachable nodes: " + unreachable);
        }
        const auto chosen = solve_arborescence(n, r, edges);
        return assemble_backbone(nodes, *root, edges, *chosen);
    }

    // Try every feasible root; keep the cheapest arborescence. Strict
    // comparison keeps the first (smallest-label) root on ties.
    std::optional<std::vector<std::size_t>> best_edges;
    double best_total = std::numeric_limits<double>::infinity();
    int best_root = -1;
    for (int r = 0; r < n; ++r) {
        const auto seen = reachable_from(r, n, adj);
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) continue;
        const auto chosen = solve_arborescence(n, r, edges);
        if (!chosen) continue;
        double total = 0.0;
        for (const std::size_t e : *chosen) total += edges[e].w;
        if (total < best_total) {
            best_total = total;
            best_edges = chosen;
            best_root = r;
        }
    }
    if (!best_edges) {
        throw validation_error("backbone: no root reaches every node");
    }
    return assemble_backbone(nodes, nodes[static_cast<std::size_t>(best_root)], edges,
                             *best_edges);
}

namespace {

struct DisjointSets {
    std::vector<int> parent;

    explicit DisjointSets(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

}  // namespace

Backbone undirected_mst(const DistanceNetwork& net) {
    if (net.nodes.empty()) {
        throw validation_error("undirected_mst: empty network");
    }
    const auto nodes = sorted_nodes(net.nodes);
    const auto index = make_index(nodes);
    const int n = static_cast<int>(nodes.size());

    // Symmetrize: keep the smaller of the two directed distances per pair.
    std::map<std::pair<int, int>, double> pair_distance;
    for (const auto& [pair, d] : net.edges) {
        int u = index.at(pair.first);
        int v = index.at(pair.second);
        if (u > v) std::swap(u, v);
        const auto [it, inserted] = pair_distance.emplace(std::make_pair(u, v), d);
        if (!inserted && d < it->second) it->second = d;
    }

    struct MstEdge {
        double d;
        int u, v;  // u < v, so (source label, target label) order
    };
    std::vector<MstEdge> sorted_edges;
    for (const auto& [pair, d] : pair_distance) {
        sorted_edges.push_back({d, pair.first, pair.second});
    }
    std::sort(sorted_edges.begin(), sorted_edges.end(), [](const MstEdge& a, const MstEdge& b) {
        return std::tie(a.d, a.u, a.v) < std::tie(b.d, b.u, b.v);
    });

    DisjointSets dsu(nodes.size());
    std::vector<std::map<int, double>> tree_adj(nodes.size());
    int added = 0;
    for (const auto& e : sorted_edges) {
        if (dsu.unite(e.u, e.v)) {
            tree_adj[static_cast<std::size_t>(e.u)].emplace(e.v, e.d);
            tree_adj[static_cast<std::size_t>(e.v)].emplace(e.u, e.d);
            ++added;
        }
    }
    if (added != n - 1) {
        std::map<int, std::vector<std::string>> groups;
        for (int v = 0; v < n; ++v) {
            groups[dsu.find(v)].push_back(nodes[static_cast<std::size_t>(v)]);
        }
        std::string msg = "undirected_mst: graph is disconnected; components:";
        for (const auto& [rep, members] : groups) {
            msg += " {";
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i > 0) msg += ", ";
                msg += members[i];
            }
            msg += "}";
        }
        throw validation_error(msg);
    }

    // Orient edges away from the lexicographically smallest node.
    Backbone tree;
    tree.root = nodes[0];
    std::vector<bool> visited(nodes.size(), false);
    std::queue<int> frontier;
    frontier.push(0);
    visited[0] = true;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (const auto& [w, d] : tree_adj[static_cast<std::size_t>(v)]) {
            if (visited[static_cast<std::size_t>(w)]) continue;
            visited[static_cast<std::size_t>(w)] = true;
            tree.edges.push_back({nodes[static_cast<std::size_t>(v)],
                                  nodes[static_cast<std::size_t>(w)], d});
            frontier.push(w);
        }
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    tree.total_distance = 0.0;
    for (const auto& e : tree.edges) tree.total_distance += e.distance;
    return tree;
}

}  // namespace currimap
