#include "currimap/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "strutil.hpp"

namespace currimap {

using detail::csv_escape;
using detail::format_double;

FrequencyUnit parse_frequency_unit(std::string_view name) {
    if (name == "module") return FrequencyUnit::module;
    if (name == "course") return FrequencyUnit::course;
    throw validation_error("unknown frequency unit '" + std::string(name) +
                           "' (expected 'module' or 'course')");
}

std::string_view to_string(FrequencyUnit unit) {
    return unit == FrequencyUnit::module ? "module" : "course";
}

FrequencyTable topic_frequencies(const Corpus& corpus, FrequencyUnit unit) {
    std::map<std::string, std::int64_t> counts;
    for (const auto& course : corpus.courses) {
        if (unit == FrequencyUnit::module) {
            for (const auto& module : course.modules) {
                for (const auto& topic : module) ++counts[topic];
            }
        } else {
            std::set<std::string> covered;
            for (const auto& module : course.modules) {
                covered.insert(module.begin(), module.end());
            }
            for (const auto& topic : covered) ++counts[topic];
        }
    }
    FrequencyTable table;
    table.entries.assign(counts.begin(), counts.end());
    std::sort(table.entries.begin(), table.entries.end(),
              [](const auto& a, const auto& b) {
                  return a.second != b.second ? a.second > b.second : a.first < b.first;
              });
    return table;
}

FrequencyTable top_k_with_ties(const FrequencyTable& table, std::size_t k) {
    if (k < 1) {
        throw validation_error("top_k_with_ties: k must be >= 1");
    }
    FrequencyTable out;
    if (table.entries.empty()) return out;
    if (k >= table.entries.size()) {
        out.entries = table.entries;
        return out;
    }
    const std::int64_t cutoff = table.entries[k - 1].second;
    for (const auto& entry : table.entries) {
        if (entry.second < cutoff) break;
        out.entries.push_back(entry);
    }
    return out;
}

std::vector<std::pair<std::string, double>> wordcloud_sizes(const FrequencyTable& table,
                                                            double max_size) {
    if (table.entries.empty()) {
        throw validation_error("wordcloud_sizes: empty frequency table");
    }
    if (!(max_size > 0.0)) {
        throw validation_error("wordcloud_sizes: max_size must be > 0");
    }
    const double max_sqrt = std::sqrt(static_cast<double>(table.entries.front().second));
    std::vector<std::pair<std::string, double>> sizes;
    sizes.reserve(table.entries.size());
    for (const auto& [topic, count] : table.entries) {
        sizes.emplace_back(topic, max_size * std::sqrt(static_cast<double>(count)) / max_sqrt);
    }
    return sizes;
}

// --- graph documents --------------------------------------------------------

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "dot") return GraphFormat::dot;
    if (name == "graphml") return GraphFormat::graphml;
    if (name == "json") return GraphFormat::json;
    if (name == "csv") return GraphFormat::csv;
    throw validation_error("unknown graph format '" + std::string(name) +
                           "' (expected dot, graphml, json, or csv)");
}

std::string_view to_string(GraphFormat format) {
    switch (format) {
        case GraphFormat::dot: return "dot";
        case GraphFormat::graphml: return "graphml";
        case GraphFormat::json: return "json";
        case GraphFormat::csv: return "csv";
    }
    return "?";
}

GraphDoc to_doc(const TopicNetwork& net) {
    GraphDoc doc;
    doc.integer_weights = true;
    doc.nodes.assign(net.nodes.begin(), net.nodes.end());
    for (const auto& [pair, w] : net.edges) {
        doc.edges.push_back({pair.first, pair.second, static_cast<double>(w)});
    }
    return doc;
}

GraphDoc to_doc(const DistanceNetwork& net) {
    GraphDoc doc;
    doc.nodes.assign(net.nodes.begin(), net.nodes.end());
    for (const auto& [pair, d] : net.edges) {
        doc.edges.push_back({pair.first, pair.second, d});
    }
    return doc;
}

GraphDoc to_doc(const Backbone& tree) {
    GraphDoc doc;
    doc.root = tree.root;
    doc.total_distance = tree.total_distance;
    std::set<std::string> nodes{tree.root};
    for (const auto& edge : tree.edges) {
        nodes.insert(edge.parent);
        nodes.insert(edge.child);
        doc.edges.push_back({edge.parent, edge.child, edge.distance});
    }
    doc.nodes.assign(nodes.begin(), nodes.end());
    std::sort(doc.edges.begin(), doc.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return doc;
}

namespace {

std::string format_weight(const GraphDoc& doc, double weight) {
    if (doc.integer_weights) {
        return std::to_string(static_cast<std::int64_t>(weight));
    }
    return format_double(weight);
}

std::string dot_quote(std::string_view id) {
    std::string out = "\"";
    for (const char c : id) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (const char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c); break;
        }
    }
    return out;
}

std::string render_dot(const GraphDoc& doc) {
    std::string out = "digraph topics {\n";
    for (const auto& node : doc.nodes) {
        out += "  " + dot_quote(node);
        if (doc.root && *doc.root == node) out += " [root=true]";
        out += ";\n";
    }
    for (const auto& edge : doc.edges) {
        out += "  " + dot_quote(edge.source) + " -> " + dot_quote(edge.target) +
               " [weight=" + format_weight(doc, edge.weight) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string render_graphml(const GraphDoc& doc) {
    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out += std::string("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"") +
           (doc.integer_weights ? "long" : "double") + "\"/>\n";
    if (doc.root) {
        out += "  <key id=\"root\" for=\"node\" attr.name=\"root\" attr.type=\"boolean\"/>\n";
    }
    out += "  <graph edgedefault=\"directed\">\n";
    for (const auto& node : doc.nodes) {
        if (doc.root && *doc.root == node) {
            out += "    <node id=\"" + xml_escape(node) +
                   "\"><data key=\"root\">true</data></node>\n";
        } else {
            out += "    <node id=\"" + xml_escape(node) + "\"/>\n";
        }
    }
    for (const auto& edge : doc.edges) {
        out += "    <edge source=\"" + xml_escape(edge.source) + "\" target=\"" +
               xml_escape(edge.target) + "\"><data key=\"weight\">" +
               format_weight(doc, edge.weight) + "</data></edge>\n";
    }
    out += "  </graph>\n</graphml>\n";
    return out;
}

std::string render_json(const GraphDoc& doc) {
    nlohmann::ordered_json j;
    j["directed"] = true;
    if (doc.root) j["root"] = *doc.root;
    if (doc.total_distance) j["total_distance"] = *doc.total_distance;
    j["nodes"] = doc.nodes;
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& edge : doc.edges) {
        nlohmann::ordered_json je;
        je["source"] = edge.source;
        je["target"] = edge.target;
        if (doc.integer_weights) {
            je["weight"] = static_cast<std::int64_t>(edge.weight);
        } else {
            je["weight"] = edge.weight;
        }
        j["edges"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

std::string render_csv(const GraphDoc& doc) {
    std::string out = "source,target,weight\n";
    for (const auto& edge : doc.edges) {
        out += csv_escape(edge.source) + "," + csv_escape(edge.target) + "," +
               format_weight(doc, edge.weight) + "\n";
    }
    return out;
}

}  // namespace

std::string render_graph(const GraphDoc& doc, GraphFormat format) {
    switch (format) {
        case GraphFormat::dot: return render_dot(doc);
        case GraphFormat::graphml: return render_graphml(doc);
        case GraphFormat::json: return render_json(doc);
        case GraphFormat::csv: return render_csv(doc);
    }
    throw validation_error("unknown graph format");
}

void export_graph(const GraphDoc& doc, GraphFormat format, const std::filesystem::path& out) {
    detail::write_file(out, render_graph(doc, format));
}

GraphDoc parse_graph_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid graph JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("nodes") || !j.contains("edges")) {
        throw parse_error("graph JSON must be an object with 'nodes' and 'edges'");
    }
    GraphDoc doc;
    doc.integer_weights = true;
    for (const auto& jn : j["nodes"]) {
        if (!jn.is_string()) throw parse_error("graph JSON: nodes must be strings");
        doc.nodes.push_back(jn.get<std::string>());
    }
    std::set<std::string> known(doc.nodes.begin(), doc.nodes.end());
    if (known.size() != doc.nodes.size()) {
        throw parse_error("graph JSON: duplicate node label");
    }
    std::size_t i = 0;
    for (const auto& je : j["edges"]) {
        const std::string where = "graph JSON edge " + std::to_string(i);
        if (!je.is_object() || !je.contains("source") || !je.contains("target") ||
            !je.contains("weight") || !je["source"].is_string() || !je["target"].is_string() ||
            !je["weight"].is_number()) {
            throw parse_error(where + ": expected {source, target, weight}");
        }
        GraphDoc::Edge edge;
        edge.source = je["source"].get<std::string>();
        edge.target = je["target"].get<std::string>();
        edge.weight = je["weight"].get<double>();
        if (!je["weight"].is_number_integer()) doc.integer_weights = false;
        if (!known.count(edge.source) || !known.count(edge.target)) {
            throw parse_error(where + ": endpoint not in node list");
        }
        doc.edges.push_back(std::move(edge));
        ++i;
    }
    if (j.contains("root")) {
        if (!j["root"].is_string() || !known.count(j["root"].get<std::string>())) {
            throw parse_error("graph JSON: root must name a node");
        }
        doc.root = j["root"].get<std::string>();
    }
    if (j.contains("total_distance")) {
        if (!j["total_distance"].is_number()) {
            throw parse_error("graph JSON: total_distance must be a number");
        }
        doc.total_distance = j["total_distance"].get<double>();
    }
    std::sort(doc.nodes.begin(), doc.nodes.end());
    std::sort(doc.edges.begin(), doc.edges.end(), [](const auto& a, const auto& b) {
        return std::tie(a.source, a.target) < std::tie(b.source, b.target);
    });
    return doc;
}

GraphDoc import_graph_json(const std::filesystem::path& path) {
    try {
        return parse_graph_json(detail::read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

TopicNetwork to_topic_network(const GraphDoc& doc) {
    TopicNetwork net;
    net.nodes.insert(doc.nodes.begin(), doc.nodes.end());
    for (const auto& edge : doc.edges) {
        const double rounded = std::round(edge.weight);
        if (edge.weight != rounded || rounded < 1.0) {
            throw validation_error("graph is not a strength network: edge '" + edge.source +
                                   "' -> '" + edge.target + "' has weight " +
                                   format_double(edge.weight));
        }
        if (edge.source == edge.target) {
            throw validation_error("graph has a self-loop on '" + edge.source + "'");
        }
        if (!net.edges.emplace(std::make_pair(edge.source, edge.target),
                               static_cast<std::int64_t>(rounded)).second) {
            throw validation_error("duplicate edge '" + edge.source + "' -> '" +
                                   edge.target + "'");
        }
    }
    return net;
}

DistanceNetwork to_distance_network(const GraphDoc& doc) {
    DistanceNetwork net;
    net.nodes.insert(doc.nodes.begin(), doc.nodes.end());
    for (const auto& edge : doc.edges) {
        if (!(edge.weight > 0.0)) {
            throw validation_error("distance network edge '" + edge.source + "' -> '" +
                                   edge.target + "' must have positive distance");
        }
        if (edge.source == edge.target) {
            throw validation_error("graph has a self-loop on '" + edge.source + "'");
        }
        if (!net.edges.emplace(std::make_pair(edge.source, edge.target), edge.weight).second) {
            throw validation_error("duplicate edge '" + edge.source + "' -> '" +
                                   edge.target + "'");
        }
    }
    return net;
}

Backbone to_backbone(const GraphDoc& doc) {
    if (!doc.root) {
        throw validation_error("graph JSON has no root; not a backbone");
    }
    Backbone tree;
    tree.root = *doc.root;
    for (const auto& edge : doc.edges) {
        tree.edges.push_back({edge.source, edge.target, edge.weight});
    }
    std::sort(tree.edges.begin(), tree.edges.end());
    tree.total_distance = 0.0;
    for (const auto& edge : tree.edges) tree.total_distance += edge.distance;
    return tree;
}

// --- tabular exports ---------------------------------------------------------

std::string render_frequencies_csv(const FrequencyTable& table) {
    std::string out = "topic,count\n";
    for (const auto& [topic, count] : table.entries) {
        out += csv_escape(topic) + "," + std::to_string(count) + "\n";
    }
    return out;
}

std::string render_wordcloud_csv(const std::vector<std::pair<std::string, double>>& sizes) {
    std::string out = "topic,size\n";
    for (const auto& [topic, size] : sizes) {
        out += csv_escape(topic) + "," + format_double(size) + "\n";
    }
    return out;
}

void export_frequencies(const FrequencyTable& table, const std::filesystem::path& out) {
    detail::write_file(out, render_frequencies_csv(table));
}

void export_wordcloud(const std::vector<std::pair<std::string, double>>& sizes,
                      const std::filesystem::path& out) {
    detail::write_file(out, render_wordcloud_csv(sizes));
}

std::string render_partition_csv(const CommunityPartition& partition) {
    std::string out = "topic,community_id\n";
    for (const auto& [topic, community] : partition.assignment) {
        out += csv_escape(topic) + "," + std::to_string(community) + "\n";
    }
    out += "# modularity," + format_double(partition.modularity) + "\n";
    return out;
}

void export_partition(const CommunityPartition& partition, const std::filesystem::path& out) {
    detail::write_file(out, render_partition_csv(partition));
}

CommunityPartition parse_partition_csv(std::string_view text) {
    CommunityPartition partition;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool saw_header = false;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string_view line = nl == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, nl - start);
        start = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.rfind("# modularity,", 0) == 0) {
            partition.modularity = std::stod(std::string(line.substr(13)));
            continue;
        }
        if (!saw_header) {
            if (line != "topic,community_id") {
                throw parse_error("partition CSV must start with 'topic,community_id'");
            }
            saw_header = true;
            continue;
        }
        const auto records = detail::parse_csv(line);
        if (records.size() != 1 || records[0].size() != 2) {
            throw parse_error("partition CSV line " + std::to_string(line_no) +
                              ": expected topic,community_id");
        }
        try {
            partition.assignment[records[0][0]] = std::stoi(records[0][1]);
        } catch (const std::exception&) {
            throw parse_error("partition CSV line " + std::to_string(line_no) +
                              ": bad community id '" + records[0][1] + "'");
        }
    }
    return partition;
}

CommunityPartition import_partition(const std::filesystem::path& path) {
    try {
        return parse_partition_csv(detail::read_file(path));
    } catch (const parse_error& e) {
        throw parse_error(path.string() + ": " + e.what());
    }
}

}  // namespace currimap
