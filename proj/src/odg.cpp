#include "mergesight/odg.hpp"

#include <map>
#include <utility>

namespace mergesight {

const char* to_string(NodeKind k) {
    switch (k) {
        case NodeKind::TN: return "TN";
        case NodeKind::GN: return "GN";
        case NodeKind::FN: return "FN";
    }
    return "?";
}

const char* to_string(EdgeClass c) {
    switch (c) {
        case EdgeClass::TN_TN: return "TN-TN";
        case EdgeClass::GN_TN: return "GN-TN";
        case EdgeClass::FN_TN: return "FN-TN";
        case EdgeClass::FN_GN: return "FN-GN";
        case EdgeClass::FN_FN: return "FN-FN";
    }
    return "?";
}

NodeKind node_kind_of(DefKind k) {
    switch (k) {
        case DefKind::Type: return NodeKind::TN;
        case DefKind::Global: return NodeKind::GN;
        case DefKind::Function: return NodeKind::FN;
    }
    return NodeKind::FN;
}

std::optional<EdgeClass> classify_dependency(NodeKind from, NodeKind to) {
    switch (from) {
        case NodeKind::TN:
            if (to == NodeKind::TN) return EdgeClass::TN_TN;
            return std::nullopt;
        case NodeKind::GN:
            if (to == NodeKind::TN) return EdgeClass::GN_TN;
            return std::nullopt;
        case NodeKind::FN:
            if (to == NodeKind::TN) return EdgeClass::FN_TN;
            if (to == NodeKind::GN) return EdgeClass::FN_GN;
            return EdgeClass::FN_FN;
    }
    return std::nullopt;
}

Odg build_odg(const MetadataSet& meta) {
    Odg odg;
    odg.variant = meta.variant;
    odg.nodes.reserve(meta.definitions.size());
    for (const auto& d : meta.definitions) {
        odg.nodes.push_back({d.def_id, node_kind_of(d.kind), d.name, d.file, d.range, d.parent});
    }

    std::map<std::pair<int, int>, EdgeClass> edges;
    for (const auto& dep : meta.dependencies) {
        const auto cls = classify_dependency(odg.nodes[static_cast<std::size_t>(dep.from)].kind,
                                             odg.nodes[static_cast<std::size_t>(dep.to)].kind);
        if (!cls) {
            ++odg.dropped_dependencies;
            continue;
        }
        edges.emplace(std::make_pair(dep.from, dep.to), *cls);
    }
    for (const auto& n : odg.nodes) {
        if (n.kind == NodeKind::FN && n.parent) {
            edges.emplace(std::make_pair(n.def_id, *n.parent), EdgeClass::FN_TN);
        }
    }
    for (const auto& [key, cls] : edges) odg.edges.push_back({key.first, key.second, cls});
    return odg;
}

nlohmann::ordered_json to_json(const Odg& odg) {
    nlohmann::ordered_json doc;
    doc["variant"] = odg.variant;
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : odg.nodes) {
        nodes.push_back({{"def_id", n.def_id},
                         {"kind", to_string(n.kind)},
                         {"name", n.name},
                         {"file", n.file},
                         {"start_line", n.range.start_line},
                         {"end_line", n.range.end_line}});
    }
    doc["nodes"] = std::move(nodes);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : odg.edges) {
        edges.push_back({{"from", e.from}, {"to", e.to}, {"class", to_string(e.cls)}});
    }
    doc["edges"] = std::move(edges);
    doc["dropped_dependencies"] = odg.dropped_dependencies;
    return doc;
}

}  // namespace mergesight
