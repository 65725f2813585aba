#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mergesight/metadata.hpp"

namespace mergesight {

/// Node kinds of the overall dependency graph: composite types, globals,
/// functions (member functions included).
enum class NodeKind { TN, GN, FN };

enum class EdgeClass { TN_TN, GN_TN, FN_TN, FN_GN, FN_FN };

const char* to_string(NodeKind k);
const char* to_string(EdgeClass c);

NodeKind node_kind_of(DefKind k);

/// The edge class for a dependency from -> to, or nullopt when the pair of
/// kinds is outside the five supported classes (TN->FN, TN->GN, GN->GN,
/// GN->FN).
std::optional<EdgeClass> classify_dependency(NodeKind from, NodeKind to);

struct OdgNode {
    int def_id = 0;
    NodeKind kind = NodeKind::FN;
    std::string name;
    std::string file;
    LineRange range;
    std::optional<int> parent;
};

struct OdgEdge {
    int from = 0;
    int to = 0;
    EdgeClass cls = EdgeClass::FN_FN;

    friend bool operator==(const OdgEdge&, const OdgEdge&) = default;
};

/// Overall dependency graph of one variant. nodes[i].def_id == i; edges are
/// unique and sorted by (from, to).
struct Odg {
    std::string variant;
    std::vector<OdgNode> nodes;
    std::vector<OdgEdge> edges;
    int dropped_dependencies = 0;
};

Odg build_odg(const MetadataSet& meta);

nlohmann::ordered_json to_json(const Odg& odg);

}  // namespace mergesight
