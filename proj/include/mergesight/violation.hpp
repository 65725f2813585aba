#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mergesight/alignment.hpp"

namespace mergesight {

/// A fine node of one of the two SDGs.
struct NodeRef {
    Variant variant = Variant::A;
    int fine_id = 0;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
    friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

/// Scenario number (1..6) for an edge v -> u given the apply states of both
/// ends and whether u's mirror matches it. nullopt when v is not applied;
/// such edges are never classified.
std::optional<int> edge_scenario(ApplyState v, ApplyState u, bool u_mirror_matched);

constexpr bool is_safe_scenario(int scenario) { return scenario >= 1 && scenario <= 4; }

struct Verdict {
    Variant graph = Variant::A;
    SdgEdge edge;
    int scenario = 0;
    bool safe = true;
    std::vector<NodeRef> marked;  // empty for safe edges
};

/// Classifies one edge of the `graph` SDG. An absent mirror of u counts as
/// unmatched. Returns nullopt for edges whose source is not applied.
std::optional<Verdict> classify_edge(const Alignment& alignment, Variant graph,
                                     const SdgEdge& edge);

struct ViolationSet {
    std::set<NodeRef> nodes;
    /// (pair id, variant) of every DCB that owns a node in `nodes`.
    std::set<std::pair<int, Variant>> dcbs;

    bool contains(const NodeRef& n) const { return nodes.count(n) != 0; }
    bool empty() const { return nodes.empty(); }
};

struct Detection {
    std::vector<Verdict> verdicts;  // A's edges, then B's, in edge order
    ViolationSet violations;
};

/// Classifies every edge of both SDGs. The result holds every marked node
/// plus every Conflict node.
Detection detect_violations(const Alignment& alignment);

nlohmann::ordered_json to_json(const Verdict& verdict);

/// One compact JSON object per line.
std::string verdicts_jsonl(const std::vector<Verdict>& verdicts);

}  // namespace mergesight
