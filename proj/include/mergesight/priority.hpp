#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mergesight/alignment.hpp"
#include "mergesight/violation.hpp"

namespace mergesight {

enum class MdgStatus { Conflict, Violated };

const char* to_string(MdgStatus s);

/// Presentation and tiebreak order: file, then start line, then variant.
struct MdgKey {
    std::string file;
    int start_line = 0;
    Variant variant = Variant::A;

    friend bool operator==(const MdgKey&, const MdgKey&) = default;
    friend auto operator<=>(const MdgKey&, const MdgKey&) = default;
};

/// One mirror link holding at least one conflict or violated fine node.
struct MdgNode {
    int id = 0;
    std::size_t link = 0;
    std::optional<int> node_a;
    std::optional<int> node_b;
    MdgStatus status = MdgStatus::Violated;
    MdgKey key;

    std::optional<int> node(Variant v) const { return v == Variant::A ? node_a : node_b; }
};

struct Mdg {
    std::vector<MdgNode> nodes;  // sorted by key; nodes[i].id == i
    std::vector<std::pair<int, int>> edges;  // sorted, unique, no self loops
};

/// Walks SDG edges out of every interesting link. Applied fine nodes are
/// followed in their own SDG, not-applied ones through their mirror, and
/// conflict nodes on both sides. Safe nodes are passed through; reaching
/// another interesting link adds an edge and ends that branch.
Mdg build_mdg(const Alignment& alignment, const ViolationSet& violations);

/// Strongly connected components, each listed in ascending node order,
/// in the order Tarjan's algorithm completes them (sinks first).
std::vector<std::vector<int>> tarjan_scc(int n, const std::vector<std::pair<int, int>>& edges);

struct PriorityGroup {
    int group_id = 0;
    /// buckets[r] holds the MDG node ids of rank r, ordered by key.
    std::vector<std::vector<int>> buckets;
};

/// Condenses cycles, splits the condensation into weakly connected groups and
/// ranks each component by its longest dependency chain, so components with
/// no outgoing edges come first. Groups are numbered by their smallest key.
std::vector<PriorityGroup> condense_and_rank(const Mdg& mdg);

}  // namespace mergesight
