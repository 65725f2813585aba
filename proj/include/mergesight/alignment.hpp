#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mergesight/diff3.hpp"
#include "mergesight/interval_index.hpp"
#include "mergesight/odg.hpp"

namespace mergesight {

/// Membership of a fine node in the applied / not-applied / conflict sets.
enum class ApplyState { Applied, NotApplied, Conflict };

const char* to_string(ApplyState s);

/// How mirror nodes qualify as a match. Strict also requires the two nodes
/// to cover identical text; NameOnly compares definition names only.
enum class MatchPolicy { Strict, NameOnly };

/// A slice of one definition aligned with exactly one DCB.
struct FineNode {
    int fine_id = 0;
    Variant variant = Variant::A;
    int def_id = 0;
    NodeKind kind = NodeKind::FN;
    std::string name;
    std::string file;
    LineRange range;
    std::optional<int> dcb_pair_id;
    ApplyState apply_state = ApplyState::NotApplied;
    Lines text;
};

enum class SdgEdgeKind { Chain, Dependency };

struct SdgEdge {
    int from = 0;
    int to = 0;
    SdgEdgeKind kind = SdgEdgeKind::Dependency;

    friend bool operator==(const SdgEdge&, const SdgEdge&) = default;
    friend auto operator<=>(const SdgEdge&, const SdgEdge&) = default;
};

/// Shrunk dependency graph: only DCB-attached fine nodes, the chain edges
/// between consecutive slices of one definition, and dependency edges
/// projected from the ODG. nodes[i].fine_id == i.
struct Sdg {
    Variant variant = Variant::A;
    std::vector<FineNode> nodes;
    std::vector<SdgEdge> edges;  // sorted, unique

    /// successors()[v] lists the edge indices leaving v.
    std::vector<std::vector<std::size_t>> out_edges() const;
};

using FileIndexes = std::map<std::string, IntervalIndex>;

/// One interval index per file that holds definitions. `line_counts` gives
/// the line count of each file of the variant; a definition in a file that
/// is missing there, or past its end, throws std::out_of_range.
FileIndexes build_file_indexes(const Odg& odg, const std::map<std::string, int>& line_counts);

struct SplitResult {
    std::vector<FineNode> nodes;
    std::vector<SdgEdge> chain_edges;
};

/// Cuts every (definition, DCB) intersection on `side` into a fine node and
/// chains the fine nodes of each definition from later to earlier ranges.
/// Empty DCBs and DCBs outside any definition produce nothing.
SplitResult split_and_chain(const Odg& odg, std::span<const DcbPair> pairs,
                            const FileIndexes& indexes, Variant side);

/// For every ODG edge whose endpoints both own fine nodes, one dependency
/// edge per (source slice, target slice) combination.
std::vector<SdgEdge> project_edges(const Odg& odg, std::span<const FineNode> nodes);

ApplyState assign_apply_state(Variant side, PairStatus status);

/// A fine node of A, its mirror in B, or both. Every fine node of both
/// graphs appears in exactly one link.
struct MirrorLink {
    std::optional<int> node_a;
    std::optional<int> node_b;
    bool matched = false;

    std::optional<int> node(Variant v) const { return v == Variant::A ? node_a : node_b; }
};

class MirrorLinks {
public:
    MirrorLinks() = default;
    MirrorLinks(std::vector<MirrorLink> links, std::size_t count_a, std::size_t count_b);

    const std::vector<MirrorLink>& links() const { return links_; }
    std::size_t link_of(Variant side, int fine_id) const;
    std::optional<int> mirror(Variant side, int fine_id) const;
    /// match(Mi(v)): the mirror exists and qualifies as a match.
    bool matched(Variant side, int fine_id) const;

private:
    std::vector<MirrorLink> links_;
    std::vector<std::size_t> of_a_;
    std::vector<std::size_t> of_b_;
};

/// Pairs fine nodes attached to the two DCBs of the same pair: first by equal
/// definition name (in range order), then positionally among the rest.
MirrorLinks link_mirrors(std::span<const FineNode> nodes_a, std::span<const FineNode> nodes_b,
                         MatchPolicy policy);

struct Alignment {
    Sdg a;
    Sdg b;
    MirrorLinks links;

    const Sdg& graph(Variant v) const { return v == Variant::A ? a : b; }
};

Alignment align(const Odg& odg_a, const Odg& odg_b, std::span<const DcbPair> pairs,
                const FileIndexes& indexes_a, const FileIndexes& indexes_b, MatchPolicy policy);

nlohmann::ordered_json to_json(const Sdg& sdg);
nlohmann::ordered_json to_json(const Alignment& alignment);

}  // namespace mergesight
