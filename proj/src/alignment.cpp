#include "mergesight/alignment.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace mergesight {

const char* to_string(ApplyState s) {
    switch (s) {
        case ApplyState::Applied: return "applied";
        case ApplyState::NotApplied: return "not-applied";
        case ApplyState::Conflict: return "conflict";
    }
    return "?";
}

std::vector<std::vector<std::size_t>> Sdg::out_edges() const {
    std::vector<std::vector<std::size_t>> out(nodes.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        out[static_cast<std::size_t>(edges[i].from)].push_back(i);
    }
    return out;
}

FileIndexes build_file_indexes(const Odg& odg, const std::map<std::string, int>& line_counts) {
    std::map<std::string, std::vector<ColorRun>> by_file;
    for (const auto& n : odg.nodes) by_file[n.file].push_back({n.def_id, n.range});
    FileIndexes out;
    for (const auto& [file, defs] : by_file) {
        const auto it = line_counts.find(file);
        if (it == line_counts.end()) {
            throw std::out_of_range("definitions refer to missing file " + file);
        }
        out.emplace(file, build_interval_index(defs, it->second));
    }
    return out;
}

ApplyState assign_apply_state(Variant side, PairStatus status) {
    switch (status) {
        case PairStatus::Conflict: return ApplyState::Conflict;
        case PairStatus::AppliedA:
        case PairStatus::AppliedSame:
            return side == Variant::A ? ApplyState::Applied : ApplyState::NotApplied;
        case PairStatus::AppliedB:
            return side == Variant::B ? ApplyState::Applied : ApplyState::NotApplied;
    }
    return ApplyState::NotApplied;
}

SplitResult split_and_chain(const Odg& odg, std::span<const DcbPair> pairs,
                            const FileIndexes& indexes, Variant side) {
    SplitResult out;
    for (const auto& pair : pairs) {
        const Dcb& dcb = pair.side(side);
        if (dcb.range.empty()) continue;
        const auto idx = indexes.find(dcb.file);
        if (idx == indexes.end()) continue;
        for (const auto& run : idx->second.query(dcb.range)) {
            const auto& def = odg.nodes[static_cast<std::size_t>(run.def_id)];
            FineNode node;
            node.variant = side;
            node.def_id = run.def_id;
            node.kind = def.kind;
            node.name = def.name;
            node.file = dcb.file;
            node.range = run.range;
            node.dcb_pair_id = pair.id;
            node.apply_state = assign_apply_state(side, pair.status);
            const auto offset = static_cast<long>(run.range.start_line - dcb.range.start_line);
            node.text.assign(dcb.text.begin() + offset,
                             dcb.text.begin() + offset + run.range.length());
            out.nodes.push_back(std::move(node));
        }
    }
    std::stable_sort(out.nodes.begin(), out.nodes.end(), [](const auto& x, const auto& y) {
        return std::tie(x.file, x.range.start_line) < std::tie(y.file, y.range.start_line);
    });
    for (std::size_t i = 0; i < out.nodes.size(); ++i) out.nodes[i].fine_id = static_cast<int>(i);

    std::map<int, std::vector<int>> by_def;
    for (const auto& n : out.nodes) by_def[n.def_id].push_back(n.fine_id);
    for (auto& [def, ids] : by_def) {
        std::sort(ids.begin(), ids.end(), [&](int x, int y) {
            return out.nodes[static_cast<std::size_t>(x)].range.start_line <
                   out.nodes[static_cast<std::size_t>(y)].range.start_line;
        });
        for (std::size_t k = 1; k < ids.size(); ++k) {
            out.chain_edges.push_back({ids[k], ids[k - 1], SdgEdgeKind::Chain});
        }
    }
    std::sort(out.chain_edges.begin(), out.chain_edges.end());
    return out;
}

std::vector<SdgEdge> project_edges(const Odg& odg, std::span<const FineNode> nodes) {
    std::map<int, std::vector<int>> by_def;
    for (const auto& n : nodes) by_def[n.def_id].push_back(n.fine_id);
    std::vector<SdgEdge> out;
    for (const auto& e : odg.edges) {
        const auto from = by_def.find(e.from);
        const auto to = by_def.find(e.to);
        if (from == by_def.end() || to == by_def.end()) continue;
        for (int v : from->second) {
            for (int u : to->second) out.push_back({v, u, SdgEdgeKind::Dependency});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MirrorLinks::MirrorLinks(std::vector<MirrorLink> links, std::size_t count_a, std::size_t count_b)
    : links_(std::move(links)),
      of_a_(count_a, static_cast<std::size_t>(-1)),
      of_b_(count_b, static_cast<std::size_t>(-1)) {
    for (std::size_t i = 0; i < links_.size(); ++i) {
        if (links_[i].node_a) of_a_.at(static_cast<std::size_t>(*links_[i].node_a)) = i;
        if (links_[i].node_b) of_b_.at(static_cast<std::size_t>(*links_[i].node_b)) = i;
    }
}

std::size_t MirrorLinks::link_of(Variant side, int fine_id) const {
    const auto& table = side == Variant::A ? of_a_ : of_b_;
    return table.at(static_cast<std::size_t>(fine_id));
}

std::optional<int> MirrorLinks::mirror(Variant side, int fine_id) const {
    return links_[link_of(side, fine_id)].node(other(side));
}

bool MirrorLinks::matched(Variant side, int fine_id) const {
    return links_[link_of(side, fine_id)].matched;
}

MirrorLinks link_mirrors(std::span<const FineNode> nodes_a, std::span<const FineNode> nodes_b,
                         MatchPolicy policy) {
    // Nodes are in range order within each pair already (fine ids follow lines).
    std::map<int, std::pair<std::vector<const FineNode*>, std::vector<const FineNode*>>> by_pair;
    for (const auto& n : nodes_a) {
        if (n.dcb_pair_id) by_pair[*n.dcb_pair_id].first.push_back(&n);
    }
    for (const auto& n : nodes_b) {
        if (n.dcb_pair_id) by_pair[*n.dcb_pair_id].second.push_back(&n);
    }

    const auto is_match = [&](const FineNode& x, const FineNode& y) {
        return x.name == y.name && (policy == MatchPolicy::NameOnly || x.text == y.text);
    };

    std::vector<MirrorLink> links;
    for (auto& [pair_id, sides] : by_pair) {
        auto& [as, bs] = sides;
        std::vector<bool> used_a(as.size(), false);
        std::vector<bool> used_b(bs.size(), false);
        for (std::size_t i = 0; i < as.size(); ++i) {
            for (std::size_t j = 0; j < bs.size(); ++j) {
                if (used_b[j] || as[i]->name != bs[j]->name) continue;
                used_a[i] = used_b[j] = true;
                links.push_back({as[i]->fine_id, bs[j]->fine_id, is_match(*as[i], *bs[j])});
                break;
            }
        }
        std::size_t j = 0;
        for (std::size_t i = 0; i < as.size(); ++i) {
            if (used_a[i]) continue;
            while (j < bs.size() && used_b[j]) ++j;
            if (j < bs.size()) {
                used_a[i] = used_b[j] = true;
                links.push_back({as[i]->fine_id, bs[j]->fine_id, is_match(*as[i], *bs[j])});
            } else {
                used_a[i] = true;
                links.push_back({as[i]->fine_id, std::nullopt, false});
            }
        }
        for (std::size_t k = 0; k < bs.size(); ++k) {
            if (!used_b[k]) links.push_back({std::nullopt, bs[k]->fine_id, false});
        }
    }
    return MirrorLinks(std::move(links), nodes_a.size(), nodes_b.size());
}

Alignment align(const Odg& odg_a, const Odg& odg_b, std::span<const DcbPair> pairs,
                const FileIndexes& indexes_a, const FileIndexes& indexes_b, MatchPolicy policy) {
    Alignment out;
    const auto build = [&](const Odg& odg, const FileIndexes& idx, Variant side) {
        SplitResult split = split_and_chain(odg, pairs, idx, side);
        Sdg g;
        g.variant = side;
        g.edges = std::move(split.chain_edges);
        auto deps = project_edges(odg, split.nodes);
        g.edges.insert(g.edges.end(), deps.begin(), deps.end());
        std::sort(g.edges.begin(), g.edges.end());
        g.nodes = std::move(split.nodes);
        return g;
    };
    out.a = build(odg_a, indexes_a, Variant::A);
    out.b = build(odg_b, indexes_b, Variant::B);
    out.links = link_mirrors(out.a.nodes, out.b.nodes, policy);
    return out;
}

nlohmann::ordered_json to_json(const Sdg& sdg) {
    nlohmann::ordered_json doc;
    doc["variant"] = to_string(sdg.variant);
    auto nodes = nlohmann::ordered_json::array();
    for (const auto& n : sdg.nodes) {
        nodes.push_back({{"fine_id", n.fine_id},
                         {"def_id", n.def_id},
                         {"kind", to_string(n.kind)},
                         {"name", n.name},
                         {"file", n.file},
                         {"start_line", n.range.start_line},
                         {"end_line", n.range.end_line},
                         {"dcb_pair", n.dcb_pair_id ? nlohmann::ordered_json(*n.dcb_pair_id)
                                                    : nlohmann::ordered_json()},
                         {"state", to_string(n.apply_state)}});
    }
    doc["nodes"] = std::move(nodes);
    auto edges = nlohmann::ordered_json::array();
    for (const auto& e : sdg.edges) {
        edges.push_back({{"from", e.from},
                         {"to", e.to},
                         {"kind", e.kind == SdgEdgeKind::Chain ? "chain" : "dependency"}});
    }
    doc["edges"] = std::move(edges);
    return doc;
}

nlohmann::ordered_json to_json(const Alignment& alignment) {
    const auto opt = [](const std::optional<int>& v) {
        return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
    };
    nlohmann::ordered_json doc;
    doc["a"] = to_json(alignment.a);
    doc["b"] = to_json(alignment.b);
    auto mirrors = nlohmann::ordered_json::array();
    for (const auto& l : alignment.links.links()) {
        mirrors.push_back({{"a", opt(l.node_a)}, {"b", opt(l.node_b)}, {"matched", l.matched}});
    }
    doc["mirrors"] = std::move(mirrors);
    return doc;
}

}  // namespace mergesight
