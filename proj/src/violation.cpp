#include "mergesight/violation.hpp"

namespace mergesight {

std::optional<int> edge_scenario(ApplyState v, ApplyState u, bool u_mirror_matched) {
    if (v == ApplyState::NotApplied) return std::nullopt;
    const bool v_applied = v == ApplyState::Applied;
    if (u == ApplyState::Applied) return v_applied ? 1 : 3;
    if (u_mirror_matched) return v_applied ? 2 : 4;
    return v_applied ? 5 : 6;
}

std::optional<Verdict> classify_edge(const Alignment& alignment, Variant graph,
                                     const SdgEdge& edge) {
    const Sdg& sdg = alignment.graph(graph);
    const auto& v = sdg.nodes[static_cast<std::size_t>(edge.from)];
    const auto& u = sdg.nodes[static_cast<std::size_t>(edge.to)];
    const auto scenario =
        edge_scenario(v.apply_state, u.apply_state, alignment.links.matched(graph, edge.to));
    if (!scenario) return std::nullopt;

    Verdict out;
    out.graph = graph;
    out.edge = edge;
    out.scenario = *scenario;
    out.safe = is_safe_scenario(*scenario);
    if (!out.safe) {
        const Variant mirror_side = other(graph);
        out.marked.push_back({graph, edge.from});
        out.marked.push_back({graph, edge.to});
        if (auto m = alignment.links.mirror(graph, edge.from)) out.marked.push_back({mirror_side, *m});
        if (auto m = alignment.links.mirror(graph, edge.to)) out.marked.push_back({mirror_side, *m});
    }
    return out;
}

Detection detect_violations(const Alignment& alignment) {
    Detection out;
    for (Variant side : {Variant::A, Variant::B}) {
        const Sdg& sdg = alignment.graph(side);
        for (const auto& n : sdg.nodes) {
            if (n.apply_state == ApplyState::Conflict) out.violations.nodes.insert({side, n.fine_id});
        }
        for (const auto& e : sdg.edges) {
            auto verdict = classify_edge(alignment, side, e);
            if (!verdict) continue;
            out.violations.nodes.insert(verdict->marked.begin(), verdict->marked.end());
            out.verdicts.push_back(std::move(*verdict));
        }
    }
    for (const auto& ref : out.violations.nodes) {
        const auto& n = alignment.graph(ref.variant).nodes[static_cast<std::size_t>(ref.fine_id)];
        if (n.dcb_pair_id) out.violations.dcbs.insert({*n.dcb_pair_id, ref.variant});
    }
    return out;
}

nlohmann::ordered_json to_json(const Verdict& verdict) {
    auto marked = nlohmann::ordered_json::array();
    for (const auto& m : verdict.marked) {
        marked.push_back({{"variant", to_string(m.variant)}, {"fine_id", m.fine_id}});
    }
    return {{"graph", to_string(verdict.graph)},
            {"from", verdict.edge.from},
            {"to", verdict.edge.to},
            {"kind", verdict.edge.kind == SdgEdgeKind::Chain ? "chain" : "dependency"},
            {"scenario", verdict.scenario},
            {"safe", verdict.safe},
            {"marked", std::move(marked)}};
}

std::string verdicts_jsonl(const std::vector<Verdict>& verdicts) {
    std::string out;
    for (const auto& v : verdicts) {
        out += to_json(v).dump();
        out += '\n';
    }
    return out;
}

}  // namespace mergesight
