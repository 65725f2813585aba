#include "mergesight/priority.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace mergesight {

const char* to_string(MdgStatus s) {
    return s == MdgStatus::Conflict ? "conflict" : "violated";
}

namespace {

const FineNode& fine(const Alignment& al, const NodeRef& r) {
    return al.graph(r.variant).nodes[static_cast<std::size_t>(r.fine_id)];
}

// Nodes whose outgoing edges stand for `r` in the merged result.
std::vector<NodeRef> expand(const Alignment& al, const NodeRef& r) {
    const auto mirror = al.links.mirror(r.variant, r.fine_id);
    switch (fine(al, r).apply_state) {
        case ApplyState::Applied: return {r};
        case ApplyState::Conflict:
            if (mirror) return {r, {other(r.variant), *mirror}};
            return {r};
        case ApplyState::NotApplied:
            if (mirror) return {{other(r.variant), *mirror}};
            return {};
    }
    return {};
}

}  // namespace

Mdg build_mdg(const Alignment& alignment, const ViolationSet& violations) {
    Mdg mdg;
    const auto& links = alignment.links.links();
    std::vector<int> mdg_of_link(links.size(), -1);
    for (std::size_t i = 0; i < links.size(); ++i) {
        const auto& l = links[i];
        bool interesting = false;
        bool conflict = false;
        for (Variant side : {Variant::A, Variant::B}) {
            const auto id = l.node(side);
            if (!id) continue;
            const NodeRef ref{side, *id};
            interesting = interesting || violations.contains(ref);
            conflict = conflict || fine(alignment, ref).apply_state == ApplyState::Conflict;
        }
        if (!interesting && !conflict) continue;
        MdgNode n;
        n.link = i;
        n.node_a = l.node_a;
        n.node_b = l.node_b;
        n.status = conflict ? MdgStatus::Conflict : MdgStatus::Violated;
        const NodeRef primary = l.node_a ? NodeRef{Variant::A, *l.node_a} : NodeRef{Variant::B, *l.node_b};
        const auto& f = fine(alignment, primary);
        n.key = {f.file, f.range.start_line, primary.variant};
        mdg.nodes.push_back(std::move(n));
    }
    std::stable_sort(mdg.nodes.begin(), mdg.nodes.end(), [](const MdgNode& x, const MdgNode& y) {
        return std::tie(x.key, x.link) < std::tie(y.key, y.link);
    });
    for (std::size_t i = 0; i < mdg.nodes.size(); ++i) {
        mdg.nodes[i].id = static_cast<int>(i);
        mdg_of_link[mdg.nodes[i].link] = static_cast<int>(i);
    }

    const auto out_a = alignment.a.out_edges();
    const auto out_b = alignment.b.out_edges();
    std::set<std::pair<int, int>> edges;
    for (const auto& x : mdg.nodes) {
        std::set<NodeRef> seen;
        std::vector<NodeRef> stack;
        for (Variant side : {Variant::A, Variant::B}) {
            const auto id = x.node(side);
            if (!id) continue;
            const NodeRef ref{side, *id};
            if (fine(alignment, ref).apply_state != ApplyState::NotApplied && seen.insert(ref).second) {
                stack.push_back(ref);
            }
        }
        while (!stack.empty()) {
            const NodeRef w = stack.back();
            stack.pop_back();
            const Sdg& g = alignment.graph(w.variant);
            const auto& outs = w.variant == Variant::A ? out_a : out_b;
            for (std::size_t ei : outs[static_cast<std::size_t>(w.fine_id)]) {
                const NodeRef t{w.variant, g.edges[ei].to};
                const int y = mdg_of_link[alignment.links.link_of(t.variant, t.fine_id)];
                if (y >= 0) {
                    if (y != x.id) edges.insert({x.id, y});
                    continue;
                }
                for (const auto& next : expand(alignment, t)) {
                    if (seen.insert(next).second) stack.push_back(next);
                }
            }
        }
    }
    mdg.edges.assign(edges.begin(), edges.end());
    return mdg;
}

std::vector<std::vector<int>> tarjan_scc(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [from, to] : edges) adj[static_cast<std::size_t>(from)].push_back(to);

    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
    std::vector<int> stack;
    std::vector<std::vector<int>> out;
    int counter = 0;

    // Iterative DFS: frame = (node, next child position).
    for (int root = 0; root < n; ++root) {
        if (index[static_cast<std::size_t>(root)] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
        index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
        stack.push_back(root);
        on_stack[static_cast<std::size_t>(root)] = true;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            const auto vi = static_cast<std::size_t>(v);
            if (pos < adj[vi].size()) {
                const int w = adj[vi][pos++];
                const auto wi = static_cast<std::size_t>(w);
                if (index[wi] < 0) {
                    index[wi] = low[wi] = counter++;
                    stack.push_back(w);
                    on_stack[wi] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[wi]) {
                    low[vi] = std::min(low[vi], index[wi]);
                }
                continue;
            }
            if (low[vi] == index[vi]) {
                std::vector<int> comp;
                int w = -1;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[static_cast<std::size_t>(w)] = false;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                out.push_back(std::move(comp));
            }
            const int done = v;
            frames.pop_back();
            if (!frames.empty()) {
                const auto pi = static_cast<std::size_t>(frames.back().first);
                low[pi] = std::min(low[pi], low[static_cast<std::size_t>(done)]);
            }
        }
    }
    return out;
}

std::vector<PriorityGroup> condense_and_rank(const Mdg& mdg) {
    const int n = static_cast<int>(mdg.nodes.size());
    const auto comps = tarjan_scc(n, mdg.edges);
    const std::size_t nc = comps.size();
    std::vector<std::size_t> comp_of(static_cast<std::size_t>(n));
    for (std::size_t c = 0; c < nc; ++c) {
        for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = c;
    }

    std::vector<std::set<std::size_t>> succ(nc);
    std::vector<std::size_t> parent(nc);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const auto find = [&](std::size_t c) {
        while (parent[c] != c) c = parent[c] = parent[parent[c]];
        return c;
    };
    for (const auto& [from, to] : mdg.edges) {
        const auto cf = comp_of[static_cast<std::size_t>(from)];
        const auto ct = comp_of[static_cast<std::size_t>(to)];
        if (cf == ct) continue;
        succ[cf].insert(ct);
        parent[find(cf)] = find(ct);
    }

    // Tarjan emits components in reverse topological order, so successors
    // are ranked before their predecessors.
    std::vector<int> rank(nc, 0);
    for (std::size_t c = 0; c < nc; ++c) {
        for (auto s : succ[c]) rank[c] = std::max(rank[c], rank[s] + 1);
    }

    std::map<std::size_t, std::vector<int>> members;
    for (int v = 0; v < n; ++v) members[find(comp_of[static_cast<std::size_t>(v)])].push_back(v);

    std::vector<std::pair<int, PriorityGroup>> ordered;
    for (auto& [root, nodes] : members) {
        PriorityGroup g;
        for (int v : nodes) {
            const auto r = static_cast<std::size_t>(rank[comp_of[static_cast<std::size_t>(v)]]);
            if (g.buckets.size() <= r) g.buckets.resize(r + 1);
            g.buckets[r].push_back(v);
        }
        ordered.emplace_back(nodes.front(), std::move(g));
    }
    // Node ids follow key order, so the smallest id is the smallest key.
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::vector<PriorityGroup> groups;
    for (auto& [first, g] : ordered) {
        g.group_id = static_cast<int>(groups.size());
        groups.push_back(std::move(g));
    }
    return groups;
}

}  // namespace mergesight
