#include "mergesight/report.hpp"

#include <map>

namespace mergesight {

std::vector<SuggestionItem> build_items(const std::vector<PriorityGroup>& groups, const Mdg& mdg,
                                        const Alignment& alignment,
                                        std::span<const DcbPair> pairs) {
    std::map<int, const DcbPair*> pair_by_id;
    for (const auto& p : pairs) pair_by_id[p.id] = &p;

    std::vector<SuggestionItem> out;
    for (const auto& g : groups) {
        for (std::size_t r = 0; r < g.buckets.size(); ++r) {
            for (int id : g.buckets[r]) {
                const MdgNode& n = mdg.nodes[static_cast<std::size_t>(id)];
                const auto fine = [&](Variant side) -> const FineNode& {
                    return alignment.graph(side).nodes[static_cast<std::size_t>(*n.node(side))];
                };
                const Variant primary = n.node_a ? Variant::A : Variant::B;
                const FineNode& head = fine(primary);

                SuggestionItem item;
                item.group_id = g.group_id;
                item.rank = static_cast<int>(r);
                if (n.status == MdgStatus::Conflict) {
                    const DcbPair& pair = *pair_by_id.at(*head.dcb_pair_id);
                    const auto range_of = [&](Variant side) {
                        return n.node(side) ? fine(side).range : pair.side(side).range;
                    };
                    item.kind = ItemKind::C;
                    item.name = head.name;
                    item.file = head.file;
                    item.range = range_of(Variant::A);
                    item.range_b = range_of(Variant::B);
                    out.push_back(std::move(item));
                    continue;
                }
                for (Variant side : {Variant::A, Variant::B}) {
                    if (!n.node(side)) continue;
                    const FineNode& f = fine(side);
                    SuggestionItem s = item;
                    s.kind = side == Variant::A ? ItemKind::A : ItemKind::B;
                    s.applied = f.apply_state == ApplyState::Applied;
                    s.name = f.name;
                    s.file = f.file;
                    s.range = f.range;
                    out.push_back(std::move(s));
                }
            }
        }
    }
    return out;
}

std::string render_text(const std::vector<SuggestionItem>& items, HeaderStyle header) {
    std::string out = header == HeaderStyle::Legacy ? kHeaderLegacy : kHeaderCurrent;
    out += '\n';
    int group = -1;
    for (const auto& item : items) {
        if (item.group_id != group) {
            group = item.group_id;
            out += "@@ Group " + std::to_string(group) + ":\n";
        }
        const std::string indent = "@@" + std::string(static_cast<std::size_t>(4 + 2 * item.rank), ' ');
        out += indent + "|\n";
        out += indent;
        switch (item.kind) {
            case ItemKind::C:
                out += "C-- " + item.name + ' ' + item.file + ' ' + to_string(item.range) + ", " +
                       to_string(*item.range_b);
                break;
            case ItemKind::A:
            case ItemKind::B:
                out += item.kind == ItemKind::A ? "A-- " : "B-- ";
                if (item.applied) out += "(applied) ";
                out += item.name + ' ' + item.file + ' ' + to_string(item.range);
                break;
        }
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json render_json(const std::vector<SuggestionItem>& items) {
    const auto range = [](const LineRange& r) {
        return nlohmann::ordered_json{{"start_line", r.start_line}, {"end_line", r.end_line}};
    };
    auto groups = nlohmann::ordered_json::array();
    int group = -1;
    for (const auto& item : items) {
        if (item.group_id != group) {
            group = item.group_id;
            groups.push_back({{"id", group}, {"buckets", nlohmann::ordered_json::array()}});
        }
        auto& buckets = groups.back()["buckets"];
        while (buckets.size() <= static_cast<std::size_t>(item.rank)) {
            buckets.push_back(nlohmann::ordered_json::array());
        }
        nlohmann::ordered_json j;
        j["kind"] = item.kind == ItemKind::C ? "C" : item.kind == ItemKind::A ? "A" : "B";
        j["applied"] = item.applied;
        j["name"] = item.name;
        j["file"] = item.file;
        if (item.kind == ItemKind::C) {
            j["range_a"] = range(item.range);
            j["range_b"] = range(*item.range_b);
        } else {
            j["range"] = range(item.range);
        }
        buckets[static_cast<std::size_t>(item.rank)].push_back(std::move(j));
    }
    return {{"groups", std::move(groups)}};
}

}  // namespace mergesight
