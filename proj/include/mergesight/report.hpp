#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "mergesight/priority.hpp"

namespace mergesight {

enum class ItemKind { C, A, B };

/// One line of the suggestion report. C items describe a conflict pair and
/// carry A's range in `range` and B's in `range_b`; A/B items describe one
/// violated DCB slice.
struct SuggestionItem {
    ItemKind kind = ItemKind::C;
    bool applied = false;
    std::string name;
    std::string file;
    LineRange range;
    std::optional<LineRange> range_b;
    int group_id = 0;
    int rank = 0;

    friend bool operator==(const SuggestionItem&, const SuggestionItem&) = default;
};

enum class HeaderStyle { Current, Legacy };

inline constexpr const char* kHeaderCurrent = "@@ WizardMerge Result";
inline constexpr const char* kHeaderLegacy = "@@ MergeGuardian Result";

/// Items ordered by group, then rank, then key. A conflict side without a
/// fine node takes the range of its DCB.
std::vector<SuggestionItem> build_items(const std::vector<PriorityGroup>& groups, const Mdg& mdg,
                                        const Alignment& alignment,
                                        std::span<const DcbPair> pairs);

std::string render_text(const std::vector<SuggestionItem>& items,
                        HeaderStyle header = HeaderStyle::Current);

nlohmann::ordered_json render_json(const std::vector<SuggestionItem>& items);

}  // namespace mergesight
