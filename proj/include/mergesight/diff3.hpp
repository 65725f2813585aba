#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mergesight/diff.hpp"
#include "mergesight/line_range.hpp"

namespace mergesight {

enum class Variant { A, B };

constexpr Variant other(Variant v) { return v == Variant::A ? Variant::B : Variant::A; }
constexpr const char* to_string(Variant v) { return v == Variant::A ? "A" : "B"; }

enum class PairStatus { AppliedA, AppliedB, AppliedSame, Conflict };

const char* to_string(PairStatus s);

/// Diff code block: the lines one variant contributes to a changed region.
/// Empty when that variant deleted the region.
struct Dcb {
    std::string file;
    Variant variant = Variant::A;
    LineRange range;
    Lines text;

    friend bool operator==(const Dcb&, const Dcb&) = default;
};

struct DcbPair {
    int id = 0;
    Dcb a;
    Dcb b;
    LineRange base_range;
    PairStatus status = PairStatus::Conflict;

    const Dcb& side(Variant v) const { return v == Variant::A ? a : b; }

    friend bool operator==(const DcbPair&, const DcbPair&) = default;
};

inline constexpr std::string_view kConflictBegin = "<<<<<<< A";
inline constexpr std::string_view kConflictSeparator = "=======";
inline constexpr std::string_view kConflictEnd = ">>>>>>> B";

struct MergeOutcome {
    std::string file;
    std::string merged_text;
    std::vector<DcbPair> pairs;
    /// merged_ranges[i] locates pairs[i] in merged_text; for a conflict it
    /// spans the whole marker block.
    std::vector<LineRange> merged_ranges;

    bool has_conflicts() const;
};

/// Line-based three-way merge. Hunks of diff(base, a) and diff(base, b)
/// whose base ranges overlap or touch are coalesced into one pair; a pair
/// changed on one side takes that side, identical changes take A's text
/// once, and divergent changes become a conflict block.
/// Pair ids are assigned densely from `first_pair_id` in file order.
MergeOutcome three_way_merge(std::string_view base, std::string_view a, std::string_view b,
                             std::string file = {}, int first_pair_id = 0);

}  // namespace mergesight
