#include "mergesight/diff3.hpp"

#include <algorithm>
#include <tuple>

namespace mergesight {
namespace {

// Hunk position in half-open 0-based base coordinates; insertions have lo == hi.
struct TaggedHunk {
    std::size_t lo = 0;
    std::size_t hi = 0;
    Variant side = Variant::A;
    long delta = 0;  // variant lines minus base lines
};

struct Region {
    std::size_t lo = 0;
    std::size_t hi = 0;
    bool changed_a = false;
    bool changed_b = false;
    long delta_a = 0;
    long delta_b = 0;
};

std::vector<TaggedHunk> tag(const std::vector<Hunk>& hunks, Variant side) {
    std::vector<TaggedHunk> out;
    out.reserve(hunks.size());
    for (const auto& h : hunks) {
        const auto lo = static_cast<std::size_t>(h.base.start_line - 1);
        out.push_back({lo, lo + static_cast<std::size_t>(h.base.length()), side,
                       static_cast<long>(h.variant.length()) - h.base.length()});
    }
    return out;
}

LineRange range_from(std::size_t first0, std::size_t count) {
    const int start = static_cast<int>(first0) + 1;
    return count == 0 ? LineRange::empty_at(start)
                      : LineRange::closed(start, start + static_cast<int>(count) - 1);
}

Lines slice(const Lines& lines, std::size_t first, std::size_t count) {
    return Lines(lines.begin() + static_cast<long>(first),
                 lines.begin() + static_cast<long>(first + count));
}

}  // namespace

const char* to_string(PairStatus s) {
    switch (s) {
        case PairStatus::AppliedA: return "applied-a";
        case PairStatus::AppliedB: return "applied-b";
        case PairStatus::AppliedSame: return "applied-same";
        case PairStatus::Conflict: return "conflict";
    }
    return "?";
}

bool MergeOutcome::has_conflicts() const {
    return std::any_of(pairs.begin(), pairs.end(),
                       [](const DcbPair& p) { return p.status == PairStatus::Conflict; });
}

MergeOutcome three_way_merge(std::string_view base_text, std::string_view a_text,
                             std::string_view b_text, std::string file, int first_pair_id) {
    const SplitText base = split_lines(base_text);
    const SplitText a = split_lines(a_text);
    const SplitText b = split_lines(b_text);

    auto hunks = tag(diff_lines(base.lines, a.lines), Variant::A);
    auto hunks_b = tag(diff_lines(base.lines, b.lines), Variant::B);
    hunks.insert(hunks.end(), hunks_b.begin(), hunks_b.end());
    std::sort(hunks.begin(), hunks.end(), [](const TaggedHunk& x, const TaggedHunk& y) {
        return std::tie(x.lo, x.hi, x.side) < std::tie(y.lo, y.hi, y.side);
    });

    // Transitive closure of overlap/adjacency on base ranges.
    std::vector<Region> regions;
    for (const auto& h : hunks) {
        if (regions.empty() || h.lo > regions.back().hi) {
            regions.push_back({h.lo, h.hi});
        }
        Region& r = regions.back();
        r.hi = std::max(r.hi, h.hi);
        if (h.side == Variant::A) {
            r.changed_a = true;
            r.delta_a += h.delta;
        } else {
            r.changed_b = true;
            r.delta_b += h.delta;
        }
    }

    MergeOutcome out;
    out.file = file;
    Lines merged;
    std::size_t cursor = 0;  // next base line to copy
    long shift_a = 0;
    long shift_b = 0;
    for (const auto& r : regions) {
        while (cursor < r.lo) merged.push_back(base.lines[cursor++]);
        cursor = r.hi;

        const std::size_t base_len = r.hi - r.lo;
        const auto start_a = static_cast<std::size_t>(static_cast<long>(r.lo) + shift_a);
        const auto start_b = static_cast<std::size_t>(static_cast<long>(r.lo) + shift_b);
        const auto len_a = static_cast<std::size_t>(static_cast<long>(base_len) + r.delta_a);
        const auto len_b = static_cast<std::size_t>(static_cast<long>(base_len) + r.delta_b);
        shift_a += r.delta_a;
        shift_b += r.delta_b;

        DcbPair pair;
        pair.id = first_pair_id + static_cast<int>(out.pairs.size());
        pair.base_range = range_from(r.lo, base_len);
        pair.a = {file, Variant::A, range_from(start_a, len_a), slice(a.lines, start_a, len_a)};
        pair.b = {file, Variant::B, range_from(start_b, len_b), slice(b.lines, start_b, len_b)};
        if (!r.changed_b) {
            pair.status = PairStatus::AppliedA;
        } else if (!r.changed_a) {
            pair.status = PairStatus::AppliedB;
        } else if (pair.a.text == pair.b.text) {
            pair.status = PairStatus::AppliedSame;
        } else {
            pair.status = PairStatus::Conflict;
        }

        const std::size_t merged_first = merged.size();
        switch (pair.status) {
            case PairStatus::AppliedA:
            case PairStatus::AppliedSame:
                merged.insert(merged.end(), pair.a.text.begin(), pair.a.text.end());
                break;
            case PairStatus::AppliedB:
                merged.insert(merged.end(), pair.b.text.begin(), pair.b.text.end());
                break;
            case PairStatus::Conflict:
                merged.emplace_back(kConflictBegin);
                merged.insert(merged.end(), pair.a.text.begin(), pair.a.text.end());
                merged.emplace_back(kConflictSeparator);
                merged.insert(merged.end(), pair.b.text.begin(), pair.b.text.end());
                merged.emplace_back(kConflictEnd);
                break;
        }
        out.merged_ranges.push_back(range_from(merged_first, merged.size() - merged_first));
        out.pairs.push_back(std::move(pair));
    }
    while (cursor < base.lines.size()) merged.push_back(base.lines[cursor++]);

    // The side that changed the final-newline state wins; markers always end in '\n'.
    bool trailing = a.trailing_newline == base.trailing_newline ? b.trailing_newline
                                                               : a.trailing_newline;
    if (!merged.empty() && merged.back() == kConflictEnd && !out.pairs.empty() &&
        out.pairs.back().status == PairStatus::Conflict &&
        out.merged_ranges.back().end_line == static_cast<int>(merged.size())) {
        trailing = true;
    }
    out.merged_text = join_lines(merged, trailing && !merged.empty());
    return out;
}

}  // namespace mergesight
