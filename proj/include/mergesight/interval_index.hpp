#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mergesight/line_range.hpp"

namespace mergesight {

/// A maximal run of lines sharing one definition color.
struct ColorRun {
    int def_id = 0;
    LineRange range;

    friend bool operator==(const ColorRun&, const ColorRun&) = default;
};

/// Segment tree over lines 1..n with range-assign painting and range color
/// queries. Both operations touch O(log n) nodes plus one per reported run.
class IntervalIndex {
public:
    IntervalIndex() = default;
    explicit IntervalIndex(int n_lines);

    int n_lines() const { return n_; }

    /// Paints every line of `range` with `color`, overwriting earlier paint.
    void paint(const LineRange& range, int color);

    /// Runs of painted lines within `range`, in line order. Unpainted lines
    /// are skipped. Throws std::out_of_range if `range` leaves 1..n_lines.
    std::vector<ColorRun> query(const LineRange& range) const;

    std::optional<int> color_at(int line) const;

private:
    static constexpr int kNone = -1;
    static constexpr int kMixed = -2;

    int n_ = 0;
    std::vector<int> color_;  // per tree node: a color, kNone or kMixed

    void paint(int node, int lo, int hi, int l, int r, int color);
    void query(int node, int lo, int hi, int l, int r, std::vector<ColorRun>& out) const;
};

/// Builds the index for one file. Definitions must be disjoint or nested;
/// larger ranges are painted first so each line reports its innermost
/// definition. Throws std::out_of_range for a range outside 1..n_lines.
IntervalIndex build_interval_index(std::span<const ColorRun> definitions, int n_lines);

}  // namespace mergesight
