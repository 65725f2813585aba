#pragma once

#include <algorithm>
#include <compare>
#include <string>

namespace mergesight {

/// Inclusive, 1-based line interval. An empty range is a zero-length anchor
/// encoded as end_line == start_line - 1, where start_line is the line the
/// missing content would begin at.
struct LineRange {
    int start_line = 1;
    int end_line = 0;

    static constexpr LineRange closed(int start, int end) { return {start, end}; }
    static constexpr LineRange empty_at(int anchor) { return {anchor, anchor - 1}; }

    constexpr bool empty() const { return end_line < start_line; }
    constexpr int length() const { return empty() ? 0 : end_line - start_line + 1; }

    constexpr bool contains(int line) const { return line >= start_line && line <= end_line; }
    constexpr bool contains(const LineRange& other) const {
        return !other.empty() && other.start_line >= start_line && other.end_line <= end_line;
    }
    constexpr bool intersects(const LineRange& other) const {
        return !empty() && !other.empty() && other.start_line <= end_line &&
               start_line <= other.end_line;
    }
    constexpr LineRange intersection(const LineRange& other) const {
        return {std::max(start_line, other.start_line), std::min(end_line, other.end_line)};
    }

    friend constexpr bool operator==(const LineRange&, const LineRange&) = default;
    friend constexpr auto operator<=>(const LineRange&, const LineRange&) = default;
};

/// "start-end", e.g. "41-44". Empty anchors render as "5-4".
inline std::string to_string(const LineRange& r) {
    return std::to_string(r.start_line) + "-" + std::to_string(r.end_line);
}

}  // namespace mergesight
