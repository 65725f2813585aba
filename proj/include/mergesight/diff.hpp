#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mergesight/line_range.hpp"

namespace mergesight {

using Lines = std::vector<std::string>;

/// Newline-delimited text split into lines. Line content excludes the '\n';
/// no other normalization happens ('\r' stays part of the line).
struct SplitText {
    Lines lines;
    bool trailing_newline = false;
};

SplitText split_lines(std::string_view text);
std::string join_lines(const Lines& lines, bool trailing_newline);

/// One changed region of a two-way diff. `base` is empty for pure insertions
/// and `variant` is empty for pure deletions.
struct Hunk {
    LineRange base;
    LineRange variant;
    Lines variant_lines;

    friend bool operator==(const Hunk&, const Hunk&) = default;
};

/// Line diff of `variant` against `base`. The edit script keeps a longest
/// common subsequence and, among all such scripts, uses the fewest hunks.
/// Hunks are disjoint and ordered by base position.
std::vector<Hunk> diff_lines(const Lines& base, const Lines& variant);
std::vector<Hunk> diff_lines(std::string_view base, std::string_view variant);

/// Replays `hunks` over `base`. Inverse of diff_lines for the same inputs.
Lines apply_hunks(const Lines& base, const std::vector<Hunk>& hunks);

}  // namespace mergesight
