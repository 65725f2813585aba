#include "mergesight/interval_index.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mergesight {
namespace {

void check_range(const LineRange& r, int n) {
    if (r.start_line < 1 || r.end_line > n || r.start_line > r.end_line + 1) {
        throw std::out_of_range("line range " + to_string(r) + " outside 1-" + std::to_string(n));
    }
}

}  // namespace

IntervalIndex::IntervalIndex(int n_lines)
    : n_(n_lines), color_(static_cast<std::size_t>(std::max(1, 4 * n_lines)), kNone) {}

void IntervalIndex::paint(const LineRange& range, int color) {
    check_range(range, n_);
    if (range.empty()) return;
    paint(1, 1, n_, range.start_line, range.end_line, color);
}

void IntervalIndex::paint(int node, int lo, int hi, int l, int r, int color) {
    if (r < lo || hi < l) return;
    auto& self = color_[static_cast<std::size_t>(node)];
    if (l <= lo && hi <= r) {
        self = color;
        return;
    }
    const int mid = lo + (hi - lo) / 2;
    auto& left = color_[static_cast<std::size_t>(2 * node)];
    auto& right = color_[static_cast<std::size_t>(2 * node + 1)];
    if (self != kMixed) {
        left = self;
        right = self;
    }
    paint(2 * node, lo, mid, l, r, color);
    paint(2 * node + 1, mid + 1, hi, l, r, color);
    self = left == right ? left : kMixed;
}

std::vector<ColorRun> IntervalIndex::query(const LineRange& range) const {
    check_range(range, n_);
    std::vector<ColorRun> out;
    if (!range.empty()) query(1, 1, n_, range.start_line, range.end_line, out);
    return out;
}

void IntervalIndex::query(int node, int lo, int hi, int l, int r,
                          std::vector<ColorRun>& out) const {
    if (r < lo || hi < l) return;
    const int self = color_[static_cast<std::size_t>(node)];
    if (self != kMixed) {
        if (self == kNone) return;
        const LineRange part = LineRange::closed(std::max(lo, l), std::min(hi, r));
        if (!out.empty() && out.back().def_id == self &&
            out.back().range.end_line + 1 == part.start_line) {
            out.back().range.end_line = part.end_line;
        } else {
            out.push_back({self, part});
        }
        return;
    }
    const int mid = lo + (hi - lo) / 2;
    query(2 * node, lo, mid, l, r, out);
    query(2 * node + 1, mid + 1, hi, l, r, out);
}

std::optional<int> IntervalIndex::color_at(int line) const {
    const auto runs = query(LineRange::closed(line, line));
    if (runs.empty()) return std::nullopt;
    return runs.front().def_id;
}

IntervalIndex build_interval_index(std::span<const ColorRun> definitions, int n_lines) {
    std::vector<ColorRun> order(definitions.begin(), definitions.end());
    std::stable_sort(order.begin(), order.end(), [](const ColorRun& a, const ColorRun& b) {
        return a.range.length() > b.range.length();
    });
    IntervalIndex index(n_lines);
    for (const auto& d : order) {
        if (d.range.empty()) continue;
        index.paint(d.range, d.def_id);
    }
    return index;
}

}  // namespace mergesight
