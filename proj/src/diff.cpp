#include "mergesight/diff.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

namespace mergesight {
namespace {

enum class Op : std::uint8_t { Keep, Delete, Insert };

// Above this many DP cells the hunk-minimizing table gets too large and the
// middle section falls back to a plain Myers shortest edit script.
constexpr std::size_t kMaxTableCells = std::size_t{1} << 22;

// Backward DP over (i, j, inside_hunk) minimizing edits first, hunks second.
// Cost is packed as edits * scale + hunks so a single compare orders both.
std::vector<Op> min_hunk_script(const std::string* base, std::size_t n, const std::string* var,
                                std::size_t m) {
    const std::uint64_t scale = n + m + 2;
    const std::size_t width = m + 1;
    // cost[s][i * width + j]
    std::vector<std::uint64_t> cost[2] = {std::vector<std::uint64_t>((n + 1) * width),
                                          std::vector<std::uint64_t>((n + 1) * width)};
    constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();

    for (std::size_t ii = n + 1; ii-- > 0;) {
        for (std::size_t jj = m + 1; jj-- > 0;) {
            const std::size_t at = ii * width + jj;
            if (ii == n && jj == m) {
                cost[0][at] = cost[1][at] = 0;
                continue;
            }
            for (int s = 0; s < 2; ++s) {
                std::uint64_t best = kInf;
                const std::uint64_t open = s == 0 ? 1 : 0;
                if (ii < n && jj < m && base[ii] == var[jj]) {
                    best = std::min(best, cost[0][at + width + 1]);
                }
                if (ii < n) best = std::min(best, scale + open + cost[1][at + width]);
                if (jj < m) best = std::min(best, scale + open + cost[1][at + 1]);
                cost[s][at] = best;
            }
        }
    }

    std::vector<Op> ops;
    ops.reserve(n + m);
    std::size_t i = 0;
    std::size_t j = 0;
    int s = 0;
    while (i < n || j < m) {
        const std::size_t at = i * width + j;
        const std::uint64_t target = cost[s][at];
        const std::uint64_t open = s == 0 ? 1 : 0;
        if (i < n && j < m && base[i] == var[j] && cost[0][at + width + 1] == target) {
            ops.push_back(Op::Keep);
            ++i;
            ++j;
            s = 0;
        } else if (i < n && scale + open + cost[1][at + width] == target) {
            ops.push_back(Op::Delete);
            ++i;
            s = 1;
        } else {
            ops.push_back(Op::Insert);
            ++j;
            s = 1;
        }
    }
    return ops;
}

// Myers O(ND) greedy shortest edit script with a per-step trace.
std::vector<Op> myers_script(const std::string* a, std::size_t n, const std::string* b,
                             std::size_t m) {
    const auto N = static_cast<long>(n);
    const auto M = static_cast<long>(m);
    const long max_d = N + M;
    const long offset = max_d + 1;
    std::vector<long> v(2 * max_d + 3, 0);
    std::vector<std::vector<long>> trace;

    long final_d = 0;
    for (long d = 0; d <= max_d; ++d) {
        bool done = false;
        for (long k = -d; k <= d; k += 2) {
            long x = 0;
            if (k == -d || (k != d && v[offset + k - 1] < v[offset + k + 1])) {
                x = v[offset + k + 1];
            } else {
                x = v[offset + k - 1] + 1;
            }
            long y = x - k;
            while (x < N && y < M && a[x] == b[y]) {
                ++x;
                ++y;
            }
            v[offset + k] = x;
            if (x >= N && y >= M) {
                done = true;
                break;
            }
        }
        trace.emplace_back(v.begin() + (offset - d - 1), v.begin() + (offset + d + 2));
        if (done) {
            final_d = d;
            break;
        }
    }

    std::vector<Op> ops;
    long x = N;
    long y = M;
    for (long d = final_d; d > 0; --d) {
        const auto& prev = trace[d - 1];
        // trace[d - 1] holds k in [-d, d] at index k + d.
        const auto at = [&](long k) { return prev[k + d]; };
        const long k = x - y;
        long prev_k = 0;
        if (k == -d || (k != d && at(k - 1) < at(k + 1))) {
            prev_k = k + 1;
        } else {
            prev_k = k - 1;
        }
        const long prev_x = at(prev_k);
        const long prev_y = prev_x - prev_k;
        while (x > prev_x && y > prev_y) {
            ops.push_back(Op::Keep);
            --x;
            --y;
        }
        ops.push_back(x == prev_x ? Op::Insert : Op::Delete);
        x = prev_x;
        y = prev_y;
    }
    while (x > 0 && y > 0) {
        ops.push_back(Op::Keep);
        --x;
        --y;
    }
    std::reverse(ops.begin(), ops.end());
    return ops;
}

}  // namespace

SplitText split_lines(std::string_view text) {
    SplitText out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            out.lines.emplace_back(text.substr(pos));
            out.trailing_newline = false;
            return out;
        }
        out.lines.emplace_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    out.trailing_newline = !text.empty();
    return out;
}

std::string join_lines(const Lines& lines, bool trailing_newline) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size() || trailing_newline) out.push_back('\n');
    }
    return out;
}

std::vector<Hunk> diff_lines(const Lines& base, const Lines& variant) {
    const std::size_t n = base.size();
    const std::size_t m = variant.size();

    std::size_t prefix = 0;
    while (prefix < n && prefix < m && base[prefix] == variant[prefix]) ++prefix;
    std::size_t suffix = 0;
    while (suffix < n - prefix && suffix < m - prefix &&
           base[n - 1 - suffix] == variant[m - 1 - suffix]) {
        ++suffix;
    }

    const std::size_t mid_n = n - prefix - suffix;
    const std::size_t mid_m = m - prefix - suffix;
    std::vector<Op> ops;
    if ((mid_n + 1) * (mid_m + 1) <= kMaxTableCells) {
        ops = min_hunk_script(base.data() + prefix, mid_n, variant.data() + prefix, mid_m);
    } else {
        ops = myers_script(base.data() + prefix, mid_n, variant.data() + prefix, mid_m);
    }

    std::vector<Hunk> hunks;
    std::size_t i = prefix;  // 0-based base cursor
    std::size_t j = prefix;  // 0-based variant cursor
    std::size_t k = 0;
    while (k < ops.size()) {
        if (ops[k] == Op::Keep) {
            ++i;
            ++j;
            ++k;
            continue;
        }
        const std::size_t bi = i;
        const std::size_t vj = j;
        Hunk h;
        while (k < ops.size() && ops[k] != Op::Keep) {
            if (ops[k] == Op::Delete) {
                ++i;
            } else {
                h.variant_lines.push_back(variant[j]);
                ++j;
            }
            ++k;
        }
        const int b_first = static_cast<int>(bi) + 1;
        const int v_first = static_cast<int>(vj) + 1;
        h.base = LineRange::closed(b_first, static_cast<int>(i));
        h.variant = LineRange::closed(v_first, static_cast<int>(j));
        hunks.push_back(std::move(h));
    }
    return hunks;
}

std::vector<Hunk> diff_lines(std::string_view base, std::string_view variant) {
    return diff_lines(split_lines(base).lines, split_lines(variant).lines);
}

Lines apply_hunks(const Lines& base, const std::vector<Hunk>& hunks) {
    Lines out;
    std::size_t cursor = 0;  // 0-based next base line to copy
    for (const auto& h : hunks) {
        const auto first = static_cast<std::size_t>(h.base.start_line - 1);
        while (cursor < first) out.push_back(base[cursor++]);
        out.insert(out.end(), h.variant_lines.begin(), h.variant_lines.end());
        cursor = first + static_cast<std::size_t>(h.base.length());
    }
    while (cursor < base.size()) out.push_back(base[cursor++]);
    return out;
}

}  // namespace mergesight
