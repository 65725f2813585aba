#include <gtest/gtest.h>

#include <random>

#include "diff3_oracle.hpp"
#include "mergesight/diff3.hpp"
#include "random_cases.hpp"

using namespace mergesight;

namespace {

const char* kSevenVars =
    "int v1 = 1;\nint v2 = 2;\nint v3 = 3;\nint v4 = 4;\nint v5 = 5;\nint v6 = 6;\nint v7 = 7;\n";

// Replace each conflict block with one side's lines.
std::string resolve(const std::string& merged, Variant keep) {
    std::string out;
    int zone = 0;  // 0 outside, 1 in A part, 2 in B part
    for (const auto& line : split_lines(merged).lines) {
        if (line == kConflictBegin) { zone = 1; continue; }
        if (line == kConflictSeparator) { zone = 2; continue; }
        if (line == kConflictEnd) { zone = 0; continue; }
        if (zone == 0 || (zone == 1) == (keep == Variant::A)) out += line + "\n";
    }
    return out;
}

std::string apply_side(const std::string& base, const MergeOutcome& m, Variant side) {
    const auto lines = split_lines(base).lines;
    std::string out;
    int next = 1;
    for (const auto& p : m.pairs) {
        for (; next < p.base_range.start_line; ++next) out += lines[static_cast<std::size_t>(next - 1)] + "\n";
        for (const auto& l : p.side(side).text) out += l + "\n";
        next = p.base_range.end_line + 1;
    }
    for (; next <= static_cast<int>(lines.size()); ++next) out += lines[static_cast<std::size_t>(next - 1)] + "\n";
    return out;
}

}  // namespace

TEST(ThreeWayMerge, AllEqual) {
    const auto m = three_way_merge("a\nb\n", "a\nb\n", "a\nb\n");
    EXPECT_TRUE(m.pairs.empty());
    EXPECT_EQ(m.merged_text, "a\nb\n");
}

TEST(ThreeWayMerge, OneSidedChangeIsTaken) {
    const auto m = three_way_merge("a\nb\nc\n", "a\nB\nc\n", "a\nb\nc\n");
    ASSERT_EQ(m.pairs.size(), 1u);
    EXPECT_EQ(m.pairs[0].status, PairStatus::AppliedA);
    EXPECT_EQ(m.merged_text, "a\nB\nc\n");
    const auto n = three_way_merge("a\nb\nc\n", "a\nb\nc\n", "a\nB\nc\n");
    EXPECT_EQ(n.pairs[0].status, PairStatus::AppliedB);
    EXPECT_EQ(n.merged_text, "a\nB\nc\n");
}

TEST(ThreeWayMerge, ThreeRules) {
    const std::string a =
        "int v1 = 10;\nint v2 = 20;\nint v8 = 8;\nint v3 = 3;\nint v5 = 5;\nint v6 = 6;\nint v7 = 70;\n";
    const std::string b = "int v1 = 1;\nint v2 = 2;\nint v3 = 3;\nint v5 = 5;\nint v6 = 6;\nint v7 = 700;\n";
    const auto m = three_way_merge(kSevenVars, a, b, "vars.c");
    ASSERT_EQ(m.pairs.size(), 3u);

    EXPECT_EQ(m.pairs[0].status, PairStatus::AppliedA);
    EXPECT_EQ(m.pairs[0].a.range, LineRange::closed(1, 3));
    EXPECT_EQ(m.pairs[0].b.range, LineRange::closed(1, 2));

    EXPECT_EQ(m.pairs[1].status, PairStatus::AppliedSame);
    EXPECT_TRUE(m.pairs[1].a.range.empty());
    EXPECT_TRUE(m.pairs[1].b.range.empty());
    EXPECT_EQ(m.pairs[1].a.range.start_line, 5);
    EXPECT_EQ(m.pairs[1].b.range.start_line, 4);
    EXPECT_EQ(m.pairs[1].base_range, LineRange::closed(4, 4));

    EXPECT_EQ(m.pairs[2].status, PairStatus::Conflict);
    EXPECT_EQ(m.pairs[2].a.range, LineRange::closed(7, 7));
    EXPECT_EQ(m.pairs[2].b.range, LineRange::closed(6, 6));

    EXPECT_EQ(m.merged_text,
              "int v1 = 10;\nint v2 = 20;\nint v8 = 8;\nint v3 = 3;\nint v5 = 5;\nint v6 = 6;\n"
              "<<<<<<< A\nint v7 = 70;\n=======\nint v7 = 700;\n>>>>>>> B\n");
    EXPECT_EQ(m.merged_ranges[2], LineRange::closed(7, 11));
    EXPECT_EQ(m.pairs[0].a.file, "vars.c");
}

TEST(ThreeWayMerge, AdjacentChangesCoalesce) {
    const auto m = three_way_merge("a\nb\nc\n", "A\nb\nc\n", "a\nB\nc\n");
    ASSERT_EQ(m.pairs.size(), 1u);
    EXPECT_EQ(m.pairs[0].status, PairStatus::Conflict);
    EXPECT_EQ(m.pairs[0].base_range, LineRange::closed(1, 2));
}

TEST(ThreeWayMerge, SeparatedChangesStayApart) {
    const auto m = three_way_merge("a\nb\nc\n", "A\nb\nc\n", "a\nb\nC\n");
    ASSERT_EQ(m.pairs.size(), 2u);
    EXPECT_EQ(m.merged_text, "A\nb\nC\n");
    EXPECT_EQ(m.pairs[1].id, 1);
}

TEST(ThreeWayMerge, FirstPairIdOffsetsIds) {
    const auto m = three_way_merge("a\nb\nc\n", "A\nb\nc\n", "a\nb\nC\n", "x", 10);
    EXPECT_EQ(m.pairs[0].id, 10);
    EXPECT_EQ(m.pairs[1].id, 11);
}

TEST(ThreeWayMerge, BothInsertAtSamePlace) {
    const auto m = three_way_merge("a\n", "a\nx\n", "a\ny\n");
    ASSERT_EQ(m.pairs.size(), 1u);
    EXPECT_EQ(m.pairs[0].status, PairStatus::Conflict);
    EXPECT_TRUE(m.pairs[0].base_range.empty());
    EXPECT_EQ(m.merged_text, "a\n<<<<<<< A\nx\n=======\ny\n>>>>>>> B\n");
}

TEST(ThreeWayMerge, EmptyBase) {
    const auto m = three_way_merge("", "x\n", "");
    ASSERT_EQ(m.pairs.size(), 1u);
    EXPECT_EQ(m.pairs[0].status, PairStatus::AppliedA);
    EXPECT_EQ(m.merged_text, "x\n");
}

TEST(ThreeWayMerge, TrailingNewlineFromChangingSide) {
    EXPECT_EQ(three_way_merge("a\n", "a", "a\n").merged_text, "a");
    EXPECT_EQ(three_way_merge("a", "a", "a\n").merged_text, "a\n");
    EXPECT_EQ(three_way_merge("a", "a", "a").merged_text, "a");
}

TEST(ThreeWayMerge, ConflictAtEndKeepsNewline) {
    const auto m = three_way_merge("a", "b", "c");
    EXPECT_EQ(m.merged_text, "<<<<<<< A\nb\n=======\nc\n>>>>>>> B\n");
}

TEST(ThreeWayMerge, RandomAgainstSlotOracle) {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 1000; ++iter) {
        const auto t = testgen::random_text_triple(rng);
        const auto m = three_way_merge(t.base, t.a, t.b);
        const auto want = oracle::classify(t.base, t.a, t.b);
        ASSERT_EQ(m.pairs.size(), want.regions.size()) << iter;
        for (std::size_t i = 0; i < m.pairs.size(); ++i) {
            const auto& p = m.pairs[i];
            const auto& r = want.regions[i];
            EXPECT_EQ(p.status, r.status);
            EXPECT_EQ(p.base_range.start_line - 1, r.base_lo);
            EXPECT_EQ(p.base_range.start_line - 1 + p.base_range.length(), r.base_hi);
            EXPECT_EQ(p.a.text, r.a_text);
            EXPECT_EQ(p.b.text, r.b_text);
            EXPECT_EQ(static_cast<int>(p.a.text.size()), p.a.range.length());
        }
        EXPECT_EQ(m.merged_text, want.merged);
    }
}

TEST(ThreeWayMerge, ResolvingConflictsReconstructsEachSide) {
    std::mt19937 rng(12);
    for (int iter = 0; iter < 500; ++iter) {
        auto t = testgen::random_text_triple(rng);
        // Full-newline texts keep the comparison line based.
        if (!t.base.empty() && t.base.back() != '\n') t.base += '\n';
        if (!t.a.empty() && t.a.back() != '\n') t.a += '\n';
        if (!t.b.empty() && t.b.back() != '\n') t.b += '\n';
        const auto m = three_way_merge(t.base, t.a, t.b);
        const auto lines = split_lines(t.base).lines;
        for (Variant side : {Variant::A, Variant::B}) {
            // Conflicts resolved to `side`, everything else as merged.
            std::string rebuilt;
            int next = 1;
            for (const auto& p : m.pairs) {
                for (; next < p.base_range.start_line; ++next) rebuilt += lines[static_cast<std::size_t>(next - 1)] + "\n";
                const Variant take = p.status == PairStatus::Conflict ? side
                                     : p.status == PairStatus::AppliedB ? Variant::B
                                                                         : Variant::A;
                for (const auto& l : p.side(take).text) rebuilt += l + "\n";
                next = p.base_range.end_line + 1;
            }
            for (; next <= static_cast<int>(lines.size()); ++next) rebuilt += lines[static_cast<std::size_t>(next - 1)] + "\n";
            EXPECT_EQ(resolve(m.merged_text, side), rebuilt);
            // Every DCB of one side replayed over base gives that side back.
            EXPECT_EQ(apply_side(t.base, m, side), side == Variant::A ? t.a : t.b);
        }
        EXPECT_EQ(resolve(m.merged_text, Variant::A).find("<<<<<<<"), std::string::npos);
    }
}

TEST(ThreeWayMerge, SwappingSidesSwapsLabels) {
    std::mt19937 rng(13);
    for (int iter = 0; iter < 500; ++iter) {
        const auto t = testgen::random_text_triple(rng);
        const auto ab = three_way_merge(t.base, t.a, t.b);
        const auto ba = three_way_merge(t.base, t.b, t.a);
        ASSERT_EQ(ab.pairs.size(), ba.pairs.size());
        for (std::size_t i = 0; i < ab.pairs.size(); ++i) {
            const auto& x = ab.pairs[i];
            const auto& y = ba.pairs[i];
            EXPECT_EQ(x.base_range, y.base_range);
            EXPECT_EQ(x.a.text, y.b.text);
            EXPECT_EQ(x.b.text, y.a.text);
            EXPECT_EQ(x.a.range, y.b.range);
            PairStatus swapped = x.status;
            if (x.status == PairStatus::AppliedA) swapped = PairStatus::AppliedB;
            if (x.status == PairStatus::AppliedB) swapped = PairStatus::AppliedA;
            EXPECT_EQ(swapped, y.status);
        }
    }
}
