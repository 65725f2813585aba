#include <gtest/gtest.h>

#include <random>

#include "mdg_example.hpp"
#include "mdg_oracle.hpp"
#include "mergesight/priority.hpp"
#include "random_cases.hpp"
#include "scc_oracle.hpp"

using namespace mergesight;

namespace {

std::vector<std::string> names(const Alignment& al, const Mdg& mdg, const std::vector<int>& ids) {
    std::vector<std::string> out;
    for (int id : ids) out.push_back(al.a.nodes[static_cast<std::size_t>(*mdg.nodes[static_cast<std::size_t>(id)].node_a)].name);
    return out;
}

}  // namespace

TEST(BuildMdg, ExampleEdges) {
    const auto al = testgen::mdg_example();
    const auto mdg = build_mdg(al, testgen::mdg_example_violations());
    ASSERT_EQ(mdg.nodes.size(), 5u);
    // Ids follow line order: A=0 .. E=4.
    const std::vector<std::pair<int, int>> want{{0, 1}, {1, 4}, {2, 4}, {3, 2}, {4, 2}, {4, 3}};
    EXPECT_EQ(mdg.edges, want);
    EXPECT_EQ(mdg.nodes[2].status, MdgStatus::Conflict);
    EXPECT_EQ(mdg.nodes[0].status, MdgStatus::Violated);
}

TEST(CondenseAndRank, ExampleOrder) {
    const auto al = testgen::mdg_example();
    const auto mdg = build_mdg(al, testgen::mdg_example_violations());
    const auto groups = condense_and_rank(mdg);
    ASSERT_EQ(groups.size(), 1u);
    ASSERT_EQ(groups[0].buckets.size(), 3u);
    EXPECT_EQ(names(al, mdg, groups[0].buckets[0]), (std::vector<std::string>{"C", "D", "E"}));
    EXPECT_EQ(names(al, mdg, groups[0].buckets[1]), (std::vector<std::string>{"B"}));
    EXPECT_EQ(names(al, mdg, groups[0].buckets[2]), (std::vector<std::string>{"A"}));
}

TEST(BuildMdg, NothingInteresting) {
    std::mt19937 rng(3);
    auto al = testgen::random_alignment(rng);
    for (Sdg* g : {&al.a, &al.b}) {
        for (auto& n : g->nodes) n.apply_state = ApplyState::Applied;
    }
    EXPECT_TRUE(build_mdg(al, {}).nodes.empty());
    EXPECT_TRUE(condense_and_rank(build_mdg(al, {})).empty());
}

TEST(BuildMdg, SafeNodesArePassedThrough) {
    // x (violated) -> s (safe, applied) -> y (violated): one MDG edge x -> y.
    Alignment al;
    for (int i = 0; i < 3; ++i) {
        FineNode n;
        n.fine_id = i;
        n.file = "f.c";
        n.range = LineRange::closed(i + 1, i + 1);
        n.dcb_pair_id = i;
        n.apply_state = ApplyState::Applied;
        al.a.nodes.push_back(n);
    }
    al.a.edges = {{0, 1, SdgEdgeKind::Dependency}, {1, 2, SdgEdgeKind::Dependency}};
    al.links = link_mirrors(al.a.nodes, {}, MatchPolicy::Strict);
    ViolationSet v;
    v.nodes = {{Variant::A, 0}, {Variant::A, 2}};
    const auto mdg = build_mdg(al, v);
    ASSERT_EQ(mdg.nodes.size(), 2u);
    EXPECT_EQ(mdg.edges, (std::vector<std::pair<int, int>>{{0, 1}}));
}

TEST(BuildMdg, RandomAgainstPathSearch) {
    std::mt19937 rng(61);
    for (int iter = 0; iter < 500; ++iter) {
        const auto al = testgen::random_alignment(rng, 10, 0.2);
        const auto viol = detect_violations(al).violations;
        const auto mdg = build_mdg(al, viol);
        const auto want = oracle::mdg_edges(al, viol);
        ASSERT_EQ(mdg.nodes.size(), want.interesting.size()) << iter;
        std::set<std::pair<std::size_t, std::size_t>> got;
        for (const auto& [x, y] : mdg.edges) {
            got.insert({mdg.nodes[static_cast<std::size_t>(x)].link, mdg.nodes[static_cast<std::size_t>(y)].link});
        }
        EXPECT_EQ(got, want.edges) << iter;
    }
}

TEST(TarjanScc, RandomAgainstReachability) {
    std::mt19937 rng(71);
    for (int iter = 0; iter < 500; ++iter) {
        const int n = testgen::uniform(rng, 1, 12);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u != v && testgen::chance(rng, 0.15)) edges.push_back({u, v});
            }
        }
        const auto comps = tarjan_scc(n, edges);
        const auto label = oracle::component_labels(n, edges);
        std::vector<int> got(static_cast<std::size_t>(n), -1);
        for (const auto& c : comps) {
            for (int v : c) {
                EXPECT_EQ(got[static_cast<std::size_t>(v)], -1);
                got[static_cast<std::size_t>(v)] = c.front();
            }
        }
        EXPECT_EQ(got, label) << iter;
    }
}

TEST(CondenseAndRank, RandomInvariants) {
    std::mt19937 rng(81);
    for (int iter = 0; iter < 500; ++iter) {
        Mdg mdg;
        const int n = testgen::uniform(rng, 1, 12);
        for (int i = 0; i < n; ++i) {
            MdgNode node;
            node.id = i;
            node.key = {"f.c", i + 1, Variant::A};
            mdg.nodes.push_back(node);
        }
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u != v && testgen::chance(rng, 0.12)) mdg.edges.push_back({u, v});
            }
        }
        const auto groups = condense_and_rank(mdg);
        const auto label = oracle::component_labels(n, mdg.edges);
        std::vector<int> rank(static_cast<std::size_t>(n), -1);
        std::vector<int> group(static_cast<std::size_t>(n), -1);
        int smallest_prev = -1;
        for (const auto& g : groups) {
            int smallest = n;
            for (std::size_t r = 0; r < g.buckets.size(); ++r) {
                ASSERT_FALSE(g.buckets[r].empty());
                for (int v : g.buckets[r]) {
                    ASSERT_EQ(rank[static_cast<std::size_t>(v)], -1);
                    rank[static_cast<std::size_t>(v)] = static_cast<int>(r);
                    group[static_cast<std::size_t>(v)] = g.group_id;
                    smallest = std::min(smallest, v);
                }
                EXPECT_TRUE(std::is_sorted(g.buckets[r].begin(), g.buckets[r].end()));
            }
            EXPECT_GT(smallest, smallest_prev);
            smallest_prev = smallest;
        }
        for (int v = 0; v < n; ++v) EXPECT_GE(rank[static_cast<std::size_t>(v)], 0);
        for (const auto& [x, y] : mdg.edges) {
            const auto xi = static_cast<std::size_t>(x);
            const auto yi = static_cast<std::size_t>(y);
            EXPECT_EQ(group[xi], group[yi]);
            if (label[xi] == label[yi]) {
                EXPECT_EQ(rank[xi], rank[yi]);
            } else {
                EXPECT_LT(rank[yi], rank[xi]);
            }
        }
    }
}

TEST(CondenseAndRank, SingleNode) {
    Mdg mdg;
    mdg.nodes.push_back({});
    const auto groups = condense_and_rank(mdg);
    ASSERT_EQ(groups.size(), 1u);
    EXPECT_EQ(groups[0].buckets, (std::vector<std::vector<int>>{{0}}));
}

TEST(CondenseAndRank, DisconnectedNodesFormGroups) {
    Mdg mdg;
    for (int i = 0; i < 3; ++i) mdg.nodes.push_back({i, 0, {}, {}, MdgStatus::Violated, {"f", i, Variant::A}});
    mdg.edges = {{2, 0}};
    const auto groups = condense_and_rank(mdg);
    ASSERT_EQ(groups.size(), 2u);
    EXPECT_EQ(groups[0].buckets, (std::vector<std::vector<int>>{{0}, {2}}));
    EXPECT_EQ(groups[1].buckets, (std::vector<std::vector<int>>{{1}}));
}
