#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "mergesight/pipeline.hpp"
#include "random_cases.hpp"

using namespace mergesight;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = MERGESIGHT_FIXTURES;

Analysis analyze_fixture(const std::string& name) {
    const auto dir = kFixtures / name;
    const Tree a = load_tree(dir / "ours");
    const Tree b = load_tree(dir / "theirs");
    return analyze_trees(load_tree(dir / "base"), a, b, extract_tree(a, "A"), extract_tree(b, "B"));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("mergesight_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Pipeline, IdenticalTreesAreClean) {
    const Tree t{{"a.c", "int x = 1;\nint f() { return x; }\n"}};
    const auto r = analyze_trees(t, t, t, extract_tree(t, "A"), extract_tree(t, "B"));
    EXPECT_EQ(r.exit_code(), 0);
    EXPECT_TRUE(r.items.empty());
    EXPECT_EQ(render_text(r.items), "@@ WizardMerge Result\n");
}

TEST(Pipeline, DeletedDefinition) {
    const auto r = analyze_fixture("deleted_definition");
    EXPECT_EQ(r.exit_code(), 1);
    EXPECT_FALSE(r.has_conflicts());
    int a_items = 0;
    int b_items = 0;
    for (const auto& it : r.items) {
        EXPECT_NE(it.kind, ItemKind::C);
        a_items += it.kind == ItemKind::A;
        b_items += it.kind == ItemKind::B;
    }
    EXPECT_EQ(a_items, 1);
    EXPECT_EQ(b_items, 2);
}

TEST(Pipeline, CaseStudyRanking) {
    const auto r = analyze_fixture("scrollbar_case");
    ASSERT_EQ(r.items.size(), 4u);
    EXPECT_EQ(r.items[0].kind, ItemKind::C);
    EXPECT_EQ(r.items[0].name, "ScrollbarData::ScrollbarData");
    EXPECT_EQ(r.items[1].kind, ItemKind::C);
    EXPECT_EQ(r.items[1].name, "ScrollbarData::CreateForThumb");
    EXPECT_EQ(r.items[2].kind, ItemKind::A);
    EXPECT_EQ(r.items[3].kind, ItemKind::B);
    EXPECT_TRUE(r.items[3].applied);
    for (const auto& it : r.items) EXPECT_EQ(it.group_id, 0);
    EXPECT_LT(r.items[0].rank, r.items[1].rank);
    EXPECT_LT(r.items[1].rank, r.items[2].rank);
}

TEST(Pipeline, PairIdsAreGlobal) {
    const Tree base{{"a.c", "int a = 1;\n"}, {"b.c", "int b = 1;\n"}};
    const Tree ours{{"a.c", "int a = 2;\n"}, {"b.c", "int b = 2;\n"}};
    const auto r = analyze_trees(base, ours, base, extract_tree(ours, "A"), extract_tree(base, "B"));
    ASSERT_EQ(r.pairs.size(), 2u);
    EXPECT_EQ(r.pairs[0].id, 0);
    EXPECT_EQ(r.pairs[1].id, 1);
    EXPECT_EQ(r.pairs[1].a.file, "b.c");
}

TEST(Pipeline, MetadataOutsideSources) {
    const Tree t{{"a.c", "int x = 1;\n"}};
    MetadataSet m;
    m.definitions = {{0, "x", DefKind::Global, "missing.c", LineRange::closed(1, 1), std::nullopt}};
    EXPECT_THROW(analyze_trees(t, t, t, m, m), InputError);
    m.definitions[0].file = "a.c";
    m.definitions[0].range = LineRange::closed(1, 9);
    EXPECT_THROW(analyze_trees(t, t, t, m, m), InputError);
}

TEST(Pipeline, InvalidMetadataIsInputError) {
    const Tree t{{"a.c", "int x = 1;\n"}};
    MetadataSet m;
    m.definitions = {{0, "x", DefKind::Global, "a.c", LineRange::closed(1, 1), std::nullopt}};
    m.dependencies = {{0, 3}};
    EXPECT_THROW(analyze_trees(t, t, t, m, m), InputError);
}

TEST(Pipeline, MissingPath) {
    EXPECT_THROW(load_tree("/nonexistent/tree"), InputError);
}

TEST(Pipeline, ExtractorErrorNamesFileAndLine) {
    const Tree t{{"bad.c", "int f() {\n"}};
    try {
        extract_tree(t, "A");
        FAIL();
    } catch (const InputError& e) {
        EXPECT_EQ(std::string(e.what()).rfind("bad.c:1:", 0), 0u) << e.what();
    }
}

TEST(Pipeline, SingleFileInputs) {
    const auto dir = kFixtures / "deleted_definition";
    const Tree t = load_tree(dir / "base" / "prog.c");
    ASSERT_EQ(t.size(), 1u);
    EXPECT_EQ(t.begin()->first, "prog.c");
}

TEST(Pipeline, RunWritesArtifacts) {
    const auto out = scratch("artifacts");
    AnalysisConfig cfg;
    cfg.base = kFixtures / "scrollbar_case" / "base";
    cfg.ours = kFixtures / "scrollbar_case" / "ours";
    cfg.theirs = kFixtures / "scrollbar_case" / "theirs";
    cfg.extract = true;
    cfg.format = ReportFormat::Both;
    cfg.out = out;
    cfg.dump_odg = cfg.dump_sdg = cfg.dump_verdicts = true;
    const auto r = run_analyze(cfg);
    EXPECT_EQ(r.exit_code(), 1);
    for (const char* f : {"report.txt", "report.json", "odg.json", "sdg.json", "verdicts.jsonl",
                          "merged/ScrollbarData.h"}) {
        EXPECT_TRUE(fs::exists(out / f)) << f;
    }
    EXPECT_NE(slurp(out / "merged/ScrollbarData.h").find("<<<<<<< A"), std::string::npos);
    const auto json = nlohmann::json::parse(slurp(out / "report.json"));
    EXPECT_EQ(json["groups"][0]["buckets"].size(), 3u);
    fs::remove_all(out);
}

TEST(Pipeline, MetadataFilesRequiredWithoutExtract) {
    AnalysisConfig cfg;
    cfg.base = cfg.ours = cfg.theirs = kFixtures / "three_rules" / "base";
    cfg.out = scratch("nometa");
    EXPECT_THROW(run_analyze(cfg), InputError);
}

TEST(Pipeline, BasicFactsOnRandomSources) {
    std::mt19937 rng(101);
    for (int iter = 0; iter < 200; ++iter) {
        const auto t = testgen::random_source_triple(rng);
        const Tree base{{"m.c", t.base}};
        const Tree a{{"m.c", t.a}};
        const Tree b{{"m.c", t.b}};
        const auto r = analyze_trees(base, a, b, extract_tree(a, "A"), extract_tree(b, "B"));
        for (const auto& l : r.alignment.links.links()) {
            if (!l.node_a || !l.node_b) continue;
            const auto sa = r.alignment.a.nodes[static_cast<std::size_t>(*l.node_a)].apply_state;
            const auto sb = r.alignment.b.nodes[static_cast<std::size_t>(*l.node_b)].apply_state;
            EXPECT_EQ(sa == ApplyState::Applied, sb == ApplyState::NotApplied);
            EXPECT_EQ(sa == ApplyState::Conflict, sb == ApplyState::Conflict);
        }
    }
}
