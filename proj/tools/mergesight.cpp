#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "mergesight/extract.hpp"
#include "mergesight/pipeline.hpp"

namespace fs = std::filesystem;
using namespace mergesight;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Three-way merge with definition-level dependency checks"};
    app.require_subcommand(1);

    AnalysisConfig cfg;
    std::string meta_a;
    std::string meta_b;
    std::string policy = "strict";
    std::string format = "text";
    bool legacy_header = false;
    auto* analyze = app.add_subcommand("analyze", "Merge three trees and report conflicts and violated blocks");
    analyze->add_option("--base", cfg.base, "Base tree (directory or file)")->required();
    analyze->add_option("--ours", cfg.ours, "Variant A tree")->required();
    analyze->add_option("--theirs", cfg.theirs, "Variant B tree")->required();
    auto* opt_meta_a = analyze->add_option("--meta-a", meta_a, "Definition metadata for variant A");
    auto* opt_meta_b = analyze->add_option("--meta-b", meta_b, "Definition metadata for variant B");
    auto* opt_extract = analyze->add_flag("--extract", cfg.extract, "Extract definitions from C-like sources");
    opt_meta_a->needs(opt_meta_b)->excludes(opt_extract);
    opt_meta_b->needs(opt_meta_a)->excludes(opt_extract);
    analyze->add_option("--match-policy", policy, "strict or name-only")
        ->check(CLI::IsMember({"strict", "name-only"}));
    analyze->add_option("--format", format, "text, json or both")
        ->check(CLI::IsMember({"text", "json", "both"}));
    analyze->add_option("--out", cfg.out, "Output directory");
    analyze->add_flag("--dump-odg", cfg.dump_odg, "Write odg.json");
    analyze->add_flag("--dump-sdg", cfg.dump_sdg, "Write sdg.json");
    analyze->add_flag("--dump-verdicts", cfg.dump_verdicts, "Write verdicts.jsonl");
    analyze->add_flag("--legacy-header", legacy_header, "Use the MergeGuardian report header");

    fs::path extract_in;
    fs::path extract_out;
    std::string extract_variant = "A";
    auto* extract = app.add_subcommand("extract", "Write definition metadata for a source tree");
    extract->add_option("--in", extract_in, "Source tree")->required();
    extract->add_option("--out", extract_out, "Metadata JSON file")->required();
    extract->add_option("--variant", extract_variant, "Variant label stored in the file");

    fs::path merge_base;
    fs::path merge_ours;
    fs::path merge_theirs;
    fs::path merge_out;
    auto* merge = app.add_subcommand("merge", "Plain three-way merge of one file");
    merge->add_option("--base", merge_base, "Base file")->required();
    merge->add_option("--ours", merge_ours, "Variant A file")->required();
    merge->add_option("--theirs", merge_theirs, "Variant B file")->required();
    merge->add_option("-o,--output", merge_out, "Write the result here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*analyze) {
            if (!cfg.extract && (meta_a.empty() || meta_b.empty())) {
                std::cerr << "error: pass --meta-a and --meta-b, or --extract\n";
                return 2;
            }
            if (!meta_a.empty()) cfg.meta_a = meta_a;
            if (!meta_b.empty()) cfg.meta_b = meta_b;
            cfg.policy = policy == "name-only" ? MatchPolicy::NameOnly : MatchPolicy::Strict;
            static const std::map<std::string, ReportFormat> formats{
                {"text", ReportFormat::Text}, {"json", ReportFormat::Json}, {"both", ReportFormat::Both}};
            cfg.format = formats.at(format);
            cfg.header = legacy_header ? HeaderStyle::Legacy : HeaderStyle::Current;
            const Analysis result = run_analyze(cfg);
            std::cout << render_text(result.items, cfg.header);
            return result.exit_code();
        }
        if (*extract) {
            save_metadata(extract_tree(load_tree(extract_in), extract_variant), extract_out);
            return 0;
        }
        const auto outcome = three_way_merge(slurp(merge_base), slurp(merge_ours), slurp(merge_theirs),
                                             merge_base.filename().string());
        if (merge_out.empty()) {
            std::cout << outcome.merged_text;
        } else {
            std::ofstream(merge_out, std::ios::binary) << outcome.merged_text;
        }
        return outcome.has_conflicts() ? 1 : 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const MetadataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
