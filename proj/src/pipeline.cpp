#include "mergesight/pipeline.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mergesight/extract.hpp"

namespace mergesight {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    out << text;
}

std::string text_or_empty(const Tree& t, const std::string& path) {
    const auto it = t.find(path);
    return it == t.end() ? std::string{} : it->second;
}

MetadataSet metadata_for(const AnalysisConfig& config, const std::optional<fs::path>& meta,
                         const Tree& tree, const std::string& variant) {
    if (config.extract) return extract_tree(tree, variant);
    if (!meta) throw InputError("metadata for variant " + variant + " is required without --extract");
    try {
        return load_metadata(*meta);
    } catch (const MetadataError& e) {
        throw InputError(e.what());
    }
}

}  // namespace

Tree load_tree(const fs::path& root) {
    std::error_code ec;
    if (!fs::exists(root, ec)) throw InputError("missing path " + root.string());
    Tree out;
    if (fs::is_regular_file(root)) {
        out.emplace(root.filename().generic_string(), read_file(root));
        return out;
    }
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        out.emplace(fs::relative(entry.path(), root).generic_string(), read_file(entry.path()));
    }
    return out;
}

std::map<std::string, int> line_counts(const Tree& tree) {
    std::map<std::string, int> out;
    for (const auto& [path, text] : tree) {
        out[path] = static_cast<int>(split_lines(text).lines.size());
    }
    return out;
}

bool Analysis::has_conflicts() const {
    for (const auto& m : merges) {
        if (m.has_conflicts()) return true;
    }
    return false;
}

int Analysis::exit_code() const {
    return has_conflicts() || !detection.violations.empty() || !items.empty() ? 1 : 0;
}

MetadataSet extract_tree(const Tree& tree, const std::string& variant) {
    std::vector<SourceFile> files;
    for (const auto& [path, text] : tree) {
        if (is_c_like_path(path)) files.push_back({path, text});
    }
    try {
        return extract_source(files, {variant});
    } catch (const ExtractError& e) {
        throw InputError(e.what());  // already carries file:line
    }
}

Analysis analyze_trees(const Tree& base, const Tree& ours, const Tree& theirs,
                       const MetadataSet& meta_a, const MetadataSet& meta_b,
                       MatchPolicy policy) {
    Analysis out;
    std::set<std::string> paths;
    for (const Tree* t : {&base, &ours, &theirs}) {
        for (const auto& [path, text] : *t) paths.insert(path);
    }
    int next_id = 0;
    for (const auto& path : paths) {
        auto merge = three_way_merge(text_or_empty(base, path), text_or_empty(ours, path),
                                     text_or_empty(theirs, path), path, next_id);
        next_id += static_cast<int>(merge.pairs.size());
        out.pairs.insert(out.pairs.end(), merge.pairs.begin(), merge.pairs.end());
        out.merges.push_back(std::move(merge));
    }

    try {
        validate(meta_a);
        validate(meta_b);
    } catch (const MetadataError& e) {
        throw InputError(e.what());
    }
    out.odg_a = build_odg(meta_a);
    out.odg_b = build_odg(meta_b);
    FileIndexes idx_a;
    FileIndexes idx_b;
    try {
        idx_a = build_file_indexes(out.odg_a, line_counts(ours));
        idx_b = build_file_indexes(out.odg_b, line_counts(theirs));
    } catch (const std::out_of_range& e) {
        throw InputError(std::string("metadata does not fit the sources: ") + e.what());
    }
    out.alignment = align(out.odg_a, out.odg_b, out.pairs, idx_a, idx_b, policy);
    out.detection = detect_violations(out.alignment);
    out.mdg = build_mdg(out.alignment, out.detection.violations);
    out.groups = condense_and_rank(out.mdg);
    out.items = build_items(out.groups, out.mdg, out.alignment, out.pairs);
    return out;
}

Analysis run_analyze(const AnalysisConfig& config) {
    const Tree base = load_tree(config.base);
    const Tree ours = load_tree(config.ours);
    const Tree theirs = load_tree(config.theirs);
    const MetadataSet meta_a = metadata_for(config, config.meta_a, ours, "A");
    const MetadataSet meta_b = metadata_for(config, config.meta_b, theirs, "B");

    Analysis result = analyze_trees(base, ours, theirs, meta_a, meta_b, config.policy);

    const fs::path& out = config.out;
    for (const auto& m : result.merges) {
        if (!ours.count(m.file) && !theirs.count(m.file)) continue;
        write_file(out / "merged" / m.file, m.merged_text);
    }
    if (config.format != ReportFormat::Json) {
        write_file(out / "report.txt", render_text(result.items, config.header));
    }
    if (config.format != ReportFormat::Text) {
        write_file(out / "report.json", render_json(result.items).dump(2) + "\n");
    }
    if (config.dump_odg) {
        const nlohmann::ordered_json doc{{"a", to_json(result.odg_a)}, {"b", to_json(result.odg_b)}};
        write_file(out / "odg.json", doc.dump(2) + "\n");
    }
    if (config.dump_sdg) write_file(out / "sdg.json", to_json(result.alignment).dump(2) + "\n");
    if (config.dump_verdicts) {
        write_file(out / "verdicts.jsonl", verdicts_jsonl(result.detection.verdicts));
    }
    return result;
}

}  // namespace mergesight
