#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mergesight/report.hpp"

namespace mergesight {

/// Relative path (with '/' separators) to file contents.
using Tree = std::map<std::string, std::string>;

/// Missing paths, unreadable files, bad metadata and extractor failures.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads a directory recursively, or a single file keyed by its file name.
Tree load_tree(const std::filesystem::path& root);

std::map<std::string, int> line_counts(const Tree& tree);

enum class ReportFormat { Text, Json, Both };

struct AnalysisConfig {
    std::filesystem::path base;
    std::filesystem::path ours;
    std::filesystem::path theirs;
    std::optional<std::filesystem::path> meta_a;
    std::optional<std::filesystem::path> meta_b;
    bool extract = false;
    MatchPolicy policy = MatchPolicy::Strict;
    ReportFormat format = ReportFormat::Text;
    std::filesystem::path out = "mergesight-out";
    bool dump_odg = false;
    bool dump_sdg = false;
    bool dump_verdicts = false;
    HeaderStyle header = HeaderStyle::Current;
};

struct Analysis {
    std::vector<MergeOutcome> merges;  // one per file, in path order
    std::vector<DcbPair> pairs;        // all files, ids dense from 0
    Odg odg_a;
    Odg odg_b;
    Alignment alignment;
    Detection detection;
    Mdg mdg;
    std::vector<PriorityGroup> groups;
    std::vector<SuggestionItem> items;

    bool has_conflicts() const;
    /// 0 when the merge is clean and nothing is violated, 1 otherwise.
    int exit_code() const;
};

/// Runs merge, alignment, detection and ranking on in-memory trees. A file
/// absent from a tree counts as empty. Throws InputError when metadata
/// points outside the trees.
Analysis analyze_trees(const Tree& base, const Tree& ours, const Tree& theirs,
                       const MetadataSet& meta_a, const MetadataSet& meta_b,
                       MatchPolicy policy = MatchPolicy::Strict);

/// Extractor input for one tree: every C-like file.
MetadataSet extract_tree(const Tree& tree, const std::string& variant);

/// Loads inputs, analyzes, and writes merged/, report.txt / report.json and
/// the requested dumps under config.out. Throws InputError on bad input.
Analysis run_analyze(const AnalysisConfig& config);

}  // namespace mergesight
