#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mergesight/line_range.hpp"

namespace mergesight {

enum class DefKind { Type, Global, Function };

const char* to_string(DefKind k);
std::optional<DefKind> parse_def_kind(std::string_view text);

/// A named definition located in source: the bridge between dependency
/// analysis and textual merge results.
struct DefinitionIndicator {
    int def_id = 0;
    std::string name;  // members are qualified as Parent::name
    DefKind kind = DefKind::Function;
    std::string file;
    LineRange range;
    std::optional<int> parent;

    friend bool operator==(const DefinitionIndicator&, const DefinitionIndicator&) = default;
};

struct RawDependency {
    int from = 0;
    int to = 0;

    friend bool operator==(const RawDependency&, const RawDependency&) = default;
    friend auto operator<=>(const RawDependency&, const RawDependency&) = default;
};

struct MetadataSet {
    std::string variant;
    std::vector<DefinitionIndicator> definitions;  // definitions[i].def_id == i
    std::vector<RawDependency> dependencies;

    friend bool operator==(const MetadataSet&, const MetadataSet&) = default;
};

class MetadataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks every MetadataSet invariant and throws MetadataError naming the
/// first violation. Definitions must already be sorted by id.
void validate(const MetadataSet& meta);

/// Parses and validates a metadata document. Definitions are reordered by
/// id; the dependency list keeps document order.
MetadataSet parse_metadata(std::string_view json_text);
MetadataSet load_metadata(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const MetadataSet& meta);
void save_metadata(const MetadataSet& meta, const std::filesystem::path& path);

}  // namespace mergesight
