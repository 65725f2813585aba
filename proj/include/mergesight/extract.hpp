#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mergesight/metadata.hpp"

namespace mergesight {

class ExtractError : public std::runtime_error {
public:
    ExtractError(std::string file, int line, const std::string& what);

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_;
};

struct SourceFile {
    std::string path;
    std::string text;
};

struct ExtractOptions {
    std::string variant = "A";
};

/// Recognizes definitions in a C-like subset: top-level struct/union/enum/
/// class bodies, typedefs and `using` aliases (Type), variable definitions
/// (Global), function definitions (Function) and member function
/// definitions inside a composite body (Function with parent, named
/// Parent::name). Comments and preprocessor lines are skipped.
///
/// A definition depends on every other definition whose unqualified name
/// appears as an identifier in its own text (text of nested definitions
/// excluded), restricted to Function->{Type,Global,Function},
/// Global->Type and Type->Type.
///
/// Ids follow (file, start_line). A definition whose line range would
/// collide with an earlier one (two definitions on one line) is dropped.
MetadataSet extract_source(const std::vector<SourceFile>& files, const ExtractOptions& opts = {});

/// True for extensions the extractor is meant to read (.c, .h, .cc, .cpp, ...).
bool is_c_like_path(std::string_view path);

}  // namespace mergesight
