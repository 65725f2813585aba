#include "mergesight/metadata.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace mergesight {
namespace {

[[noreturn]] void fail(const std::string& what) { throw MetadataError(what); }

std::string describe(const DefinitionIndicator& d) {
    return "'" + d.name + "' (" + d.file + ":" + to_string(d.range) + ")";
}

bool strictly_contains(const LineRange& outer, const LineRange& inner) {
    return outer.contains(inner) && outer != inner;
}

template <typename T>
T required(const nlohmann::json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) fail(where + ": missing field '" + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        fail(where + ": field '" + key + "' has the wrong type");
    }
}

}  // namespace

const char* to_string(DefKind k) {
    switch (k) {
        case DefKind::Type: return "type";
        case DefKind::Global: return "global";
        case DefKind::Function: return "function";
    }
    return "?";
}

std::optional<DefKind> parse_def_kind(std::string_view text) {
    if (text == "type") return DefKind::Type;
    if (text == "global") return DefKind::Global;
    if (text == "function") return DefKind::Function;
    return std::nullopt;
}

void validate(const MetadataSet& meta) {
    const auto& defs = meta.definitions;
    const auto n = static_cast<int>(defs.size());

    for (int i = 0; i < n; ++i) {
        const auto& d = defs[static_cast<std::size_t>(i)];
        if (d.def_id != i) fail("def_ids are not dense: expected id " + std::to_string(i));
        if (d.range.empty() || d.range.start_line < 1) {
            fail("invalid line range for definition " + describe(d));
        }
        if (d.name.empty()) fail("definition " + std::to_string(i) + " has an empty name");
    }

    std::set<std::tuple<std::string, std::string, DefKind, LineRange>> seen;
    for (const auto& d : defs) {
        if (!seen.emplace(d.file, d.name, d.kind, d.range).second) {
            fail("duplicate definition " + describe(d));
        }
        if (d.parent) {
            if (*d.parent < 0 || *d.parent >= n) {
                fail("unresolved def_id " + std::to_string(*d.parent) + " (parent of " +
                     describe(d) + ")");
            }
            const auto& p = defs[static_cast<std::size_t>(*d.parent)];
            if (p.kind != DefKind::Type) fail("parent of " + describe(d) + " is not a type");
            if (p.file != d.file || !strictly_contains(p.range, d.range)) {
                fail("parent " + describe(p) + " does not strictly contain " + describe(d));
            }
        }
    }

    // Per file, ranges must form a laminar family: disjoint or strictly nested.
    std::map<std::string, std::vector<const DefinitionIndicator*>> by_file;
    for (const auto& d : defs) by_file[d.file].push_back(&d);
    for (auto& [file, list] : by_file) {
        std::sort(list.begin(), list.end(), [](const auto* x, const auto* y) {
            return std::make_tuple(x->range.start_line, -x->range.end_line, x->def_id) <
                   std::make_tuple(y->range.start_line, -y->range.end_line, y->def_id);
        });
        std::vector<const DefinitionIndicator*> open;
        for (const auto* d : list) {
            while (!open.empty() && open.back()->range.end_line < d->range.start_line) {
                open.pop_back();
            }
            if (!open.empty() && !strictly_contains(open.back()->range, d->range)) {
                fail("overlapping non-nested ranges: " + describe(*open.back()) + " and " +
                     describe(*d));
            }
            open.push_back(d);
        }
    }

    for (const auto& dep : meta.dependencies) {
        for (int id : {dep.from, dep.to}) {
            if (id < 0 || id >= n) fail("unresolved def_id " + std::to_string(id));
        }
        if (dep.from == dep.to) fail("self dependency on def_id " + std::to_string(dep.from));
    }
}

MetadataSet parse_metadata(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) fail("parse error: metadata document must be an object");

    MetadataSet meta;
    meta.variant = required<std::string>(doc, "variant", "metadata");
    const auto defs = required<nlohmann::json>(doc, "definitions", "metadata");
    const auto deps = required<nlohmann::json>(doc, "dependencies", "metadata");
    if (!defs.is_array() || !deps.is_array()) fail("definitions/dependencies must be arrays");

    for (std::size_t i = 0; i < defs.size(); ++i) {
        const auto& j = defs[i];
        const std::string where = "definitions[" + std::to_string(i) + "]";
        DefinitionIndicator d;
        d.def_id = required<int>(j, "id", where);
        d.name = required<std::string>(j, "name", where);
        const auto kind_text = required<std::string>(j, "kind", where);
        const auto kind = parse_def_kind(kind_text);
        if (!kind) fail(where + ": unknown kind '" + kind_text + "'");
        d.kind = *kind;
        d.file = required<std::string>(j, "file", where);
        d.range = LineRange::closed(required<int>(j, "start_line", where),
                                    required<int>(j, "end_line", where));
        if (j.contains("parent") && !j.at("parent").is_null()) {
            d.parent = required<int>(j, "parent", where);
        }
        meta.definitions.push_back(std::move(d));
    }
    std::sort(meta.definitions.begin(), meta.definitions.end(),
              [](const auto& x, const auto& y) { return x.def_id < y.def_id; });
    for (std::size_t i = 1; i < meta.definitions.size(); ++i) {
        if (meta.definitions[i].def_id == meta.definitions[i - 1].def_id) {
            fail("duplicate def_id " + std::to_string(meta.definitions[i].def_id));
        }
    }

    for (std::size_t i = 0; i < deps.size(); ++i) {
        const std::string where = "dependencies[" + std::to_string(i) + "]";
        meta.dependencies.push_back(
            {required<int>(deps[i], "from", where), required<int>(deps[i], "to", where)});
    }

    validate(meta);
    return meta;
}

MetadataSet load_metadata(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open metadata file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_metadata(buf.str());
    } catch (const MetadataError& e) {
        fail(path.string() + ": " + e.what());
    }
}

nlohmann::ordered_json to_json(const MetadataSet& meta) {
    nlohmann::ordered_json doc;
    doc["variant"] = meta.variant;
    auto defs = nlohmann::ordered_json::array();
    for (const auto& d : meta.definitions) {
        nlohmann::ordered_json j;
        j["id"] = d.def_id;
        j["name"] = d.name;
        j["kind"] = to_string(d.kind);
        j["file"] = d.file;
        j["start_line"] = d.range.start_line;
        j["end_line"] = d.range.end_line;
        j["parent"] = d.parent ? nlohmann::ordered_json(*d.parent) : nlohmann::ordered_json();
        defs.push_back(std::move(j));
    }
    doc["definitions"] = std::move(defs);
    auto deps = nlohmann::ordered_json::array();
    for (const auto& dep : meta.dependencies) {
        deps.push_back({{"from", dep.from}, {"to", dep.to}});
    }
    doc["dependencies"] = std::move(deps);
    return doc;
}

void save_metadata(const MetadataSet& meta, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write metadata file " + path.string());
    out << to_json(meta).dump(2) << '\n';
}

}  // namespace mergesight
