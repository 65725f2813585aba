#include "mergesight/extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_set>

namespace mergesight {
namespace {

struct Token {
    enum class Kind { Ident, Number, Literal, Punct };
    Kind kind = Kind::Punct;
    std::string text;
    int line = 0;

    bool is(std::string_view s) const { return text == s && kind != Kind::Literal; }
    bool ident() const { return kind == Kind::Ident; }
};

const std::unordered_set<std::string_view>& keywords() {
    static const std::unordered_set<std::string_view> kw = {
        "auto",     "break",    "case",      "char",     "const",    "continue", "default",
        "do",       "double",   "else",      "enum",     "extern",   "float",    "for",
        "goto",     "if",       "inline",    "int",      "long",     "register", "restrict",
        "return",   "short",    "signed",    "sizeof",   "static",   "struct",   "switch",
        "typedef",  "union",    "unsigned",  "void",     "volatile", "while",    "bool",
        "class",    "public",   "private",   "protected", "virtual", "template", "typename",
        "namespace", "using",   "constexpr", "operator", "new",      "delete",   "this",
        "true",     "false",    "nullptr",   "final",    "override", "noexcept", "explicit",
        "friend",   "mutable",  "thread_local", "static_cast", "const_cast", "reinterpret_cast",
        "dynamic_cast", "decltype", "alignas", "alignof", "_Bool", "try", "catch", "throw"};
    return kw;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view src, const std::string& file) {
    std::vector<Token> out;
    const std::size_t n = src.size();
    std::size_t i = 0;
    int line = 1;
    bool line_start = true;
    while (i < n) {
        const char c = src[i];
        const char next = i + 1 < n ? src[i + 1] : '\0';
        if (c == '\n') {
            ++line;
            line_start = true;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '/' && next == '/') {
            while (i < n && src[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && next == '*') {
            const int start = line;
            i += 2;
            while (i + 1 < n && !(src[i] == '*' && src[i + 1] == '/')) {
                if (src[i] == '\n') ++line;
                ++i;
            }
            if (i + 1 >= n) throw ExtractError(file, start, "unterminated comment");
            i += 2;
            continue;
        }
        if (line_start && c == '#') {
            while (i < n && src[i] != '\n') {
                if (src[i] == '\\' && i + 1 < n && src[i + 1] == '\n') {
                    ++line;
                    i += 2;
                    continue;
                }
                ++i;
            }
            continue;
        }
        line_start = false;

        if (c == '"' || c == '\'') {
            const int start = line;
            const std::size_t from = i++;
            while (i < n && src[i] != c) {
                if (src[i] == '\n') {
                    throw ExtractError(file, start, "unterminated string literal");
                }
                i += src[i] == '\\' ? 2 : 1;
            }
            if (i >= n) throw ExtractError(file, start, "unterminated string literal");
            ++i;
            out.push_back({Token::Kind::Literal, std::string(src.substr(from, i - from)), start});
            continue;
        }
        if (is_ident_start(c)) {
            const std::size_t from = i;
            while (i < n && is_ident_char(src[i])) ++i;
            out.push_back({Token::Kind::Ident, std::string(src.substr(from, i - from)), line});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t from = i;
            while (i < n && (is_ident_char(src[i]) || src[i] == '.' || src[i] == '\'')) ++i;
            out.push_back({Token::Kind::Number, std::string(src.substr(from, i - from)), line});
            continue;
        }
        if (c == ':' && next == ':') {
            out.push_back({Token::Kind::Punct, "::", line});
            i += 2;
            continue;
        }
        out.push_back({Token::Kind::Punct, std::string(1, c), line});
        ++i;
    }
    return out;
}

char closer_for(const std::string& s) {
    if (s == "(") return ')';
    if (s == "[") return ']';
    if (s == "{") return '}';
    return '\0';
}

// match[i] is the index of the bracket paired with token i (or npos).
std::vector<std::size_t> match_brackets(const std::vector<Token>& toks, const std::string& file) {
    constexpr auto npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match(toks.size(), npos);
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto& t = toks[i];
        if (t.kind != Token::Kind::Punct) continue;
        if (closer_for(t.text) != '\0') {
            open.push_back(i);
        } else if (t.text == ")" || t.text == "]" || t.text == "}") {
            if (open.empty() || closer_for(toks[open.back()].text) != t.text[0]) {
                throw ExtractError(file, t.line, "unbalanced '" + t.text + "'");
            }
            match[i] = open.back();
            match[open.back()] = i;
            open.pop_back();
        }
    }
    if (!open.empty()) {
        const auto& t = toks[open.back()];
        throw ExtractError(file, t.line, "unbalanced '" + t.text + "'");
    }
    return match;
}

struct RawDef {
    std::string name;
    std::string short_name;
    DefKind kind = DefKind::Function;
    std::string file;
    LineRange range;
    std::size_t tok_begin = 0;
    std::size_t tok_end = 0;  // inclusive
    std::optional<std::size_t> parent;  // index into the per-file list
};

struct CompositeHead {
    std::string tag;
    bool is_typedef = false;
    bool is_enum = false;
};

class Parser {
public:
    Parser(const std::vector<Token>& toks, std::string file)
        : t_(toks), file_(std::move(file)), match_(match_brackets(toks, file_)) {}

    std::vector<RawDef> run() {
        parse_scope(0, t_.size(), std::nullopt);
        return std::move(defs_);
    }

private:
    const std::vector<Token>& t_;
    std::string file_;
    std::vector<std::size_t> match_;
    std::vector<RawDef> defs_;

    void add(std::string name, std::string short_name, DefKind kind, std::size_t begin,
             std::size_t end, std::optional<std::size_t> parent) {
        defs_.push_back({std::move(name), std::move(short_name), kind, file_,
                         LineRange::closed(t_[begin].line, t_[end].line), begin, end, parent});
    }

    std::size_t skip_specifiers(std::size_t k, std::size_t end, bool* saw_typedef) const {
        static const std::unordered_set<std::string_view> specs = {
            "typedef", "static", "const", "volatile", "inline", "constexpr", "thread_local"};
        while (k < end && t_[k].ident() && specs.count(t_[k].text)) {
            if (saw_typedef && t_[k].text == "typedef") *saw_typedef = true;
            ++k;
        }
        return k;
    }

    std::optional<CompositeHead> composite_head(std::size_t begin, std::size_t brace) const {
        for (std::size_t k = begin; k < brace; ++k) {
            if (t_[k].is("(")) return std::nullopt;
        }
        CompositeHead head;
        std::size_t k = skip_specifiers(begin, brace, &head.is_typedef);
        if (k < brace && t_[k].is("template")) {
            int depth = 0;
            for (++k; k < brace; ++k) {
                if (t_[k].is("<")) ++depth;
                if (t_[k].is(">") && --depth == 0) {
                    ++k;
                    break;
                }
            }
        }
        if (k >= brace || !t_[k].ident()) return std::nullopt;
        const auto& kw = t_[k].text;
        if (kw != "struct" && kw != "class" && kw != "union" && kw != "enum") return std::nullopt;
        head.is_enum = kw == "enum";
        ++k;
        if (k < brace && (t_[k].is("class") || t_[k].is("struct"))) ++k;
        if (k < brace && t_[k].ident() && !keywords().count(t_[k].text)) head.tag = t_[k].text;
        return head;
    }

    // Name of the entity a plain declaration introduces, or "" when it only
    // declares something defined elsewhere.
    std::string declarator_name(std::size_t begin, std::size_t semi, bool is_typedef) const {
        std::optional<std::size_t> paren;
        std::optional<std::size_t> stop;
        for (std::size_t k = begin; k < semi; ++k) {
            if (t_[k].is("(") && !paren && !stop) paren = k;
            if (!stop && (t_[k].is("=") || t_[k].is("[") || t_[k].is(",") || t_[k].is(":"))) {
                stop = k;
            }
            if (t_[k].is("(") || t_[k].is("[")) k = match_[k];
        }
        if (paren) {
            std::size_t k = *paren + 1;
            if (k < semi && (t_[k].is("*") || t_[k].is("&"))) {
                while (k < semi && (t_[k].is("*") || t_[k].is("&") || t_[k].is("const"))) ++k;
                return k < semi && t_[k].ident() ? t_[k].text : std::string();
            }
            if (!is_typedef) return {};  // function prototype
            return *paren > begin && t_[*paren - 1].ident() ? t_[*paren - 1].text : std::string();
        }
        const std::size_t last = stop.value_or(semi);
        if (last < begin + 2) return {};
        for (std::size_t k = last; k-- > begin;) {
            if (t_[k].ident()) return keywords().count(t_[k].text) ? std::string() : t_[k].text;
            if (!t_[k].is("*") && !t_[k].is("&")) return {};
        }
        return {};
    }

    void handle_simple(std::size_t begin, std::size_t semi, std::optional<std::size_t> parent) {
        if (parent) return;  // data members, prototypes, defaulted members
        bool is_typedef = false;
        const std::size_t k = skip_specifiers(begin, semi, &is_typedef);
        if (k >= semi) return;
        if (t_[begin].is("extern") || t_[k].is("extern") || t_[k].is("template")) return;
        if (t_[k].is("using")) {
            if (k + 2 < semi && t_[k + 1].ident() && t_[k + 2].is("=")) {
                add(t_[k + 1].text, t_[k + 1].text, DefKind::Type, begin, semi, std::nullopt);
            }
            return;
        }
        const bool tagged = t_[k].is("struct") || t_[k].is("union") || t_[k].is("enum") ||
                            t_[k].is("class");
        if (tagged && k + 2 == semi) return;  // forward declaration
        const std::string name = declarator_name(k, semi, is_typedef);
        if (name.empty()) return;
        add(name, name, is_typedef ? DefKind::Type : DefKind::Global, begin, semi, std::nullopt);
    }

    void emit_composite(std::size_t begin, std::size_t lbrace, std::size_t rbrace,
                        std::size_t end, const CompositeHead& head,
                        std::optional<std::size_t> parent) {
        if (parent) return;  // nested types are not tracked
        std::string name = head.tag;
        if (head.is_typedef) {
            for (std::size_t k = end; k-- > rbrace + 1;) {
                if (t_[k].ident() && !keywords().count(t_[k].text)) {
                    name = t_[k].text;
                    break;
                }
            }
        }
        if (name.empty()) {
            throw ExtractError(file_, t_[begin].line, "anonymous top-level composite type");
        }
        add(name, name, DefKind::Type, begin, end, std::nullopt);
        if (!head.is_enum) parse_scope(lbrace + 1, rbrace, defs_.size() - 1);
    }

    void emit_function(std::size_t begin, std::size_t paren, std::size_t rbrace,
                       std::optional<std::size_t> parent) {
        std::string name;
        std::size_t first = paren;  // first token of the (possibly qualified) name
        if (paren > begin && t_[paren - 1].ident() && !t_[paren - 1].is("operator")) {
            first = paren - 1;
            name = t_[first].text;
            if (first > begin && t_[first - 1].is("~")) {
                name = "~" + name;
                --first;
            }
        } else {
            for (std::size_t k = paren; k-- > begin;) {
                if (t_[k].is("operator")) {
                    first = k;
                    for (std::size_t q = k; q < paren; ++q) name += t_[q].text;
                    break;
                }
            }
        }
        if (name.empty()) return;
        const std::string short_name = name;
        while (first >= begin + 2 && t_[first - 1].is("::") && t_[first - 2].ident()) {
            name = t_[first - 2].text + "::" + name;
            first -= 2;
        }
        if (parent) name = defs_[*parent].name + "::" + name;
        add(name, short_name, DefKind::Function, begin, rbrace, parent);
    }

    void parse_scope(std::size_t begin, std::size_t end, std::optional<std::size_t> parent) {
        std::size_t i = begin;
        while (i < end) {
            if (t_[i].is(";")) {
                ++i;
                continue;
            }
            if (parent && i + 1 < end && t_[i + 1].is(":") &&
                (t_[i].is("public") || t_[i].is("private") || t_[i].is("protected"))) {
                i += 2;
                continue;
            }
            const std::size_t decl = i;
            std::optional<std::size_t> first_paren;
            bool has_eq = false;
            bool init_list = false;
            std::size_t j = i;
            bool finished = false;
            while (j < end && !finished) {
                const Token& tok = t_[j];
                if (tok.is("(") || tok.is("[")) {
                    if (tok.is("(") && !first_paren && !has_eq) first_paren = j;
                    j = match_[j] + 1;
                    continue;
                }
                if (tok.is(";")) {
                    handle_simple(decl, j, parent);
                    i = j + 1;
                    finished = true;
                    break;
                }
                if (tok.is("=")) has_eq = true;
                if (tok.is(":") && first_paren && !has_eq) init_list = true;
                if (tok.is("{")) {
                    const std::size_t close = match_[j];
                    if (has_eq) {
                        j = close + 1;
                        continue;
                    }
                    if (init_list && j >= decl + 2 && t_[j - 1].ident() &&
                        (t_[j - 2].is(",") || t_[j - 2].is(":"))) {
                        j = close + 1;  // brace member initializer
                        continue;
                    }
                    if (auto head = composite_head(decl, j)) {
                        std::size_t m = close + 1;
                        while (m < end && !t_[m].is(";")) {
                            m = (t_[m].is("(") || t_[m].is("[") || t_[m].is("{")) ? match_[m] + 1
                                                                                   : m + 1;
                        }
                        const std::size_t last = m < end ? m : close;
                        emit_composite(decl, j, close, last, *head, parent);
                        i = last + 1;
                        finished = true;
                        break;
                    }
                    if (first_paren) {
                        emit_function(decl, *first_paren, close, parent);
                        i = close + 1;
                        finished = true;
                        break;
                    }
                    if (t_[decl].is("namespace") || t_[decl].is("extern")) {
                        parse_scope(j + 1, close, parent);
                        i = close + 1;
                        finished = true;
                        break;
                    }
                    j = close + 1;
                    continue;
                }
                ++j;
            }
            if (!finished) i = end;
        }
    }
};

}  // namespace

ExtractError::ExtractError(std::string file, int line, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
      file_(std::move(file)),
      line_(line) {}

bool is_c_like_path(std::string_view path) {
    static const std::array<std::string_view, 9> exts = {".c",   ".h",   ".cc",  ".cpp", ".cxx",
                                                         ".hpp", ".hh",  ".hxx", ".inl"};
    return std::any_of(exts.begin(), exts.end(), [&](std::string_view e) {
        return path.size() > e.size() && path.substr(path.size() - e.size()) == e;
    });
}

MetadataSet extract_source(const std::vector<SourceFile>& files, const ExtractOptions& opts) {
    std::vector<const SourceFile*> ordered;
    for (const auto& f : files) ordered.push_back(&f);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* x, const auto* y) { return x->path < y->path; });

    struct FileDefs {
        std::vector<Token> tokens;
        std::vector<RawDef> defs;
    };
    std::vector<FileDefs> per_file;
    per_file.reserve(ordered.size());
    for (const auto* f : ordered) {
        FileDefs fd;
        fd.tokens = tokenize(f->text, f->path);
        fd.defs = Parser(fd.tokens, f->path).run();
        per_file.push_back(std::move(fd));
    }

    // Global order: file, start line, outermost first.
    struct Slot {
        std::size_t file_index;
        std::size_t def_index;
    };
    std::vector<Slot> slots;
    for (std::size_t fi = 0; fi < per_file.size(); ++fi) {
        for (std::size_t di = 0; di < per_file[fi].defs.size(); ++di) slots.push_back({fi, di});
    }
    auto def_of = [&](const Slot& s) -> const RawDef& {
        return per_file[s.file_index].defs[s.def_index];
    };
    std::stable_sort(slots.begin(), slots.end(), [&](const Slot& x, const Slot& y) {
        const auto& a = def_of(x);
        const auto& b = def_of(y);
        return std::make_tuple(x.file_index, a.range.start_line, -a.range.end_line) <
               std::make_tuple(y.file_index, b.range.start_line, -b.range.end_line);
    });

    // Keep a laminar family per file; drop definitions sharing lines
    // non-strictly with an already kept one, and members of dropped types.
    MetadataSet meta;
    meta.variant = opts.variant;
    std::map<std::pair<std::size_t, std::size_t>, int> kept_id;
    std::vector<Slot> kept;
    std::vector<const RawDef*> open;
    std::size_t open_file = static_cast<std::size_t>(-1);
    for (const auto& s : slots) {
        const RawDef& d = def_of(s);
        if (s.file_index != open_file) {
            open.clear();
            open_file = s.file_index;
        }
        while (!open.empty() && open.back()->range.end_line < d.range.start_line) open.pop_back();
        if (!open.empty() &&
            !(open.back()->range.contains(d.range) && open.back()->range != d.range)) {
            continue;
        }
        std::optional<int> parent;
        if (d.parent) {
            auto it = kept_id.find({s.file_index, *d.parent});
            if (it == kept_id.end()) continue;
            parent = it->second;
        }
        const int id = static_cast<int>(meta.definitions.size());
        kept_id[{s.file_index, s.def_index}] = id;
        kept.push_back(s);
        open.push_back(&d);
        meta.definitions.push_back({id, d.name, d.kind, d.file, d.range, parent});
    }

    std::map<std::string, std::vector<int>> by_short_name;
    for (std::size_t id = 0; id < kept.size(); ++id) {
        by_short_name[def_of(kept[id]).short_name].push_back(static_cast<int>(id));
    }

    const auto allowed = [](DefKind from, DefKind to) {
        switch (from) {
            case DefKind::Function: return true;
            case DefKind::Global: return to == DefKind::Type;
            case DefKind::Type: return to == DefKind::Type;
        }
        return false;
    };

    std::set<RawDependency> deps;
    for (std::size_t fi = 0; fi < per_file.size(); ++fi) {
        const auto& toks = per_file[fi].tokens;
        // Innermost kept definition owning each token.
        std::vector<int> owner(toks.size(), -1);
        for (std::size_t id = 0; id < kept.size(); ++id) {
            if (kept[id].file_index != fi) continue;
            const RawDef& d = def_of(kept[id]);
            for (std::size_t k = d.tok_begin; k <= d.tok_end; ++k) owner[k] = static_cast<int>(id);
        }
        for (std::size_t k = 0; k < toks.size(); ++k) {
            if (owner[k] < 0 || !toks[k].ident()) continue;
            const auto it = by_short_name.find(toks[k].text);
            if (it == by_short_name.end()) continue;
            const int from = owner[k];
            for (int to : it->second) {
                if (to == from) continue;
                if (!allowed(meta.definitions[static_cast<std::size_t>(from)].kind,
                             meta.definitions[static_cast<std::size_t>(to)].kind)) {
                    continue;
                }
                deps.insert({from, to});
            }
        }
    }
    meta.dependencies.assign(deps.begin(), deps.end());
    validate(meta);
    return meta;
}

}  // namespace mergesight
