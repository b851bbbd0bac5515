#include "voo/class_dsl.hpp"

#include <charconv>

#include "voo/class_compiler.hpp"
#include "voo/registry.hpp"

namespace voo {

std::string_view field_type_tag(FieldType t) {
    switch (t) {
    case FieldType::Double: return "double_t";
    case FieldType::Int: return "int_t";
    case FieldType::String: return "string_t";
    case FieldType::Bool: return "bool_t";
    case FieldType::List: return "list_t";
    case FieldType::Dict: return "dict_t";
    case FieldType::Obj: return "obj_t";
    }
    return "?";
}

std::optional<FieldType> field_type_from_tag(std::string_view tag) {
    if (tag == "double_t") return FieldType::Double;
    if (tag == "int_t") return FieldType::Int;
    if (tag == "string_t") return FieldType::String;
    if (tag == "bool_t") return FieldType::Bool;
    if (tag == "list_t") return FieldType::List;
    if (tag == "dict_t") return FieldType::Dict;
    if (tag == "obj_t") return FieldType::Obj;
    return std::nullopt;
}

namespace {

struct Token {
    enum class Type { Word, Block };
    Type type;
    std::string text; // block content without the outer braces
    std::size_t line;
    bool quoted = false;    // came from "..."
    bool bracketed = false; // came from [...]
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg, line);
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Words, quoted words, bracketed words and brace blocks. A `#` that opens
// a line starts a comment through end of line.
std::vector<Token> tokenize(std::string_view s, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t line = first_line;
    bool line_has_token = false;
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        char c = s[i];
        if (c == '\n') {
            ++line;
            line_has_token = false;
            ++i;
            continue;
        }
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (c == '#' && !line_has_token) {
            while (i < n && s[i] != '\n') ++i;
            continue;
        }
        line_has_token = true;
        if (c == '{') {
            std::size_t open_line = line;
            int depth = 0;
            std::size_t j = i;
            for (; j < n; ++j) {
                if (s[j] == '\n') ++line;
                else if (s[j] == '{') ++depth;
                else if (s[j] == '}' && --depth == 0) break;
            }
            if (depth != 0) fail(open_line, "unbalanced brace block");
            out.push_back({Token::Type::Block, std::string(s.substr(i + 1, j - i - 1)), open_line});
            i = j + 1;
        } else if (c == '}') {
            fail(line, "unexpected '}'");
        } else if (c == '"') {
            std::size_t open_line = line;
            std::size_t j = i + 1;
            while (j < n && s[j] != '"') {
                if (s[j] == '\n') ++line;
                ++j;
            }
            if (j >= n) fail(open_line, "unterminated quoted word");
            Token t{Token::Type::Word, std::string(s.substr(i + 1, j - i - 1)), open_line};
            t.quoted = true;
            out.push_back(std::move(t));
            i = j + 1;
        } else if (c == '[') {
            std::size_t open_line = line;
            int depth = 0;
            std::size_t j = i;
            for (; j < n; ++j) {
                if (s[j] == '\n') ++line;
                else if (s[j] == '[') ++depth;
                else if (s[j] == ']' && --depth == 0) break;
            }
            if (depth != 0) fail(open_line, "unbalanced bracket");
            Token t{Token::Type::Word, std::string(s.substr(i, j - i + 1)), open_line};
            t.bracketed = true;
            out.push_back(std::move(t));
            i = j + 1;
        } else {
            std::size_t start = i;
            while (i < n && !is_space(s[i])) ++i;
            out.push_back({Token::Type::Word, std::string(s.substr(start, i - start)), line});
        }
    }
    return out;
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) ++i;
        std::size_t start = i;
        while (i < s.size() && !is_space(s[i])) ++i;
        if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

bool is_keyword(std::string_view w) {
    return w == "method" || w == "public" || w == "private" || w == "constructor" ||
           w == "importMethods";
}

class DeclParser {
public:
    DeclParser(Heap& heap, std::vector<Token> toks) : heap_(heap), toks_(std::move(toks)) {}

    std::vector<ClassDecl> parse_file() {
        std::vector<ClassDecl> decls;
        while (pos_ < toks_.size()) decls.push_back(parse_one());
        return decls;
    }

private:
    Heap& heap_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& expect(Token::Type ty, const char* what) {
        if (pos_ >= toks_.size())
            fail(toks_.empty() ? 1 : toks_.back().line, std::string("expected ") + what);
        const Token& t = toks_[pos_];
        if (t.type != ty) fail(t.line, std::string("expected ") + what + ", got '" + t.text + "'");
        ++pos_;
        return t;
    }

    ClassDecl parse_one() {
        const Token& kw = expect(Token::Type::Word, "'voo::class'");
        if (kw.text != "voo::class")
            fail(kw.line, "expected 'voo::class', got '" + kw.text + "'");
        ClassDecl d;
        d.name = expect(Token::Type::Word, "class name").text;
        while (pos_ < toks_.size() && toks_[pos_].type == Token::Type::Word &&
               !toks_[pos_].text.empty() && toks_[pos_].text[0] == '-') {
            const Token& opt = toks_[pos_++];
            if (opt.text == "-virtual") {
                d.is_virtual = true;
            } else if (opt.text == "-extends") {
                d.parent = expect(Token::Type::Word, "parent class name").text;
            } else {
                fail(opt.line, "unknown class option '" + opt.text + "'");
            }
        }
        const Token& body = expect(Token::Type::Block, "class body");
        parse_body(d, body);
        return d;
    }

    void parse_body(ClassDecl& d, const Token& body) {
        std::vector<Token> toks = tokenize(body.text, body.line);
        std::size_t i = 0;
        while (i < toks.size()) {
            const Token& t = toks[i];
            if (t.type != Token::Type::Word)
                fail(t.line, "unexpected block in class body");
            if (t.text == "public" || t.text == "private") {
                Visibility vis = t.text == "public" ? Visibility::Public : Visibility::Private;
                ++i;
                if (i >= toks.size() || toks[i].type != Token::Type::Block)
                    fail(t.line, "expected a brace block after '" + t.text + "'");
                parse_members(d, toks[i].text, toks[i].line, vis);
                ++i;
            } else if (t.text == "method") {
                i = parse_method(d, toks, i, Visibility::Public);
            } else if (t.text == "constructor") {
                if (d.custom_constructor) fail(t.line, "duplicate constructor declaration");
                ++i;
                if (i >= toks.size() || toks[i].type != Token::Type::Block)
                    fail(t.line, "expected constructor parameter list");
                ConstructorDecl ctor;
                ctor.params = split_words(toks[i].text);
                ++i;
                if (i >= toks.size() || toks[i].type != Token::Type::Block)
                    fail(t.line, "expected constructor body");
                ctor.body_text = toks[i].text;
                ++i;
                d.custom_constructor = std::move(ctor);
            } else if (t.text == "importMethods") {
                ++i;
                if (i >= toks.size() || toks[i].type != Token::Type::Block)
                    fail(t.line, "expected a brace list of method names after 'importMethods'");
                for (auto& w : split_words(toks[i].text)) d.imports.push_back(std::move(w));
                ++i;
            } else if (field_type_from_tag(t.text)) {
                fail(t.line, "field declarations must appear inside a public or private block");
            } else {
                fail(t.line, "unexpected '" + t.text + "' in class body");
            }
        }
    }

    void parse_members(ClassDecl& d, std::string_view content, std::size_t first_line,
                       Visibility vis) {
        std::vector<Token> toks = tokenize(content, first_line);
        std::size_t i = 0;
        while (i < toks.size()) {
            const Token& t = toks[i];
            if (t.type != Token::Type::Word)
                fail(t.line, "unexpected block in a visibility section");
            if (t.text == "method") {
                i = parse_method(d, toks, i, vis);
                continue;
            }
            auto ty = field_type_from_tag(t.text);
            if (!ty) fail(t.line, "unknown field type tag '" + t.text + "'");
            i = parse_field(d, toks, i, *ty, vis);
        }
    }

    std::size_t parse_field(ClassDecl& d, const std::vector<Token>& toks, std::size_t i,
                            FieldType ty, Visibility vis) {
        const Token& tag = toks[i];
        ++i;
        FieldDecl f;
        f.type = ty;
        f.visibility = vis;
        if (i < toks.size() && toks[i].type == Token::Type::Word && toks[i].text == "-static") {
            f.is_static = true;
            ++i;
        }
        if (i >= toks.size() || toks[i].type != Token::Type::Word || toks[i].text.empty() ||
            toks[i].text[0] == '-')
            fail(tag.line, std::string("expected a field name after '") + tag.text + "'");
        f.name = toks[i].text;
        std::size_t name_line = toks[i].line;
        ++i;
        if (i >= toks.size() ||
            (toks[i].type == Token::Type::Word && !toks[i].quoted && !toks[i].bracketed &&
             (is_keyword(toks[i].text) || field_type_from_tag(toks[i].text))))
            fail(name_line, "field '" + f.name + "' missing default value");
        f.default_value = make_default(ty, toks[i], f.name);
        ++i;
        for (const FieldDecl& existing : d.fields)
            if (existing.name == f.name)
                fail(name_line, "duplicate field name '" + f.name + "'");
        d.fields.push_back(std::move(f));
        return i;
    }

    Value make_default(FieldType ty, const Token& t, const std::string& field) {
        if (t.bracketed) {
            // "[list]" / "[dict create]"-style defaults: accepted as the
            // empty value for container kinds, never evaluated.
            switch (ty) {
            case FieldType::List: return heap_.make_list({});
            case FieldType::Dict: return heap_.make_dict({});
            case FieldType::Obj: return Value();
            default:
                fail(t.line, "field '" + field + "': bracketed default '" + t.text +
                                 "' is only accepted for list_t, dict_t and obj_t");
            }
        }
        switch (ty) {
        case FieldType::Double: {
            double v = 0.0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || p != t.text.data() + t.text.size())
                fail(t.line, "field '" + field + "': invalid double default '" + t.text + "'");
            return heap_.make_double(v);
        }
        case FieldType::Int: {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
            if (ec != std::errc() || p != t.text.data() + t.text.size())
                fail(t.line, "field '" + field + "': invalid int default '" + t.text + "'");
            return heap_.make_int(v);
        }
        case FieldType::Bool: {
            Value raw = heap_.make_text(t.text);
            try {
                return heap_.make_bool(raw.as_bool());
            } catch (const Error&) {
                fail(t.line, "field '" + field + "': invalid bool default '" + t.text + "'");
            }
        }
        case FieldType::String:
            return heap_.make_text(t.text);
        case FieldType::List:
            return heap_.parse_list(t.text);
        case FieldType::Dict: {
            Value items = heap_.parse_list(t.text);
            if (items.list_length() % 2 != 0)
                fail(t.line, "field '" + field + "': dict default must have an even number of elements");
            std::vector<std::pair<std::string, Value>> entries;
            for (std::size_t k = 0; k < items.list_length(); k += 2)
                entries.emplace_back(std::string(items.list_at(k).text_payload()),
                                     items.list_at(k + 1));
            return heap_.make_dict(std::move(entries));
        }
        case FieldType::Obj:
            return t.text.empty() ? Value() : heap_.make_text(t.text);
        }
        fail(t.line, "unreachable");
    }

    std::size_t parse_method(ClassDecl& d, const std::vector<Token>& toks, std::size_t i,
                             Visibility vis) {
        const Token& kw = toks[i];
        ++i;
        if (i >= toks.size() || toks[i].type != Token::Type::Word)
            fail(kw.line, "expected a method name after 'method'");
        MethodDecl m;
        m.visibility = vis;
        m.name = toks[i].text;
        std::size_t name_line = toks[i].line;
        ++i;

        std::optional<std::string> params;
        std::optional<std::string> body;
        while (i < toks.size()) {
            const Token& t = toks[i];
            if (t.type == Token::Type::Block) {
                if (!params) {
                    params = t.text;
                } else {
                    body = t.text;
                    ++i;
                    break;
                }
                ++i;
            } else if (!t.text.empty() && t.text[0] == '-') {
                if (t.text == "-static") m.is_static = true;
                else if (t.text == "-upvar") m.is_upvar = true;
                else if (t.text == "-override") m.is_override = true;
                else if (t.text == "-virtual") m.is_virtual = true;
                else if (t.text == "-update") {
                    ++i;
                    if (i >= toks.size() || toks[i].type != Token::Type::Block ||
                        split_words(toks[i].text).empty())
                        fail(t.line, "-update requires a field list");
                    m.update_fields = split_words(toks[i].text);
                } else {
                    fail(t.line, "unknown method modifier '" + t.text + "'");
                }
                ++i;
            } else {
                fail(t.line, "unexpected '" + t.text + "' in method declaration");
            }
        }
        if (!params || !body)
            fail(name_line, "method '" + m.name + "' is missing its parameter list or body");
        m.params = split_words(*params);
        m.body_text = *body;

        if (m.is_virtual && m.is_static)
            fail(name_line, "method '" + m.name + "': -virtual and -static are mutually exclusive");
        if (m.is_virtual && m.is_override)
            fail(name_line, "method '" + m.name + "': -override and -virtual are mutually exclusive");
        if (m.is_virtual && (m.is_upvar || !m.update_fields.empty()))
            fail(name_line, "method '" + m.name + "': -virtual methods use the plain convention");
        for (const MethodDecl& existing : d.methods)
            if (existing.name == m.name && existing.visibility == m.visibility)
                fail(name_line, "duplicate method name '" + m.name + "'");
        d.methods.push_back(std::move(m));
        return i;
    }
};

} // namespace

std::vector<ClassDecl> parse_declarations(Heap& heap, std::string_view source) {
    DeclParser p(heap, tokenize(source, 1));
    return p.parse_file();
}

ClassDecl parse_class(Heap& heap, std::string_view source) {
    std::vector<ClassDecl> decls = parse_declarations(heap, source);
    if (decls.size() != 1)
        throw ParseError("expected exactly one class declaration, found " +
                             std::to_string(decls.size()),
                         1);
    return std::move(decls.front());
}

void validate_decl(const ClassDecl& d, const Registry& r) {
    const CompiledClass* parent = nullptr;
    std::shared_ptr<CompiledClass> parent_sp;
    if (d.parent) {
        parent_sp = r.find_class(*d.parent);
        if (!parent_sp) throw Error("parent class '" + *d.parent + "' not found");
        parent = parent_sp.get();
    }
    bool lineage_virtual = d.is_virtual || (parent && parent->is_virtual());

    for (const FieldDecl& f : d.fields) {
        if (!f.is_static && parent && parent->has_field(f.name))
            throw Error("field '" + f.name + "' is already declared by an ancestor of '" +
                        d.name + "'");
    }
    for (const MethodDecl& m : d.methods) {
        if (m.is_virtual && !lineage_virtual)
            throw Error("virtual method '" + m.name + "' declared in non-virtual class '" +
                        d.name + "'");
        if (m.is_override) {
            bool found = false;
            for (const CompiledClass* a = parent; a; a = a->parent())
                if (a->find_method(m.name)) {
                    found = true;
                    break;
                }
            if (!found)
                throw Error("override method '" + m.name + "' not found on any ancestor of '" +
                            d.name + "'");
        }
    }
    for (const std::string& imp : d.imports) {
        if (!parent) throw Error("importMethods: class '" + d.name + "' has no parent");
        auto mb = parent->find_method(imp);
        if (!mb) throw Error("importMethods: unknown parent method '" + imp + "'");
        if (mb->decl.visibility == Visibility::Private)
            throw Error("importMethods: method '" + imp + "' on '" + *d.parent + "' is private");
    }
}

} // namespace voo
