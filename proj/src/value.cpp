#include "voo/value.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace voo {

namespace detail {

struct Cell {
    Kind kind;
    std::size_t refs = 1;
    AllocationLedger* ledger = nullptr;
    mutable std::optional<std::string> text;

    std::int64_t int_v = 0;
    double dbl_v = 0.0;
    bool bool_v = false;
    std::string str_v;                                   // Text / Atom
    std::vector<Value> list_v;                           // List
    std::vector<std::pair<std::string, Value>> dict_v;   // Dict
    const NativeTypeDescriptor* ntype = nullptr;
    std::unique_ptr<NativeInstance> native_v;

    explicit Cell(Kind k) : kind(k) {}
};

// Bytes this cell contributes under the accounting model (children are
// separate cells and pay for themselves).
static std::uint64_t shallow_bytes(const Cell& c) {
    using namespace footprint_model;
    switch (c.kind) {
    case Kind::Int:
    case Kind::Double:
    case Kind::Bool:
        return kCellHeader + kSlot;
    case Kind::Text:
    case Kind::Atom:
        return kCellHeader + c.str_v.size();
    case Kind::List:
        return kCellHeader + kSlot * c.list_v.size();
    case Kind::Dict: {
        std::uint64_t b = kCellHeader;
        for (const auto& [k, v] : c.dict_v) b += k.size() + 2 * kSlot;
        return b;
    }
    case Kind::Native:
        return kCellHeader + (c.ntype ? c.ntype->instance_bytes : kSlot);
    }
    return kCellHeader;
}

static Cell* new_cell(Kind k, AllocationLedger* ledger) {
    Cell* c = new Cell(k);
    c->ledger = ledger;
    return c;
}

static void account_new(Cell* c) {
    if (c->ledger) c->ledger->record_alloc(shallow_bytes(*c));
}

static void free_cell(Cell* c) {
    if (c->ledger) c->ledger->record_free(shallow_bytes(*c));
    delete c;
}

// Shallow clone for copy-on-write: children are shared (their refcounts
// bump via the vector copies), the text cache is dropped because the
// caller is about to mutate.
static Cell* clone_for_write(const Cell& src) {
    Cell* c = new Cell(src.kind);
    c->ledger = src.ledger;
    switch (src.kind) {
    case Kind::Int: c->int_v = src.int_v; break;
    case Kind::Double: c->dbl_v = src.dbl_v; break;
    case Kind::Bool: c->bool_v = src.bool_v; break;
    case Kind::Text:
    case Kind::Atom: c->str_v = src.str_v; break;
    case Kind::List: c->list_v = src.list_v; break;
    case Kind::Dict: c->dict_v = src.dict_v; break;
    case Kind::Native:
        if (!src.ntype->duplicate)
            throw Error("native type \"" + src.ntype->type_name + "\" has no duplicate hook");
        c->ntype = src.ntype;
        c->native_v = src.ntype->duplicate(*src.native_v);
        break;
    }
    account_new(c);
    return c;
}

} // namespace detail

using detail::Cell;

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::Int: return "int";
    case Kind::Double: return "double";
    case Kind::Bool: return "bool";
    case Kind::Text: return "text";
    case Kind::List: return "list";
    case Kind::Dict: return "dict";
    case Kind::Atom: return "atom";
    case Kind::Native: return "native";
    }
    return "?";
}

// ---------------------------------------------------------------- Value

Value::Value(const Value& o) noexcept : cell_(o.cell_) {
    if (cell_) ++cell_->refs;
}

Value& Value::operator=(const Value& o) noexcept {
    if (o.cell_) ++o.cell_->refs;
    if (cell_ && --cell_->refs == 0) detail::free_cell(cell_);
    cell_ = o.cell_;
    return *this;
}

Value& Value::operator=(Value&& o) noexcept {
    if (this != &o) {
        if (cell_ && --cell_->refs == 0) detail::free_cell(cell_);
        cell_ = o.cell_;
        o.cell_ = nullptr;
    }
    return *this;
}

Value::~Value() {
    if (cell_ && --cell_->refs == 0) detail::free_cell(cell_);
}

Kind Value::kind() const {
    return cell_ ? cell_->kind : Kind::Text;
}

std::size_t Value::share_count() const {
    return cell_ ? cell_->refs : 1;
}

static const std::string kEmptyText;

static bool needs_brace_quote(std::string_view s) {
    if (s.empty()) return true;
    return s.find_first_of(" \t\n\r{}") != std::string_view::npos;
}

static void append_element(std::string& out, const std::string& elem) {
    if (needs_brace_quote(elem)) {
        out += '{';
        out += elem;
        out += '}';
    } else {
        out += elem;
    }
}

const std::string& Value::to_text() const {
    if (!cell_) return kEmptyText;
    if (cell_->text) return *cell_->text;

    std::string out;
    switch (cell_->kind) {
    case Kind::Int:
        out = std::to_string(cell_->int_v);
        break;
    case Kind::Double:
        out = format_double(cell_->dbl_v);
        break;
    case Kind::Bool:
        out = cell_->bool_v ? "1" : "0";
        break;
    case Kind::Text:
    case Kind::Atom:
        out = cell_->str_v;
        break;
    case Kind::List: {
        bool first = true;
        for (const Value& e : cell_->list_v) {
            if (!first) out += ' ';
            first = false;
            append_element(out, e.to_text());
        }
        break;
    }
    case Kind::Dict: {
        bool first = true;
        for (const auto& [k, v] : cell_->dict_v) {
            if (!first) out += ' ';
            first = false;
            append_element(out, k);
            out += ' ';
            append_element(out, v.to_text());
        }
        break;
    }
    case Kind::Native:
        if (!cell_->ntype->to_text)
            throw Error("type \"" + cell_->ntype->type_name + "\" cannot be cast to text");
        out = cell_->ntype->to_text(*cell_->native_v);
        break;
    }
    cell_->text = std::move(out);
    return *cell_->text;
}

std::int64_t Value::as_int() const {
    switch (kind()) {
    case Kind::Int: return cell_->int_v;
    case Kind::Bool: return cell_->bool_v ? 1 : 0;
    case Kind::Text:
    case Kind::Atom: {
        std::string_view s = cell_ ? std::string_view(cell_->str_v) : std::string_view();
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && p == s.data() + s.size()) return v;
        break;
    }
    default: break;
    }
    throw Error("expected an integer, got \"" + to_text() + "\"");
}

double Value::as_double() const {
    switch (kind()) {
    case Kind::Int: return static_cast<double>(cell_->int_v);
    case Kind::Double: return cell_->dbl_v;
    case Kind::Bool: return cell_->bool_v ? 1.0 : 0.0;
    case Kind::Text:
    case Kind::Atom: {
        std::string_view s = cell_ ? std::string_view(cell_->str_v) : std::string_view();
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && p == s.data() + s.size()) return v;
        break;
    }
    default: break;
    }
    throw Error("expected a number, got \"" + to_text() + "\"");
}

bool Value::as_bool() const {
    switch (kind()) {
    case Kind::Bool: return cell_->bool_v;
    case Kind::Int: return cell_->int_v != 0;
    case Kind::Text:
    case Kind::Atom: {
        std::string s(cell_ ? std::string_view(cell_->str_v) : std::string_view());
        std::transform(s.begin(), s.end(), s.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
        if (s == "0" || s == "false" || s == "no" || s == "off") return false;
        break;
    }
    default: break;
    }
    throw Error("expected a boolean, got \"" + to_text() + "\"");
}

std::string_view Value::text_payload() const {
    Kind k = kind();
    if (k != Kind::Text && k != Kind::Atom)
        throw Error(std::string("expected a text value, got ") + kind_name(k));
    return cell_ ? std::string_view(cell_->str_v) : std::string_view();
}

std::size_t Value::list_length() const {
    if (kind() != Kind::List)
        throw Error(std::string("expected a list value, got ") + kind_name(kind()));
    return cell_->list_v.size();
}

const Value& Value::list_at(std::size_t i) const {
    std::size_t n = list_length();
    if (i >= n)
        throw Error("list index " + std::to_string(i) + " out of range (length " +
                    std::to_string(n) + ")");
    return cell_->list_v[i];
}

void Value::ensure_unique() {
    assert(cell_);
    if (cell_->refs == 1) {
        cell_->text.reset();
        return;
    }
    Cell* copy = detail::clone_for_write(*cell_);
    --cell_->refs;
    cell_ = copy;
}

void Value::list_set(std::size_t i, Value v) {
    std::size_t n = list_length(); // also type-checks
    if (i >= n)
        throw Error("list index " + std::to_string(i) + " out of range (length " +
                    std::to_string(n) + ")");
    ensure_unique();
    cell_->list_v[i] = std::move(v);
}

std::size_t Value::dict_size() const {
    if (kind() != Kind::Dict)
        throw Error(std::string("expected a dict value, got ") + kind_name(kind()));
    return cell_->dict_v.size();
}

const Value* Value::dict_find(std::string_view key) const {
    dict_size(); // type-check
    for (const auto& [k, v] : cell_->dict_v)
        if (k == key) return &v;
    return nullptr;
}

void Value::dict_set(std::string_view key, Value v) {
    dict_size(); // type-check
    ensure_unique();
    for (auto& [k, existing] : cell_->dict_v) {
        if (k == key) {
            existing = std::move(v);
            return;
        }
    }
    std::uint64_t before = detail::shallow_bytes(*cell_);
    cell_->dict_v.emplace_back(std::string(key), std::move(v));
    if (cell_->ledger) cell_->ledger->record_resize(before, detail::shallow_bytes(*cell_));
}

const NativeTypeDescriptor* Value::native_type() const {
    return kind() == Kind::Native ? cell_->ntype : nullptr;
}

const NativeInstance& Value::native_instance() const {
    if (kind() != Kind::Native)
        throw Error(std::string("expected a native value, got ") + kind_name(kind()));
    return *cell_->native_v;
}

NativeInstance& Value::native_detach() {
    if (kind() != Kind::Native)
        throw Error(std::string("expected a native value, got ") + kind_name(kind()));
    ensure_unique();
    return *cell_->native_v;
}

void Value::convert_to_native(const NativeTypeDescriptor& type,
                              std::unique_ptr<NativeInstance> instance) {
    if (!cell_) throw Error("cannot convert the empty value in place");
    to_text(); // materialize and keep the text form across the conversion
    std::uint64_t before = detail::shallow_bytes(*cell_);
    cell_->list_v.clear();
    cell_->dict_v.clear();
    cell_->str_v.clear();
    cell_->kind = Kind::Native;
    cell_->ntype = &type;
    cell_->native_v = std::move(instance);
    if (cell_->ledger) cell_->ledger->record_resize(before, detail::shallow_bytes(*cell_));
}

bool text_equal(const Value& a, const Value& b) {
    return same_cell(a, b) || a.to_text() == b.to_text();
}

std::string format_double(double d) {
    if (std::isnan(d)) return "NaN";
    if (std::isinf(d)) return d > 0 ? "Inf" : "-Inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

// ------------------------------------------------------------ footprint

void FootprintAccumulator::add(const Value& v) {
    const Cell* c = v.cell_;
    if (!c || !seen_.insert(c).second) return;
    total_ += detail::shallow_bytes(*c);
    if (c->kind == Kind::List) {
        for (const Value& e : c->list_v) add(e);
    } else if (c->kind == Kind::Dict) {
        for (const auto& [key, val] : c->dict_v) add(val);
    }
}

std::uint64_t footprint_bytes(const Value& v) {
    FootprintAccumulator acc;
    acc.add(v);
    return acc.total();
}

// ----------------------------------------------------------------- Heap

Heap::~Heap() = default;

Value Heap::adopt(Cell* c) {
    detail::account_new(c);
    return Value(c);
}

Value Heap::make_int(std::int64_t v) {
    Cell* c = detail::new_cell(Kind::Int, &ledger_);
    c->int_v = v;
    return adopt(c);
}

Value Heap::make_double(double v) {
    Cell* c = detail::new_cell(Kind::Double, &ledger_);
    c->dbl_v = v;
    return adopt(c);
}

Value Heap::make_bool(bool v) {
    Cell* c = detail::new_cell(Kind::Bool, &ledger_);
    c->bool_v = v;
    return adopt(c);
}

Value Heap::make_text(std::string v) {
    Cell* c = detail::new_cell(Kind::Text, &ledger_);
    c->str_v = std::move(v);
    return adopt(c);
}

Value Heap::make_list(std::vector<Value> elems) {
    Cell* c = detail::new_cell(Kind::List, &ledger_);
    c->list_v = std::move(elems);
    return adopt(c);
}

Value Heap::make_dict(std::vector<std::pair<std::string, Value>> entries) {
    Cell* c = detail::new_cell(Kind::Dict, &ledger_);
    c->dict_v = std::move(entries);
    return adopt(c);
}

Value Heap::make_native(const NativeTypeDescriptor& type, std::unique_ptr<NativeInstance> instance) {
    if (!instance) throw Error("native type \"" + type.type_name + "\": null instance");
    Cell* c = detail::new_cell(Kind::Native, &ledger_);
    c->ntype = &type;
    c->native_v = std::move(instance);
    return adopt(c);
}

Value Heap::intern(std::string_view s) {
    auto it = interns_.find(std::string(s));
    if (it != interns_.end()) return it->second;
    Cell* c = detail::new_cell(Kind::Atom, &ledger_);
    c->str_v = std::string(s);
    Value v = adopt(c);
    interns_.emplace(std::string(s), v);
    return v;
}

Value Heap::parse_list(std::string_view s) {
    std::vector<Value> elems;
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (i < n) {
        while (i < n && is_ws(s[i])) ++i;
        if (i >= n) break;
        if (s[i] == '{') {
            std::size_t start = i;
            int depth = 0;
            std::size_t j = i;
            for (; j < n; ++j) {
                if (s[j] == '{') ++depth;
                else if (s[j] == '}' && --depth == 0) break;
            }
            if (depth != 0)
                throw ParseError("unbalanced brace in list at offset " + std::to_string(start),
                                 start);
            elems.push_back(make_text(std::string(s.substr(i + 1, j - i - 1))));
            i = j + 1;
        } else if (s[i] == '}') {
            throw ParseError("unbalanced brace in list at offset " + std::to_string(i), i);
        } else {
            std::size_t start = i;
            while (i < n && !is_ws(s[i])) ++i;
            elems.push_back(make_text(std::string(s.substr(start, i - start))));
        }
    }
    return make_list(std::move(elems));
}

} // namespace voo
