#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace voo {

class Value;
class Heap;

namespace detail {
struct Cell;
}

/// Base class for all runtime errors raised by the framework.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Error raised while parsing list text or class-declaration source.
/// `where` is a byte offset for list parsing and a line number for the
/// declaration grammar; the message spells out which.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t where)
        : Error(msg), where_(where) {}
    std::size_t where() const { return where_; }

private:
    std::size_t where_;
};

enum class Kind : std::uint8_t { Int, Double, Bool, Text, List, Dict, Atom, Native };

const char* kind_name(Kind k);

/// Opaque payload carried by a Native value. Concrete record types derive
/// from this and are managed through a NativeTypeDescriptor's hooks.
struct NativeInstance {
    virtual ~NativeInstance() = default;
};

/// Hooks describing one registered native record type. `duplicate` is
/// mandatory (it is what makes copy-on-write possible for native values);
/// everything else is optional.
struct NativeTypeDescriptor {
    std::string type_name;

    // Deep copy, invoked when a mutating accessor hits a shared cell.
    std::function<std::unique_ptr<NativeInstance>(const NativeInstance&)> duplicate;

    // Canonical text form; absent -> to_text raises "cannot be cast to text".
    std::function<std::string(const NativeInstance&)> to_text;

    // Parse a generic value (usually a list) into a fresh instance.
    std::function<std::unique_ptr<NativeInstance>(Heap&, const Value&)> from_generic;

    // Instance with all defaults, used by zero-argument construction.
    std::function<std::unique_ptr<NativeInstance>()> make_default;

    // Positional construction; falls back to from_generic over a list.
    std::function<std::unique_ptr<NativeInstance>(Heap&, std::span<const Value>)> construct;

    // Bytes one instance contributes under the accounting model.
    std::uint64_t instance_bytes = 8;
};

/// Byte-accounting model. All ledger and footprint figures are computed
/// from these constants, never from the process allocator, so they are
/// bit-identical across runs and platforms:
///   - every cell pays kCellHeader
///   - Int/Double/Bool pay one kSlot of payload
///   - Text/Atom pay their byte length
///   - List pays kSlot per element slot (elements are separate cells)
///   - Dict pays key length + 2*kSlot per entry
///   - Native pays the descriptor's instance_bytes
namespace footprint_model {
inline constexpr std::uint64_t kCellHeader = 16;
inline constexpr std::uint64_t kSlot = 8;
}

/// Running totals of cell allocations under the accounting model.
/// total_allocations is monotone; the live counters go back down as
/// values are dropped.
class AllocationLedger {
public:
    std::uint64_t live_allocations() const { return live_allocations_; }
    std::uint64_t live_bytes() const { return live_bytes_; }
    std::uint64_t total_allocations() const { return total_allocations_; }

    void record_alloc(std::uint64_t bytes) {
        ++live_allocations_;
        ++total_allocations_;
        live_bytes_ += bytes;
    }
    void record_free(std::uint64_t bytes) {
        --live_allocations_;
        live_bytes_ -= bytes;
    }
    void record_resize(std::uint64_t old_bytes, std::uint64_t new_bytes) {
        live_bytes_ += new_bytes;
        live_bytes_ -= old_bytes;
    }

private:
    std::uint64_t live_allocations_ = 0;
    std::uint64_t live_bytes_ = 0;
    std::uint64_t total_allocations_ = 0;
};

/// A tagged, shareable, copy-on-write datum. Copying a Value shares the
/// underlying cell; mutating through a handle whose cell is shared clones
/// the cell first, so no other holder ever observes the change.
///
/// A default-constructed Value is the empty text value (it owns no cell
/// and never touches a ledger); it doubles as the detached-slot sentinel
/// written by updaters.
///
/// Values must not outlive the Heap that created them, and a value is
/// only ever touched from the thread of its runtime instance.
class Value {
public:
    Value() noexcept : cell_(nullptr) {}
    Value(const Value& o) noexcept;
    Value(Value&& o) noexcept : cell_(o.cell_) { o.cell_ = nullptr; }
    Value& operator=(const Value& o) noexcept;
    Value& operator=(Value&& o) noexcept;
    ~Value();

    Kind kind() const;
    bool is_list() const { return kind() == Kind::List; }
    bool is_dict() const { return kind() == Kind::Dict; }
    bool is_atom() const { return kind() == Kind::Atom; }
    bool is_native() const { return kind() == Kind::Native; }

    /// Number of live holders of the underlying cell (>= 1).
    std::size_t share_count() const;
    bool is_shared() const { return share_count() > 1; }

    /// Canonical text form; computed once and cached on the cell.
    /// List elements that are empty or contain whitespace or braces are
    /// brace-quoted so the form re-parses to an equal value.
    const std::string& to_text() const;

    // Coercing reads, Tcl-style: text parses to numbers on demand.
    std::int64_t as_int() const;
    double as_double() const;
    bool as_bool() const;
    /// Raw payload of a Text or Atom value (no coercion).
    std::string_view text_payload() const;

    // Lists
    std::size_t list_length() const;
    const Value& list_at(std::size_t i) const;
    /// COW write of element i through this handle.
    void list_set(std::size_t i, Value v);

    // Dicts (insertion-ordered)
    std::size_t dict_size() const;
    const Value* dict_find(std::string_view key) const;
    /// COW insert-or-replace through this handle.
    void dict_set(std::string_view key, Value v);

    // Natives
    const NativeTypeDescriptor* native_type() const;
    const NativeInstance& native_instance() const;
    /// COW detach (via the type's duplicate hook when shared), then hand
    /// back the uniquely owned instance for mutation.
    NativeInstance& native_detach();
    /// Replace the internal form with a native instance, in place and for
    /// every holder, preserving the canonical text form (it is materialized
    /// first). The observable value does not change; only its kind does.
    void convert_to_native(const NativeTypeDescriptor& type,
                           std::unique_ptr<NativeInstance> instance);

    /// True when both handles point at the same cell (atom identity).
    friend bool same_cell(const Value& a, const Value& b) { return a.cell_ == b.cell_; }

    friend class Heap;
    friend std::uint64_t footprint_bytes(const Value&);
    friend class FootprintAccumulator;

private:
    explicit Value(detail::Cell* adopted) noexcept : cell_(adopted) {}
    void ensure_unique();

    detail::Cell* cell_;
};

/// Structural equality: equal canonical text forms. This is the value
/// world's notion of "the same data" (an Int 1 and a Text "1" are equal).
bool text_equal(const Value& a, const Value& b);

/// Shortest decimal text that parses back to the same double, with ".0"
/// appended when nothing else marks it as non-integral.
std::string format_double(double d);

/// Bytes attributable to every distinct cell reachable from v, each
/// counted once, under the footprint_model constants.
std::uint64_t footprint_bytes(const Value& v);

/// Population footprint: distinct cells across every added root counted
/// once, so shared structure (interned atoms, shared spines) is paid for
/// a single time no matter how many holders exist.
class FootprintAccumulator {
public:
    void add(const Value& v);
    std::uint64_t total() const { return total_; }
    std::size_t distinct_cells() const { return seen_.size(); }

private:
    std::unordered_set<const detail::Cell*> seen_;
    std::uint64_t total_ = 0;
};

/// Allocation arena for one runtime instance: the ledger every cell
/// reports to plus the atom intern table. Single-threaded; two Heaps on
/// two threads share nothing.
class Heap {
public:
    Heap() = default;
    Heap(const Heap&) = delete;
    Heap& operator=(const Heap&) = delete;
    ~Heap();

    AllocationLedger& ledger() { return ledger_; }
    const AllocationLedger& ledger() const { return ledger_; }

    Value make_int(std::int64_t v);
    Value make_double(double v);
    Value make_bool(bool v);
    Value make_text(std::string v);
    Value make_list(std::vector<Value> elems);
    Value make_dict(std::vector<std::pair<std::string, Value>> entries);
    Value make_native(const NativeTypeDescriptor& type, std::unique_ptr<NativeInstance> instance);

    /// The unique Atom cell for s; repeated calls hand back the same cell.
    Value intern(std::string_view s);
    std::size_t intern_count() const { return interns_.size(); }

    /// Split text on unquoted whitespace into a list of Text elements;
    /// a brace-quoted segment (recognized at element start) becomes one
    /// element with the outer braces stripped. Unbalanced braces raise a
    /// ParseError carrying the byte offset.
    Value parse_list(std::string_view s);

private:
    static Value adopt(detail::Cell* c);

    AllocationLedger ledger_;
    std::unordered_map<std::string, Value> interns_;
};

} // namespace voo
