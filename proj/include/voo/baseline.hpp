#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "voo/value.hpp"

namespace voo {

/// Accounting constants for the reference-semantics baseline. A handle
/// object deliberately models the machinery a procedure-handle object
/// system pays for per instance: a command-table entry, an instance
/// namespace record, and a per-instance variable table with one entry per
/// field. Without this modeled overhead the comparison against bare list
/// objects would be vacuous.
namespace handle_model {
inline constexpr std::uint64_t kCommandEntry = 64;
inline constexpr std::uint64_t kInstanceNamespace = 64;
inline constexpr std::uint64_t kVarTableHeader = 48;
inline constexpr std::uint64_t kVarEntry = 32;
}

struct HandleClass {
    std::string name;
    std::vector<std::string> fields;
    std::vector<Value> defaults; // one per field
};

/// Reference-semantics comparator: objects are handle texts keyed into a
/// table, live until explicitly destroyed, and alias freely (two copies of
/// a handle observe each other's writes). The exact opposite of the value
/// runtime's copy-on-write objects.
class HandleTable {
public:
    explicit HandleTable(AllocationLedger* ledger = nullptr) : ledger_(ledger) {}
    HandleTable(const HandleTable&) = delete;
    HandleTable& operator=(const HandleTable&) = delete;
    ~HandleTable();

    void register_class(HandleClass cls);
    const HandleClass& class_at(std::string_view name) const;

    /// Fresh handle text "::h::obj<N>"; handles are never reused within
    /// one table's lifetime.
    std::string create(std::string_view class_name, std::span<const Value> vals);
    std::string create_default(std::string_view class_name);

    Value get(std::string_view handle, std::string_view field) const;
    void set(std::string_view handle, std::string_view field, Value v);

    /// Explicit destruction; double destroy and any later access raise a
    /// use-after-destroy error.
    void destroy(std::string_view handle);
    std::size_t live_count() const { return live_.size(); }

private:
    struct Entry {
        const HandleClass* cls;
        std::unordered_map<std::string, Value> vars;
    };

    const Entry& entry_at(std::string_view handle) const;
    std::uint64_t entry_model_bytes(std::string_view handle, const Entry& e) const;
    std::string insert(const HandleClass& cls, std::span<const Value> vals);

    AllocationLedger* ledger_;
    std::uint64_t next_id_ = 0;
    std::unordered_map<std::string, HandleClass> classes_;
    std::unordered_map<std::string, Entry> live_;
};

} // namespace voo
