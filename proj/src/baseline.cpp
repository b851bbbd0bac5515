#include "voo/baseline.hpp"

namespace voo {

HandleTable::~HandleTable() {
    // Leaked entries stay in the ledger's live counters until the table
    // itself goes away; free them here so a dropped table is clean.
    if (ledger_)
        for (const auto& [h, e] : live_) ledger_->record_free(entry_model_bytes(h, e));
}

void HandleTable::register_class(HandleClass cls) {
    if (cls.fields.size() != cls.defaults.size())
        throw Error("handle class '" + cls.name + "': " + std::to_string(cls.fields.size()) +
                    " fields but " + std::to_string(cls.defaults.size()) + " defaults");
    classes_[cls.name] = std::move(cls);
}

const HandleClass& HandleTable::class_at(std::string_view name) const {
    auto it = classes_.find(std::string(name));
    if (it == classes_.end())
        throw Error("unknown handle class '" + std::string(name) + "'");
    return it->second;
}

std::uint64_t HandleTable::entry_model_bytes(std::string_view handle, const Entry& e) const {
    using namespace handle_model;
    using footprint_model::kSlot;
    std::uint64_t bytes = kCommandEntry + kInstanceNamespace + kVarTableHeader + handle.size();
    for (const std::string& f : e.cls->fields) bytes += kVarEntry + f.size() + kSlot;
    return bytes;
}

std::string HandleTable::insert(const HandleClass& cls, std::span<const Value> vals) {
    if (vals.size() != cls.fields.size())
        throw Error("handle class '" + cls.name + "' expects " +
                    std::to_string(cls.fields.size()) + " values, got " +
                    std::to_string(vals.size()));
    std::string handle = "::h::obj" + std::to_string(next_id_++);
    Entry e;
    e.cls = &cls;
    e.vars.reserve(cls.fields.size());
    for (std::size_t i = 0; i < cls.fields.size(); ++i) e.vars.emplace(cls.fields[i], vals[i]);
    if (ledger_) ledger_->record_alloc(entry_model_bytes(handle, e));
    live_.emplace(handle, std::move(e));
    return handle;
}

std::string HandleTable::create(std::string_view class_name, std::span<const Value> vals) {
    return insert(class_at(class_name), vals);
}

std::string HandleTable::create_default(std::string_view class_name) {
    const HandleClass& cls = class_at(class_name);
    return insert(cls, cls.defaults);
}

const HandleTable::Entry& HandleTable::entry_at(std::string_view handle) const {
    auto it = live_.find(std::string(handle));
    if (it == live_.end())
        throw Error("handle '" + std::string(handle) + "' does not name a live object");
    return it->second;
}

Value HandleTable::get(std::string_view handle, std::string_view field) const {
    const Entry& e = entry_at(handle);
    auto it = e.vars.find(std::string(field));
    if (it == e.vars.end())
        throw Error("handle class '" + e.cls->name + "' has no field '" + std::string(field) +
                    "'");
    return it->second;
}

void HandleTable::set(std::string_view handle, std::string_view field, Value v) {
    Entry& e = const_cast<Entry&>(entry_at(handle));
    auto it = e.vars.find(std::string(field));
    if (it == e.vars.end())
        throw Error("handle class '" + e.cls->name + "' has no field '" + std::string(field) +
                    "'");
    it->second = std::move(v);
}

void HandleTable::destroy(std::string_view handle) {
    auto it = live_.find(std::string(handle));
    if (it == live_.end())
        throw Error("handle '" + std::string(handle) + "' does not name a live object");
    if (ledger_) ledger_->record_free(entry_model_bytes(it->first, it->second));
    live_.erase(it);
}

} // namespace voo
