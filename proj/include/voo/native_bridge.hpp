#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voo/registry.hpp"
#include "voo/value.hpp"

namespace voo {

/// Register a native record type. The descriptor must carry a unique
/// type_name and a duplicate hook (the COW detach path); everything else
/// is optional.
void register_native_type(Registry& r, NativeTypeDescriptor d);

/// Wrap a fresh instance: positional values go through the construct hook
/// (or from_generic over a list); no values means the type's defaults.
Value native_new(Registry& r, std::string_view type_name, std::span<const Value> init = {});

/// The conversion entry point: a value already of this type is returned
/// as-is; anything else runs from_generic and the value's internal form is
/// replaced in place, with its canonical text preserved. A failed
/// conversion leaves the value untouched.
const NativeInstance& value_to_native(Registry& r, Value& v, std::string_view type_name);

/// Per-field accessor hooks for a native class registration.
struct NativeFieldSpec {
    std::string name;
    std::function<Value(Heap&, const NativeInstance&)> get;
    std::function<void(NativeInstance&, const Value&)> set;
};

/// Extra by-value methods (the object arrives converted).
struct NativeMethodSpec {
    std::string name;
    std::function<Value(Heap&, const NativeInstance&, std::span<const Value>)> call;
};

struct NativeClassSpec {
    std::vector<NativeFieldSpec> fields;
    std::vector<NativeMethodSpec> methods;
};

/// Register "Class::new", "Class::new()", "Class::get.f" (object by
/// value), "Class::set.f" (variable by name, duplicate-on-shared) and any
/// extra methods — the same command-name shapes the class compiler emits,
/// so a call site only ever changes its namespace prefix.
void register_native_class(Registry& r, std::string_view class_name, std::string_view type_name,
                           NativeClassSpec spec);

} // namespace voo
