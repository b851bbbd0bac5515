#pragma once

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "voo/class_dsl.hpp"
#include "voo/value.hpp"

namespace voo {

class CompiledClass;
class Registry;

/// Named-variable frames. Lookup walks from the innermost frame outward,
/// which is what gives generated setters their by-name (upvar) contract:
/// a callee handed a variable name writes straight into the caller's
/// binding.
class Environment {
public:
    Environment() : frames_(1) {}

    void push_frame() { frames_.emplace_back(); }
    void pop_frame();
    std::size_t depth() const { return frames_.size(); }

    bool has(std::string_view name) const;
    /// Copy of the innermost binding; Error if unbound.
    Value get(std::string_view name) const;
    /// Mutable reference to the innermost binding; Error if unbound.
    Value& binding(std::string_view name);
    /// Rebind the innermost existing binding, else bind in the current frame.
    void set(std::string_view name, Value v);
    /// Bind in the current frame unconditionally (shadowing outer frames).
    void set_local(std::string_view name, Value v);

private:
    std::vector<std::unordered_map<std::string, Value>> frames_;
};

struct CallContext {
    Registry& registry;
    Environment& env;
    std::span<const Value> args;
};

using Callable = std::function<Value(CallContext&)>;

/// What a bound method body sees. `self` carries the object for by-value
/// conventions; `self_var` carries the variable name for -upvar/-update;
/// -static methods get neither.
struct MethodContext {
    Registry& registry;
    Environment& env;
    const CompiledClass& cls;
    Value self;
    std::string self_var;
    std::span<const Value> args;

    /// The caller's object binding (by-name conventions only).
    Value& self_ref();
};

using MethodBody = std::function<Value(MethodContext&)>;

/// A declared method plus its (possibly absent) host body. Bindings are
/// shared between a class and subclasses that inherit the method, so
/// rebinding on the declaring class is seen everywhere.
struct MethodBinding {
    MethodDecl decl;
    MethodBody body; // empty = declared but unbound
};

/// Command table, compiled classes, native type descriptors and the value
/// heap of one runtime instance. Single-threaded; independent instances
/// share nothing.
class Registry {
public:
    explicit Registry(bool allow_replace = true) : allow_replace_(allow_replace) {}
    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    Heap& heap() { return heap_; }
    const Heap& heap() const { return heap_; }
    Value intern(std::string_view s) { return heap_.intern(s); }

    // Commands
    void register_command(std::string name, Callable fn);
    bool has_command(std::string_view name) const;
    std::vector<std::string> command_names() const; // sorted
    Value invoke(std::string_view name, Environment& env, std::vector<Value> args);

    // Classes
    void add_class(std::shared_ptr<CompiledClass> cls); // replaces under the same policy
    std::shared_ptr<CompiledClass> find_class(std::string_view name) const;
    CompiledClass& class_at(std::string_view name) const; // Error if absent

    // Native types (storage; validation lives in the native bridge)
    void add_native_type(NativeTypeDescriptor d);
    const NativeTypeDescriptor* find_native_type(std::string_view name) const;

    bool allow_replace() const { return allow_replace_; }

private:
    Heap heap_;
    bool allow_replace_;
    std::unordered_map<std::string, Callable> commands_;
    std::map<std::string, std::shared_ptr<CompiledClass>> classes_;
    std::map<std::string, std::unique_ptr<NativeTypeDescriptor>> native_types_;
};

/// Attach a host body to a declared method; dispatchers, base.<name> and
/// the plain command all route to it under the declared convention.
void bind_method(Registry& r, std::string_view class_name, std::string_view method,
                 MethodBody body);

} // namespace voo
