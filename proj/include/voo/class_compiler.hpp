#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voo/class_dsl.hpp"
#include "voo/registry.hpp"
#include "voo/value.hpp"

namespace voo {

/// Whether a field/method is being reached through its public name or
/// through the my.-prefixed private surface.
enum class Access : std::uint8_t { Public, Private };

/// A compiled class: field slot layout, the prebuilt default object,
/// class-level static storage and the method bindings. Instances are just
/// list Values laid out to match. Immutable after compile_class except for
/// statics and method body binding.
///
/// Layout: non-virtual classes index fields 0..n-1 in declaration order,
/// parents first. Virtual classes reserve slot 0 for the interned class
/// tag and shift every field up by one.
class CompiledClass {
public:
    const std::string& name() const { return name_; }
    const std::string& tag_text() const { return tag_text_; } // "::Name"
    const CompiledClass* parent() const { return parent_.get(); }
    bool is_virtual() const { return is_virtual_; }

    const std::vector<std::string>& field_order() const { return field_order_; }
    std::size_t field_count() const { return field_order_.size(); }
    std::size_t instance_length() const { return field_order_.size() + (is_virtual_ ? 1 : 0); }
    bool has_field(std::string_view name) const { return index_of_.count(std::string(name)) > 0; }
    std::size_t index_of(std::string_view field) const;
    const FieldDecl& field_decl(std::string_view field) const;
    const Value& default_object() const { return default_object_; }
    const Value& class_tag() const { return tag_; } // empty unless virtual

    // Static (class-level) storage
    bool has_static(std::string_view name) const;
    Value static_get(std::string_view name) const;
    void static_set(std::string_view name, Value v);
    const std::vector<std::string>& static_order() const { return static_order_; }

    // Methods
    std::shared_ptr<MethodBinding> find_method(std::string_view name) const;
    const std::set<std::string>& virtual_methods() const { return virtual_methods_; }
    const std::vector<std::string>& method_order() const { return method_order_; }

    friend std::shared_ptr<CompiledClass> compile_class(Registry&, const ClassDecl&);
    friend void import_methods(Registry&, CompiledClass&, std::span<const std::string>);

private:
    std::string name_;
    std::string tag_text_;
    std::shared_ptr<CompiledClass> parent_;
    bool is_virtual_ = false;
    std::map<std::string, std::size_t> index_of_;
    std::map<std::string, FieldDecl> field_decls_; // instance + static, own and inherited
    std::vector<std::string> field_order_;         // instance fields only
    Value default_object_;
    Value tag_;
    std::map<std::string, Value> statics_;
    std::vector<std::string> static_order_;
    std::map<std::string, std::shared_ptr<MethodBinding>> methods_;
    std::vector<std::string> method_order_; // own declarations, declaration order
    std::set<std::string> virtual_methods_;
};

/// Validate, lay out and register a class: the compiled class plus its
/// whole generated command set (constructors, accessors, updaters, static
/// accessors, dispatchers, base.<name> bodies, my.-prefixed private
/// variants, imported methods) land in the registry under "Name::...".
/// Redeclaring a name replaces the previous class atomically when the
/// registry allows replacement.
std::shared_ptr<CompiledClass> compile_class(Registry& r, const ClassDecl& decl);

/// new: one value per field, declaration order; virtual classes prepend
/// the interned class tag.
Value construct_positional(Registry& r, const CompiledClass& c, std::span<const Value> vals);

/// new(): the stored default object, shared, copy-on-write protected.
Value construct_default(const CompiledClass& c);

/// new.args: defaults overlaid with "-field value" pairs in argument
/// order; public setters first, my.set fallback for private fields.
Value construct_named(Registry& r, const CompiledClass& c, std::span<const Value> args);

Value get_field(const CompiledClass& c, std::string_view field, const Value& obj,
                Access access = Access::Public);

/// Write through the named variable in env (caller-visible, COW-safe).
void set_field(const CompiledClass& c, std::string_view field, std::string_view var,
               Environment& env, Value v, Access access = Access::Public);

/// Detach the field into a temporary, run body on it with the object slot
/// holding the empty sentinel, and reattach the temporary's final value no
/// matter how the body exits.
void update_field(const CompiledClass& c, std::string_view field, std::string_view var,
                  Environment& env, const std::function<void(Value&)>& body,
                  Access access = Access::Public);

/// Virtual dispatch: route to the class named by the object's tag slot
/// when it defines the method, else run this class's own stored body.
Value dispatch_virtual(Registry& r, const CompiledClass& base, std::string_view method,
                       const Value& obj, std::span<const Value> args, Environment& env);

/// base.<name>: the class's own stored body, bypassing dispatch.
Value base_call(Registry& r, const CompiledClass& c, std::string_view method, const Value& obj,
                std::span<const Value> args, Environment& env);

/// Make public parent methods invocable as "Child::name" (shared binding).
void import_methods(Registry& r, CompiledClass& c, std::span<const std::string> names);

/// Emit the raw generated form of a declaration: namespace block, index
/// variables, __defaultObj/__fields, constructors, per-field accessors,
/// static accessors, dispatchers with base. bodies. Deterministic ordering
/// (declaration order), so the output is diff-testable.
std::string expand(const Registry& r, const ClassDecl& decl);

} // namespace voo
