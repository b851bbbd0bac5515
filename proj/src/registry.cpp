#include "voo/registry.hpp"

#include <algorithm>

#include "voo/class_compiler.hpp"

namespace voo {

void Environment::pop_frame() {
    if (frames_.size() <= 1) throw Error("cannot pop the base frame");
    frames_.pop_back();
}

bool Environment::has(std::string_view name) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it)
        if (it->count(std::string(name))) return true;
    return false;
}

Value Environment::get(std::string_view name) const {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
        auto found = it->find(std::string(name));
        if (found != it->end()) return found->second;
    }
    throw Error("no such variable '" + std::string(name) + "'");
}

Value& Environment::binding(std::string_view name) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
        auto found = it->find(std::string(name));
        if (found != it->end()) return found->second;
    }
    throw Error("no such variable '" + std::string(name) + "'");
}

void Environment::set(std::string_view name, Value v) {
    for (auto it = frames_.rbegin(); it != frames_.rend(); ++it) {
        auto found = it->find(std::string(name));
        if (found != it->end()) {
            found->second = std::move(v);
            return;
        }
    }
    frames_.back().emplace(std::string(name), std::move(v));
}

void Environment::set_local(std::string_view name, Value v) {
    frames_.back().insert_or_assign(std::string(name), std::move(v));
}

Value& MethodContext::self_ref() {
    if (self_var.empty()) throw Error("method has no by-name object binding");
    return env.binding(self_var);
}

void Registry::register_command(std::string name, Callable fn) {
    if (!allow_replace_ && commands_.count(name))
        throw Error("command '" + name + "' already registered");
    commands_[std::move(name)] = std::move(fn);
}

bool Registry::has_command(std::string_view name) const {
    return commands_.count(std::string(name)) > 0;
}

std::vector<std::string> Registry::command_names() const {
    std::vector<std::string> names;
    names.reserve(commands_.size());
    for (const auto& [name, fn] : commands_) names.push_back(name);
    std::sort(names.begin(), names.end());
    return names;
}

Value Registry::invoke(std::string_view name, Environment& env, std::vector<Value> args) {
    auto it = commands_.find(std::string(name));
    if (it == commands_.end()) throw Error("unknown command '" + std::string(name) + "'");
    CallContext ctx{*this, env, std::span<const Value>(args)};
    return it->second(ctx);
}

void Registry::add_class(std::shared_ptr<CompiledClass> cls) {
    const std::string& name = cls->name();
    if (!allow_replace_ && classes_.count(name))
        throw Error("class '" + name + "' already defined");
    classes_[name] = std::move(cls);
}

std::shared_ptr<CompiledClass> Registry::find_class(std::string_view name) const {
    auto it = classes_.find(std::string(name));
    return it == classes_.end() ? nullptr : it->second;
}

CompiledClass& Registry::class_at(std::string_view name) const {
    auto cls = find_class(name);
    if (!cls) throw Error("unknown class '" + std::string(name) + "'");
    return *cls;
}

void Registry::add_native_type(NativeTypeDescriptor d) {
    if (native_types_.count(d.type_name))
        throw Error("native type '" + d.type_name + "' already registered");
    std::string key = d.type_name;
    native_types_[std::move(key)] = std::make_unique<NativeTypeDescriptor>(std::move(d));
}

const NativeTypeDescriptor* Registry::find_native_type(std::string_view name) const {
    auto it = native_types_.find(std::string(name));
    return it == native_types_.end() ? nullptr : it->second.get();
}

void bind_method(Registry& r, std::string_view class_name, std::string_view method,
                 MethodBody body) {
    CompiledClass& cls = r.class_at(class_name);
    auto binding = cls.find_method(method);
    if (!binding)
        throw Error("unknown method '" + std::string(method) + "' on class '" +
                    std::string(class_name) + "'");
    binding->body = std::move(body);
}

} // namespace voo
