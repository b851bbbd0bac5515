#include "voo/native_bridge.hpp"

#include <memory>

namespace voo {

void register_native_type(Registry& r, NativeTypeDescriptor d) {
    if (d.type_name.empty()) throw Error("native type registration: empty type name");
    if (!d.duplicate)
        throw Error("native type '" + d.type_name + "' must provide a duplicate hook");
    r.add_native_type(std::move(d));
}

namespace {

const NativeTypeDescriptor& type_at(Registry& r, std::string_view name) {
    const NativeTypeDescriptor* d = r.find_native_type(name);
    if (!d) throw Error("unknown native type '" + std::string(name) + "'");
    return *d;
}

} // namespace

Value native_new(Registry& r, std::string_view type_name, std::span<const Value> init) {
    const NativeTypeDescriptor& d = type_at(r, type_name);
    if (init.empty()) {
        if (!d.make_default)
            throw Error("native type '" + d.type_name + "' has no default constructor hook");
        return r.heap().make_native(d, d.make_default());
    }
    if (d.construct) return r.heap().make_native(d, d.construct(r.heap(), init));
    if (d.from_generic) {
        std::vector<Value> elems(init.begin(), init.end());
        Value as_list = r.heap().make_list(std::move(elems));
        return r.heap().make_native(d, d.from_generic(r.heap(), as_list));
    }
    throw Error("native type '" + d.type_name + "' has no construction hook");
}

const NativeInstance& value_to_native(Registry& r, Value& v, std::string_view type_name) {
    const NativeTypeDescriptor& d = type_at(r, type_name);
    if (v.native_type() == &d) return v.native_instance();
    if (!d.from_generic) throw Error("Failed to convert to \"" + d.type_name + "\"");
    std::unique_ptr<NativeInstance> inst;
    try {
        inst = d.from_generic(r.heap(), v);
    } catch (const std::exception& e) {
        // The original value is left untouched.
        throw Error("Failed to convert to \"" + d.type_name + "\": " + e.what());
    }
    if (!inst) throw Error("Failed to convert to \"" + d.type_name + "\"");
    v.convert_to_native(d, std::move(inst));
    return v.native_instance();
}

void register_native_class(Registry& r, std::string_view class_name, std::string_view type_name,
                           NativeClassSpec spec) {
    type_at(r, type_name); // fail early on unknown types
    const std::string cls(class_name);
    const std::string type(type_name);
    auto shared = std::make_shared<NativeClassSpec>(std::move(spec));

    r.register_command(cls + "::new", [type](CallContext& ctx) {
        return native_new(ctx.registry, type, ctx.args);
    });
    r.register_command(cls + "::new()", [cls, type](CallContext& ctx) {
        if (!ctx.args.empty())
            throw Error(cls + "::new() expects 0 argument(s), got " +
                        std::to_string(ctx.args.size()));
        return native_new(ctx.registry, type, {});
    });

    for (std::size_t i = 0; i < shared->fields.size(); ++i) {
        const NativeFieldSpec& f = shared->fields[i];
        if (f.get) {
            r.register_command(cls + "::get." + f.name, [cls, type, shared, i](CallContext& ctx) {
                if (ctx.args.size() != 1)
                    throw Error(cls + "::get." + shared->fields[i].name + " expects: object");
                Value obj = ctx.args[0]; // conversion sticks to the shared cell
                const NativeInstance& inst = value_to_native(ctx.registry, obj, type);
                return shared->fields[i].get(ctx.registry.heap(), inst);
            });
        }
        if (f.set) {
            r.register_command(cls + "::set." + f.name, [cls, type, shared, i](CallContext& ctx) {
                if (ctx.args.size() != 2)
                    throw Error(cls + "::set." + shared->fields[i].name +
                                " expects: objectVar value");
                Value& slot = ctx.env.binding(ctx.args[0].to_text());
                value_to_native(ctx.registry, slot, type);
                NativeInstance& inst = slot.native_detach(); // duplicate-on-shared
                shared->fields[i].set(inst, ctx.args[1]);
                return Value();
            });
        }
    }
    for (std::size_t i = 0; i < shared->methods.size(); ++i) {
        r.register_command(cls + "::" + shared->methods[i].name,
                           [cls, type, shared, i](CallContext& ctx) {
                               if (ctx.args.empty())
                                   throw Error(cls + "::" + shared->methods[i].name +
                                               " expects the object first");
                               Value obj = ctx.args[0];
                               const NativeInstance& inst =
                                   value_to_native(ctx.registry, obj, type);
                               return shared->methods[i].call(ctx.registry.heap(), inst,
                                                              ctx.args.subspan(1));
                           });
    }
}

} // namespace voo
