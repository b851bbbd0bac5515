#include "voo/class_compiler.hpp"

#include <sstream>

namespace voo {

// ------------------------------------------------------------ CompiledClass

std::size_t CompiledClass::index_of(std::string_view field) const {
    auto it = index_of_.find(std::string(field));
    if (it == index_of_.end())
        throw Error("unknown field '" + std::string(field) + "' on class '" + name_ + "'");
    return it->second;
}

const FieldDecl& CompiledClass::field_decl(std::string_view field) const {
    auto it = field_decls_.find(std::string(field));
    if (it == field_decls_.end())
        throw Error("unknown field '" + std::string(field) + "' on class '" + name_ + "'");
    return it->second;
}

bool CompiledClass::has_static(std::string_view name) const {
    return statics_.count(std::string(name)) > 0;
}

Value CompiledClass::static_get(std::string_view name) const {
    auto it = statics_.find(std::string(name));
    if (it == statics_.end())
        throw Error("unknown static field '" + std::string(name) + "' on class '" + name_ + "'");
    return it->second;
}

void CompiledClass::static_set(std::string_view name, Value v) {
    auto it = statics_.find(std::string(name));
    if (it == statics_.end())
        throw Error("unknown static field '" + std::string(name) + "' on class '" + name_ + "'");
    it->second = std::move(v);
}

std::shared_ptr<MethodBinding> CompiledClass::find_method(std::string_view name) const {
    auto it = methods_.find(std::string(name));
    return it == methods_.end() ? nullptr : it->second;
}

// ------------------------------------------------------------ helpers

namespace {

// Private members live under a "my." prefix; this is naming convention,
// not enforcement.
std::string member_key(const MethodDecl& m) {
    return m.visibility == Visibility::Private ? "my." + m.name : m.name;
}

std::string field_prefix(const FieldDecl& f) {
    return f.visibility == Visibility::Private ? "my." : "";
}

std::string base_name_of(const std::string& key) {
    if (key.rfind("my.", 0) == 0) return "my.base." + key.substr(3);
    return "base." + key;
}

std::string cmd_name(const std::string& cls, std::string_view tail) {
    return cls + "::" + std::string(tail);
}

void check_arity(const std::string& what, std::span<const Value> args, std::size_t expected) {
    if (args.size() != expected)
        throw Error(what + " expects " + std::to_string(expected) + " argument(s), got " +
                    std::to_string(args.size()));
}

struct FrameGuard {
    Environment& env;
    explicit FrameGuard(Environment& e) : env(e) { env.push_frame(); }
    ~FrameGuard() { env.pop_frame(); }
};

// Apply a method's calling convention and run its bound body.
Value run_binding(Registry& r, const CompiledClass& cls, const MethodBinding& binding,
                  std::span<const Value> args, Environment& env) {
    const MethodDecl& d = binding.decl;
    const std::string display = cls.name() + "::" + member_key(d);
    if (!binding.body)
        throw Error("method '" + member_key(d) + "' on class '" + cls.name() +
                    "' has no bound body");

    if (!d.update_fields.empty()) {
        // -update: object arrives by variable name; every listed field is
        // detached into a like-named local for the body's duration.
        if (args.empty()) throw Error(display + " expects the object variable name first");
        std::string var = args[0].to_text();
        std::span<const Value> rest = args.subspan(1);
        FrameGuard frame(env);
        std::function<Value(std::size_t)> step = [&](std::size_t i) -> Value {
            if (i == d.update_fields.size()) {
                MethodContext mc{r, env, cls, Value(), var, rest};
                return binding.body(mc);
            }
            const std::string& field = d.update_fields[i];
            Value out;
            update_field(cls, field, var, env, [&](Value& temp) {
                env.set_local(field, temp);
                try {
                    out = step(i + 1);
                    temp = env.get(field);
                } catch (...) {
                    temp = env.get(field);
                    throw;
                }
            }, Access::Private);
            return out;
        };
        return step(0);
    }

    if (d.is_static) {
        MethodContext mc{r, env, cls, Value(), std::string(), args};
        return binding.body(mc);
    }
    if (d.is_upvar) {
        if (args.empty()) throw Error(display + " expects the object variable name first");
        MethodContext mc{r, env, cls, Value(), args[0].to_text(), args.subspan(1)};
        return binding.body(mc);
    }
    if (args.empty()) throw Error(display + " expects the object first");
    MethodContext mc{r, env, cls, args[0], std::string(), args.subspan(1)};
    return binding.body(mc);
}

} // namespace

// ------------------------------------------------------------ operations

Value construct_positional(Registry& r, const CompiledClass& c, std::span<const Value> vals) {
    if (vals.size() != c.field_count())
        throw Error(c.name() + "::new expects " + std::to_string(c.field_count()) +
                    " arguments, got " + std::to_string(vals.size()));
    std::vector<Value> elems;
    elems.reserve(c.instance_length());
    if (c.is_virtual()) elems.push_back(c.class_tag());
    for (const Value& v : vals) elems.push_back(v);
    return r.heap().make_list(std::move(elems));
}

Value construct_default(const CompiledClass& c) {
    return c.default_object();
}

Value construct_named(Registry& r, const CompiledClass& c, std::span<const Value> args) {
    (void)r;
    if (args.size() % 2 != 0)
        throw Error("Constructor argument must be a list of '-<field> <value>' pairs");
    Value obj = c.default_object();
    for (std::size_t i = 0; i < args.size(); i += 2) {
        const std::string& key = args[i].to_text();
        if (key.empty() || key[0] != '-')
            throw Error("Constructor argument keys must start with '-', got '" + key + "'");
        std::string field = key.substr(1);
        // Public setter first, my.set.<field> fallback: either way the
        // write lands on the compiled slot.
        if (!c.has_field(field)) throw Error("Unknown field option: " + field);
        obj.list_set(c.index_of(field), args[i + 1]);
    }
    return obj;
}

namespace {

const FieldDecl& checked_field(const CompiledClass& c, std::string_view field, Access access) {
    const FieldDecl& fd = c.field_decl(field);
    if (fd.is_static)
        throw Error("field '" + std::string(field) + "' on class '" + c.name() +
                    "' is static; use the class accessors");
    if (fd.visibility == Visibility::Private && access == Access::Public)
        throw Error("field '" + std::string(field) + "' of class '" + c.name() + "' is private");
    return fd;
}

} // namespace

Value get_field(const CompiledClass& c, std::string_view field, const Value& obj, Access access) {
    checked_field(c, field, access);
    return obj.list_at(c.index_of(field));
}

void set_field(const CompiledClass& c, std::string_view field, std::string_view var,
               Environment& env, Value v, Access access) {
    checked_field(c, field, access);
    Value& slot = env.binding(var);
    slot.list_set(c.index_of(field), std::move(v));
}

void update_field(const CompiledClass& c, std::string_view field, std::string_view var,
                  Environment& env, const std::function<void(Value&)>& body, Access access) {
    checked_field(c, field, access);
    std::size_t idx = c.index_of(field);
    Value temp;
    {
        Value& slot = env.binding(var);
        temp = slot.list_at(idx);
        slot.list_set(idx, Value()); // detached-slot sentinel: the empty value
    }
    // The binding is re-resolved for reattachment: the body may have grown
    // the frame map and invalidated the old reference.
    try {
        body(temp);
    } catch (...) {
        env.binding(var).list_set(idx, std::move(temp));
        throw;
    }
    env.binding(var).list_set(idx, std::move(temp));
}

namespace {

const CompiledClass* class_from_tag(Registry& r, const Value& obj) {
    const Value& tag = obj.list_at(0);
    Kind k = tag.kind();
    if (k != Kind::Atom && k != Kind::Text)
        throw Error("cannot dispatch: object tag slot is not a class name");
    std::string_view text = tag.text_payload();
    std::string_view name = text;
    if (name.rfind("::", 0) == 0) name.remove_prefix(2);
    auto cls = r.find_class(name);
    if (!cls)
        throw Error("cannot dispatch: class tag '" + std::string(text) + "' is not registered");
    return cls.get();
}

} // namespace

Value base_call(Registry& r, const CompiledClass& c, std::string_view method, const Value& obj,
                std::span<const Value> args, Environment& env) {
    auto binding = c.find_method(method);
    if (!binding)
        throw Error("unknown method '" + std::string(method) + "' on class '" + c.name() + "'");
    if (!c.virtual_methods().count(std::string(method)))
        throw Error("base call: method '" + std::string(method) + "' is not virtual on class '" +
                    c.name() + "'");
    if (!binding->body)
        throw Error("method '" + std::string(method) + "' on class '" + c.name() +
                    "' has no bound body");
    std::vector<Value> full;
    full.reserve(args.size() + 1);
    full.push_back(obj);
    for (const Value& a : args) full.push_back(a);
    return run_binding(r, c, *binding, full, env);
}

Value dispatch_virtual(Registry& r, const CompiledClass& base, std::string_view method,
                       const Value& obj, std::span<const Value> args, Environment& env) {
    if (!base.virtual_methods().count(std::string(method)))
        throw Error("method '" + std::string(method) + "' is not virtual on class '" +
                    base.name() + "'");
    const CompiledClass* target = class_from_tag(r, obj);
    const CompiledClass* run_on = &base;
    if (target != &base) {
        auto binding = target->find_method(method);
        if (binding && binding->body) run_on = target;
    }
    return base_call(r, *run_on, method, obj, args, env);
}

// ------------------------------------------------------------ compile

void import_methods(Registry& r, CompiledClass& c, std::span<const std::string> names) {
    auto self = r.find_class(c.name());
    if (!self || self.get() != &c)
        throw Error("importMethods: class '" + c.name() + "' is not registered");
    const CompiledClass* parent = c.parent();
    for (const std::string& name : names) {
        if (!parent) throw Error("importMethods: class '" + c.name() + "' has no parent");
        auto binding = parent->find_method(name);
        if (!binding) throw Error("importMethods: unknown parent method '" + name + "'");
        if (binding->decl.visibility == Visibility::Private)
            throw Error("importMethods: method '" + name + "' on '" + parent->name() +
                        "' is private");
        auto existing = c.methods_.find(name);
        if (existing != c.methods_.end()) {
            if (existing->second == binding) continue; // inherited already, idempotent
            throw Error("importMethods: class '" + c.name() + "' already defines method '" +
                        name + "'");
        }
        c.methods_[name] = binding;
        r.register_command(cmd_name(c.name(), name), [self, binding](CallContext& ctx) {
            return run_binding(ctx.registry, *self, *binding, ctx.args, ctx.env);
        });
    }
}

std::shared_ptr<CompiledClass> compile_class(Registry& r, const ClassDecl& decl) {
    validate_decl(decl, r);
    if (r.find_class(decl.name) && !r.allow_replace())
        throw Error("class '" + decl.name + "' already defined");
    if (decl.parent) {
        auto parent = r.find_class(*decl.parent);
        if (decl.is_virtual && parent && !parent->is_virtual())
            throw Error("class '" + decl.name + "' cannot add -virtual below non-virtual parent '" +
                        *decl.parent + "'");
    }

    auto c = std::make_shared<CompiledClass>();
    c->name_ = decl.name;
    c->tag_text_ = "::" + decl.name;
    if (decl.parent) c->parent_ = r.find_class(*decl.parent);
    c->is_virtual_ = decl.is_virtual || (c->parent_ && c->parent_->is_virtual());

    // Field layout: parent slots verbatim, own fields continue sequentially;
    // a virtual lineage keeps slot 0 for the interned class tag.
    std::vector<Value> defaults;
    std::size_t next_index = 0;
    if (c->parent_) {
        const CompiledClass& p = *c->parent_;
        c->index_of_ = p.index_of_;
        c->field_order_ = p.field_order_;
        for (const std::string& f : p.field_order_) c->field_decls_[f] = p.field_decl(f);
        const Value& pd = p.default_object();
        for (std::size_t i = 0; i < pd.list_length(); ++i) defaults.push_back(pd.list_at(i));
        next_index = pd.list_length();
    } else if (c->is_virtual_) {
        defaults.emplace_back();
        next_index = 1;
    }
    if (c->is_virtual_) {
        c->tag_ = r.intern(c->tag_text_);
        defaults[0] = c->tag_;
    }
    for (const FieldDecl& f : decl.fields) {
        if (f.is_static) {
            c->statics_[f.name] = f.default_value;
            c->static_order_.push_back(f.name);
            c->field_decls_[f.name] = f;
            continue;
        }
        c->index_of_[f.name] = next_index++;
        c->field_order_.push_back(f.name);
        c->field_decls_[f.name] = f;
        defaults.push_back(f.default_value);
    }
    c->default_object_ = r.heap().make_list(std::move(defaults));

    // Methods: virtual machinery is inherited (shared bindings), own
    // declarations add or override; an -override of a virtual method is
    // auto-promoted to a dispatcher.
    if (c->parent_) {
        c->virtual_methods_ = c->parent_->virtual_methods_;
        for (const std::string& vm : c->virtual_methods_)
            c->methods_[vm] = c->parent_->methods_.at(vm);
    }
    for (const MethodDecl& m : decl.methods) {
        std::string key = member_key(m);
        auto binding = std::make_shared<MethodBinding>();
        binding->decl = m;
        c->methods_[key] = binding;
        c->method_order_.push_back(key);
        if (m.is_virtual || (m.is_override && c->virtual_methods_.count(key)))
            c->virtual_methods_.insert(key);
    }
    if (decl.custom_constructor) {
        MethodDecl ctor;
        ctor.name = "constructor";
        ctor.params = decl.custom_constructor->params;
        ctor.is_static = true;
        ctor.body_text = decl.custom_constructor->body_text;
        auto binding = std::make_shared<MethodBinding>();
        binding->decl = std::move(ctor);
        c->methods_["constructor"] = binding;
    }

    // Commands. Closures keep the class alive; a later redeclaration
    // replaces them wholesale.
    const std::string& n = c->name_;
    r.add_class(c);

    r.register_command(cmd_name(n, "new"), [c](CallContext& ctx) {
        return construct_positional(ctx.registry, *c, ctx.args);
    });
    r.register_command(cmd_name(n, "new()"), [c](CallContext& ctx) {
        check_arity(c->name() + "::new()", ctx.args, 0);
        return construct_default(*c);
    });
    r.register_command(cmd_name(n, "new.args"), [c](CallContext& ctx) {
        return construct_named(ctx.registry, *c, ctx.args);
    });

    for (const std::string& f : c->field_order_) {
        const FieldDecl& fd = c->field_decl(f);
        const std::string prefix = field_prefix(fd);
        const Access access = fd.visibility == Visibility::Private ? Access::Private
                                                                   : Access::Public;
        r.register_command(cmd_name(n, prefix + "get." + f), [c, f, access](CallContext& ctx) {
            check_arity(c->name() + "::get." + f, ctx.args, 1);
            return get_field(*c, f, ctx.args[0], access);
        });
        r.register_command(cmd_name(n, prefix + "set." + f), [c, f, access](CallContext& ctx) {
            check_arity(c->name() + "::set." + f, ctx.args, 2);
            set_field(*c, f, ctx.args[0].to_text(), ctx.env, ctx.args[1], access);
            return Value();
        });
        // update.<f> thisVar tempVar bodyCmd: the body is a registered
        // command observing/overwriting the caller-visible temp binding.
        r.register_command(cmd_name(n, prefix + "update." + f), [c, f, access](CallContext& ctx) {
            check_arity(c->name() + "::update." + f, ctx.args, 3);
            std::string var = ctx.args[0].to_text();
            std::string temp_var = ctx.args[1].to_text();
            std::string body_cmd = ctx.args[2].to_text();
            update_field(*c, f, var, ctx.env, [&](Value& temp) {
                ctx.env.set(temp_var, temp);
                try {
                    ctx.registry.invoke(body_cmd, ctx.env, {});
                    temp = ctx.env.get(temp_var);
                } catch (...) {
                    temp = ctx.env.get(temp_var);
                    throw;
                }
            }, access);
            return Value();
        });
    }

    for (const std::string& s : c->static_order_) {
        const FieldDecl& fd = c->field_decl(s);
        const std::string prefix = field_prefix(fd);
        r.register_command(cmd_name(n, prefix + "class.get." + s), [c, s](CallContext& ctx) {
            check_arity(c->name() + "::class.get." + s, ctx.args, 0);
            return c->static_get(s);
        });
        r.register_command(cmd_name(n, prefix + "class.set." + s), [c, s](CallContext& ctx) {
            check_arity(c->name() + "::class.set." + s, ctx.args, 1);
            c->static_set(s, ctx.args[0]);
            return Value();
        });
    }

    // Dispatchers and base bodies for every virtual method (own and
    // inherited), plain commands for everything else declared here.
    for (const std::string& key : c->virtual_methods_) {
        r.register_command(cmd_name(n, key), [c, key](CallContext& ctx) {
            if (ctx.args.empty())
                throw Error(c->name() + "::" + key + " expects the object first");
            return dispatch_virtual(ctx.registry, *c, key, ctx.args[0], ctx.args.subspan(1),
                                    ctx.env);
        });
        r.register_command(cmd_name(n, base_name_of(key)), [c, key](CallContext& ctx) {
            if (ctx.args.empty())
                throw Error(c->name() + "::" + base_name_of(key) + " expects the object first");
            return base_call(ctx.registry, *c, key, ctx.args[0], ctx.args.subspan(1), ctx.env);
        });
    }
    for (const std::string& key : c->method_order_) {
        if (c->virtual_methods_.count(key)) continue;
        auto binding = c->methods_.at(key);
        r.register_command(cmd_name(n, key), [c, binding](CallContext& ctx) {
            return run_binding(ctx.registry, *c, *binding, ctx.args, ctx.env);
        });
    }
    if (auto ctor = c->find_method("constructor")) {
        r.register_command(cmd_name(n, "constructor"), [c, ctor](CallContext& ctx) {
            return run_binding(ctx.registry, *c, *ctor, ctx.args, ctx.env);
        });
    }

    if (!decl.imports.empty()) import_methods(r, *c, decl.imports);
    return c;
}

// ------------------------------------------------------------ expand

namespace {

std::string render_literal(const Value& v) {
    switch (v.kind()) {
    case Kind::Text: {
        const std::string& t = v.to_text();
        return "\"" + t + "\"";
    }
    case Kind::Atom:
        return v.to_text();
    case Kind::List:
    case Kind::Dict:
        return "{" + v.to_text() + "}";
    default:
        return v.to_text();
    }
}

std::string params_for(const MethodDecl& m) {
    std::vector<std::string> params;
    if (!m.update_fields.empty() || m.is_upvar) params.push_back("thisVar");
    else if (!m.is_static) params.push_back("this");
    params.insert(params.end(), m.params.begin(), m.params.end());
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ' ';
        out += params[i];
    }
    return out;
}

} // namespace

std::string expand(const Registry& r, const ClassDecl& decl) {
    validate_decl(decl, r);
    std::shared_ptr<CompiledClass> parent =
        decl.parent ? r.find_class(*decl.parent) : nullptr;
    const bool is_virtual = decl.is_virtual || (parent && parent->is_virtual());

    struct Slot {
        std::string name;
        std::size_t index;
        std::string default_text;
        bool inherited;
        Visibility visibility;
    };
    std::vector<Slot> slots;
    std::size_t next = is_virtual ? 1 : 0;
    if (parent) {
        for (const std::string& f : parent->field_order()) {
            const FieldDecl& fd = parent->field_decl(f);
            slots.push_back({f, parent->index_of(f),
                             render_literal(parent->default_object().list_at(parent->index_of(f))),
                             true, fd.visibility});
        }
        next = parent->instance_length();
    }
    std::vector<const FieldDecl*> statics;
    for (const FieldDecl& f : decl.fields) {
        if (f.is_static) {
            statics.push_back(&f);
            continue;
        }
        slots.push_back({f.name, next++, render_literal(f.default_value), false, f.visibility});
    }

    std::ostringstream out;
    out << "namespace eval " << decl.name << " {\n";
    if (is_virtual)
        out << "    # Index 0 is permanently reserved for the class namespace tag.\n";
    for (const Slot& s : slots) {
        out << "    variable " << s.name << " " << s.index;
        if (s.inherited) out << " ;# same index as " << parent->name() << "::" << s.name;
        else if (is_virtual) out << " ;# field index = " << s.index;
        out << "\n";
    }
    out << "\n";
    out << "    variable __defaultObj [list";
    if (is_virtual) out << " ::" << decl.name;
    for (const Slot& s : slots) out << " " << s.default_text;
    out << "]\n";
    out << "    variable __fields [list";
    for (const Slot& s : slots) out << " " << s.name;
    out << "]\n";
    if (is_virtual) out << "    variable __voo_is_virtual_class 1\n";
    for (const FieldDecl* f : statics)
        out << "    variable " << f->name << " " << render_literal(f->default_value) << "\n";

    // Constructors
    out << "\n    proc new {";
    for (std::size_t i = 0; i < slots.size(); ++i) out << (i ? " " : "") << slots[i].name;
    out << "} { return [list";
    if (is_virtual) out << " ::" << decl.name;
    for (const Slot& s : slots) out << " $" << s.name;
    out << "] }\n";
    out << "\n    proc new() {} {\n"
           "        variable __defaultObj\n"
           "        return $__defaultObj\n"
           "    }\n";
    out << "\n    proc new.args {args} {\n"
           "        variable __defaultObj\n"
           "        set obj $__defaultObj\n"
           "        if {[catch {dict size $args}]} {\n"
           "            error \"Constructor argument must be a list of '-<field> <value>' pairs\"\n"
           "        }\n"
           "        dict for {key value} $args {\n"
           "            if {[string index $key 0] ne \"-\"} {\n"
           "                error \"Constructor argument keys must start with '-', got '$key'\"\n"
           "            }\n"
           "            set field [string range $key 1 end]\n"
           "            set setter set.$field\n"
           "            if {[info commands $setter] ne \"\"} {\n"
           "                $setter obj $value\n"
           "            } else {\n"
           "                set setter my.set.$field\n"
           "                if {[info commands $setter] ne \"\"} {\n"
           "                    $setter obj $value\n"
           "                } else {\n"
           "                    error \"Unknown field option: $field\"\n"
           "                }\n"
           "            }\n"
           "        }\n"
           "        return $obj\n"
           "    }\n";

    for (const Slot& s : slots) {
        const std::string p = s.visibility == Visibility::Private ? "my." : "";
        out << "\n    proc " << p << "get." << s.name << " {this} { variable " << s.name
            << "; return [lindex $this $" << s.name << "] }\n";
        out << "    proc " << p << "set." << s.name << " {thisVar value} {\n"
            << "        variable " << s.name << "\n"
            << "        upvar $thisVar this\n"
            << "        lset this $" << s.name << " $value\n"
            << "    }\n";
        out << "    proc " << p << "update." << s.name << " {thisVar tempVar body} {\n"
            << "        variable " << s.name << "\n"
            << "        upvar $thisVar this\n"
            << "        upvar $tempVar temp\n"
            << "        try {\n"
            << "            set temp [lindex $this $" << s.name << "]\n"
            << "            lset this $" << s.name << " {}\n"
            << "            uplevel $body\n"
            << "        } finally {\n"
            << "            lset this $" << s.name << " $temp\n"
            << "        }\n"
            << "    }\n";
    }

    for (const FieldDecl* f : statics) {
        const std::string p = f->visibility == Visibility::Private ? "my." : "";
        out << "\n    proc " << p << "class.get." << f->name << " {} { variable " << f->name
            << "; return $" << f->name << " }\n";
        out << "    proc " << p << "class.set." << f->name << " {value} { variable " << f->name
            << "; set " << f->name << " $value }\n";
    }

    for (const MethodDecl& m : decl.methods) {
        const std::string key =
            m.visibility == Visibility::Private ? "my." + m.name : m.name;
        bool dispatched = m.is_virtual;
        if (m.is_override && parent) {
            for (const CompiledClass* a = parent.get(); a; a = a->parent())
                if (a->virtual_methods().count(key)) {
                    dispatched = true;
                    break;
                }
        }
        if (dispatched) {
            const std::string base = key.rfind("my.", 0) == 0 ? "my.base." + key.substr(3)
                                                               : "base." + key;
            out << "\n    # " << base << " holds the original body for direct parent calls\n";
            out << "    proc " << base << " {" << params_for(m) << "} {" << m.body_text << "}\n";
            out << "\n    # " << key << " is a dispatcher\n";
            out << "    proc " << key << " {this} {\n"
                << "        set __voo_cls [lindex $this 0]\n"
                << "        if {$__voo_cls ne [namespace current] && \\\n"
                << "            [info commands ${__voo_cls}::" << key << "] ne {}} {\n"
                << "            return [${__voo_cls}::" << key << " $this]\n"
                << "        }\n"
                << "        return [" << base << " $this]\n"
                << "    }\n";
        } else {
            out << "\n    proc " << key << " {" << params_for(m) << "} {" << m.body_text << "}\n";
        }
    }

    if (decl.custom_constructor) {
        out << "\n    proc constructor {";
        const auto& ps = decl.custom_constructor->params;
        for (std::size_t i = 0; i < ps.size(); ++i) out << (i ? " " : "") << ps[i];
        out << "} {" << decl.custom_constructor->body_text << "}\n";
    }

    for (const std::string& imp : decl.imports)
        out << "\n    # importMethods: " << imp << " (inherited from "
            << (decl.parent ? *decl.parent : std::string("?")) << ")\n";

    out << "}\n";
    return out.str();
}

} // namespace voo
