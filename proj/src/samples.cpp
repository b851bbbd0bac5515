#include "voo/samples.hpp"

#include <cmath>

#include "voo/class_dsl.hpp"

namespace voo::samples {

std::string_view person_source() {
    return R"(voo::class Person {
    public {
        string_t name "unknown"
        int_t age 0
        double_t salary 50000.0
    }

    method greet {} {
        return "Hello, I'm [get.name $this]"
    }
}
)";
}

std::string_view point_source() {
    return R"(voo::class Point {
    public {
        double_t x 0.0
        double_t y 0.0
        string_t name "point"
        int_t -static count 0
    }

    method distance {} {
        set dx [get.x $this]; set dy [get.y $this]
        return [expr {sqrt($dx*$dx + $dy*$dy)}]
    }
}
)";
}

std::string_view bench_point_source() {
    return R"(voo::class VooPoint {
    public {
        double_t x 0.0
        double_t y 0.0
        string_t name "point"
        int_t id 0
        bool_t active 1
    }

    method distance {} {
        set dx [get.x $this]
        set dy [get.y $this]
        return [expr {sqrt($dx * $dx + $dy * $dy)}]
    }
}
)";
}

std::string_view shapes_source() {
    return R"(voo::class Shape -virtual {
    public {
        double_t radius 1.0
    }

    method area -virtual {} { return 0.0 }
}

voo::class Circle -extends Shape {
    method area -override {} {
        return [expr {3.14159 * [get.radius $this] ** 2}]
    }
}

voo::class ColoredCircle -extends Circle {
    public {
        string_t color "red"
    }

    method area -override {} {
        set base [Circle::base.area $this]
        return [expr {$base * 1.1}]
    }
}
)";
}

namespace {

MethodBody distance_body() {
    return [](MethodContext& mc) {
        double dx = get_field(mc.cls, "x", mc.self).as_double();
        double dy = get_field(mc.cls, "y", mc.self).as_double();
        return mc.registry.heap().make_double(std::sqrt(dx * dx + dy * dy));
    };
}

} // namespace

std::shared_ptr<CompiledClass> install_person(Registry& r) {
    auto cls = compile_class(r, parse_class(r.heap(), person_source()));
    bind_method(r, "Person", "greet", [](MethodContext& mc) {
        std::string name(get_field(mc.cls, "name", mc.self).to_text());
        return mc.registry.heap().make_text("Hello, I'm " + name);
    });
    return cls;
}

std::shared_ptr<CompiledClass> install_point(Registry& r) {
    auto cls = compile_class(r, parse_class(r.heap(), point_source()));
    bind_method(r, "Point", "distance", distance_body());
    return cls;
}

std::shared_ptr<CompiledClass> install_bench_point(Registry& r) {
    auto cls = compile_class(r, parse_class(r.heap(), bench_point_source()));
    bind_method(r, "VooPoint", "distance", distance_body());
    return cls;
}

void install_shapes(Registry& r) {
    for (ClassDecl& decl : parse_declarations(r.heap(), shapes_source()))
        compile_class(r, decl);
    bind_method(r, "Shape", "area", [](MethodContext& mc) {
        return mc.registry.heap().make_double(0.0);
    });
    bind_method(r, "Circle", "area", [](MethodContext& mc) {
        double radius = get_field(mc.cls, "radius", mc.self).as_double();
        return mc.registry.heap().make_double(3.14159 * radius * radius);
    });
    bind_method(r, "ColoredCircle", "area", [](MethodContext& mc) {
        Value base = base_call(mc.registry, mc.registry.class_at("Circle"), "area", mc.self, {},
                               mc.env);
        return mc.registry.heap().make_double(base.as_double() * 1.1);
    });
}

} // namespace voo::samples
