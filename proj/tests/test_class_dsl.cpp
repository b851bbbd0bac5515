#include <doctest.h>

#include "support/oracles.hpp"
#include "voo/class_compiler.hpp"
#include "voo/class_dsl.hpp"
#include "voo/registry.hpp"
#include "voo/samples.hpp"

using namespace voo;
using namespace voo::testing;

TEST_CASE("the Person listing parses into three public fields and a method") {
    Heap heap;
    ClassDecl d = parse_class(heap, samples::person_source());
    CHECK(d.name == "Person");
    CHECK_FALSE(d.parent);
    CHECK_FALSE(d.is_virtual);
    REQUIRE(d.fields.size() == 3);
    CHECK(d.fields[0].type == FieldType::String);
    CHECK(d.fields[0].name == "name");
    CHECK(d.fields[0].default_value.to_text() == "unknown");
    CHECK(d.fields[0].visibility == Visibility::Public);
    CHECK(d.fields[1].type == FieldType::Int);
    CHECK(d.fields[1].default_value.as_int() == 0);
    CHECK(d.fields[2].type == FieldType::Double);
    CHECK(d.fields[2].default_value.as_double() == 50000.0);
    REQUIRE(d.methods.size() == 1);
    CHECK(d.methods[0].name == "greet");
    CHECK(d.methods[0].params.empty());
    CHECK(contains(d.methods[0].body_text, "Hello, I'm [get.name $this]"));
}

TEST_CASE("the five-field benchmark point parses") {
    Heap heap;
    ClassDecl d = parse_class(heap, samples::bench_point_source());
    CHECK(d.name == "VooPoint");
    REQUIRE(d.fields.size() == 5);
    CHECK(d.fields[0].name == "x");
    CHECK(d.fields[1].name == "y");
    CHECK(d.fields[2].name == "name");
    CHECK(d.fields[2].default_value.to_text() == "point");
    CHECK(d.fields[3].name == "id");
    CHECK(d.fields[4].name == "active");
    CHECK(d.fields[4].type == FieldType::Bool);
    CHECK(d.fields[4].default_value.as_bool());
    REQUIRE(d.methods.size() == 1);
    CHECK(d.methods[0].name == "distance");
}

TEST_CASE("every corpus listing parses") {
    Heap heap;
    CHECK(parse_declarations(heap, samples::person_source()).size() == 1);
    CHECK(parse_declarations(heap, samples::point_source()).size() == 1);
    CHECK(parse_declarations(heap, samples::bench_point_source()).size() == 1);
    std::vector<ClassDecl> shapes = parse_declarations(heap, samples::shapes_source());
    REQUIRE(shapes.size() == 3);
    CHECK(shapes[0].name == "Shape");
    CHECK(shapes[0].is_virtual);
    CHECK(shapes[1].name == "Circle");
    REQUIRE(shapes[1].parent);
    CHECK(*shapes[1].parent == "Shape");
    CHECK(shapes[1].methods[0].is_override);
    CHECK(shapes[2].name == "ColoredCircle");
}

TEST_CASE("parsing is pure: same source, same structure") {
    Heap heap;
    ClassDecl a = parse_class(heap, samples::point_source());
    ClassDecl b = parse_class(heap, samples::point_source());
    CHECK(a.name == b.name);
    REQUIRE(a.fields.size() == b.fields.size());
    for (std::size_t i = 0; i < a.fields.size(); ++i) {
        CHECK(a.fields[i].name == b.fields[i].name);
        CHECK(a.fields[i].type == b.fields[i].type);
        CHECK(a.fields[i].is_static == b.fields[i].is_static);
        CHECK(a.fields[i].default_value.to_text() == b.fields[i].default_value.to_text());
    }
    REQUIRE(a.methods.size() == b.methods.size());
    for (std::size_t i = 0; i < a.methods.size(); ++i) {
        CHECK(a.methods[i].name == b.methods[i].name);
        CHECK(a.methods[i].body_text == b.methods[i].body_text);
    }
}

TEST_CASE("static fields and class options") {
    Heap heap;
    ClassDecl d = parse_class(heap, samples::point_source());
    REQUIRE(d.fields.size() == 4);
    CHECK(d.fields[3].name == "count");
    CHECK(d.fields[3].is_static);
    CHECK(d.fields[3].type == FieldType::Int);

    ClassDecl v = parse_class(heap, "voo::class A -virtual { public { int_t n 0 } }");
    CHECK(v.is_virtual);
    ClassDecl e = parse_class(heap, "voo::class B -extends A -virtual {}");
    CHECK(e.is_virtual);
    REQUIRE(e.parent);
    CHECK(*e.parent == "A");
}

TEST_CASE("both -virtual method orders are accepted") {
    Heap heap;
    ClassDecl before = parse_class(heap,
        "voo::class S -virtual { method area -virtual {} { return 0.0 } }");
    CHECK(before.methods[0].is_virtual);
    ClassDecl after = parse_class(heap,
        "voo::class S -virtual { method area {} -virtual { return 0.0 } }");
    CHECK(after.methods[0].is_virtual);
    CHECK(before.methods[0].body_text == after.methods[0].body_text);
}

TEST_CASE("method modifiers") {
    Heap heap;
    ClassDecl d = parse_class(heap, R"(voo::class M {
    method a {} -static { body }
    method b {} -upvar { body }
    method c {x y} -update {f g} { body }
    private {
        method hidden {} { body }
    }
})");
    CHECK(d.methods[0].is_static);
    CHECK(d.methods[1].is_upvar);
    CHECK(d.methods[2].update_fields == std::vector<std::string>{"f", "g"});
    CHECK(d.methods[2].params == std::vector<std::string>{"x", "y"});
    CHECK(d.methods[3].visibility == Visibility::Private);
}

TEST_CASE("constructor and importMethods clauses") {
    Heap heap;
    ClassDecl d = parse_class(heap, R"(voo::class C {
    public { int_t n 0 }
    constructor {args} { return [list 1] }
    importMethods {greet walk}
})");
    REQUIRE(d.custom_constructor);
    CHECK(d.custom_constructor->params == std::vector<std::string>{"args"});
    CHECK(contains(d.custom_constructor->body_text, "return [list 1]"));
    CHECK(d.imports == std::vector<std::string>{"greet", "walk"});
}

TEST_CASE("comments and bracketed defaults") {
    Heap heap;
    ClassDecl d = parse_class(heap, R"(voo::class K {
    # a comment line
    public {
        # another comment
        list_t items [list]
        dict_t data [dict create]
        obj_t nested {}
        list_t pair {a b}
        dict_t tbl {k1 v1 k2 v2}
    }
})");
    CHECK(d.fields[0].default_value.list_length() == 0);
    CHECK(d.fields[1].default_value.dict_size() == 0);
    CHECK(d.fields[2].default_value.to_text() == "");
    CHECK(d.fields[3].default_value.list_length() == 2);
    CHECK(d.fields[4].default_value.dict_size() == 2);
    CHECK(d.fields[4].default_value.dict_find("k2")->to_text() == "v2");
}

TEST_CASE("parse errors carry line numbers") {
    Heap heap;

    std::string unknown_tag =
        error_of([&] { (void)parse_class(heap, "voo::class T {\n public {\n  float_t x 0\n }\n}"); });
    CHECK(contains(unknown_tag, "unknown field type tag 'float_t'"));
    CHECK(contains(unknown_tag, "line 3"));

    CHECK(contains(error_of([&] {
                       (void)parse_class(heap, "voo::class T { public { int_t x } }");
                   }),
                   "field 'x' missing default value"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap,
                                          "voo::class T { public { int_t x\nstring_t y \"a\" } }");
                   }),
                   "field 'x' missing default value"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap, "voo::class T { method m -bogus {} {} }");
                   }),
                   "unknown method modifier '-bogus'"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap, "voo::class T { method m -update {} {} }");
                   }),
                   "-update requires a field list"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap,
                                          "voo::class T { public { int_t x 0 int_t x 1 } }");
                   }),
                   "duplicate field name 'x'"));
    CHECK(contains(error_of([&] { (void)parse_class(heap, "voo::class T { public { int_t"); }),
                   "unbalanced brace"));
    CHECK(contains(error_of([&] { (void)parse_class(heap, "voo::class T -wat {}"); }),
                   "unknown class option '-wat'"));
    CHECK(contains(error_of([&] { (void)parse_class(heap, "notaclass T {}"); }),
                   "expected 'voo::class'"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap, "voo::class T { int_t x 0 }");
                   }),
                   "must appear inside a public or private block"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap,
                                          "voo::class T { method m {} {} method m {} {} }");
                   }),
                   "duplicate method name 'm'"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap,
                                          "voo::class T { method m -virtual -static {} {} }");
                   }),
                   "mutually exclusive"));
    CHECK(contains(error_of([&] {
                       (void)parse_class(heap,
                                          "voo::class T { method m -virtual -override {} {} }");
                   }),
                   "mutually exclusive"));
}

TEST_CASE("validate_decl checks ancestry rules against the registry") {
    Registry r;
    samples::install_shapes(r);
    samples::install_person(r);
    Heap& heap = r.heap();

    // -override with an existing ancestor method is fine
    ClassDecl ok = parse_class(heap,
        "voo::class Disc -extends Shape { method area -override {} { return 1.0 } }");
    CHECK_NOTHROW(validate_decl(ok, r));

    ClassDecl bad_override = parse_class(heap,
        "voo::class D2 -extends Shape { method warp -override {} { return 1.0 } }");
    CHECK(contains(error_of([&] { validate_decl(bad_override, r); }),
                   "override method 'warp' not found on any ancestor"));

    ClassDecl bad_import =
        parse_class(heap, "voo::class P2 -extends Person { importMethods {nonexistent} }");
    CHECK(contains(error_of([&] { validate_decl(bad_import, r); }),
                   "unknown parent method 'nonexistent'"));

    ClassDecl good_import =
        parse_class(heap, "voo::class P3 -extends Person { importMethods {greet} }");
    CHECK_NOTHROW(validate_decl(good_import, r));

    ClassDecl bad_virtual =
        parse_class(heap, "voo::class NV { method m -virtual {} { return 0 } }");
    CHECK(contains(error_of([&] { validate_decl(bad_virtual, r); }),
                   "virtual method 'm' declared in non-virtual class"));

    ClassDecl orphan = parse_class(heap, "voo::class O -extends Nowhere {}");
    CHECK(contains(error_of([&] { validate_decl(orphan, r); }),
                   "parent class 'Nowhere' not found"));

    ClassDecl shadow = parse_class(heap,
        "voo::class S2 -extends Shape { public { double_t radius 2.0 } }");
    CHECK(contains(error_of([&] { validate_decl(shadow, r); }),
                   "field 'radius' is already declared by an ancestor"));
}
