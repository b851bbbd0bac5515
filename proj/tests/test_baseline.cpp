#include <doctest.h>

#include "support/oracles.hpp"
#include "voo/baseline.hpp"
#include "voo/class_compiler.hpp"
#include "voo/registry.hpp"
#include "voo/samples.hpp"

using namespace voo;
using namespace voo::testing;

namespace {

HandleClass two_field_class(Heap& heap) {
    HandleClass cls;
    cls.name = "Pair";
    cls.fields = {"a", "b"};
    cls.defaults = {heap.make_int(0), heap.make_int(0)};
    return cls;
}

} // namespace

TEST_CASE("create, read, write, destroy") {
    Heap heap;
    HandleTable t(&heap.ledger());
    t.register_class(two_field_class(heap));

    std::string h = t.create("Pair", std::vector<Value>{heap.make_int(1), heap.make_int(2)});
    CHECK(t.live_count() == 1);
    CHECK(t.get(h, "a").as_int() == 1);
    t.set(h, "b", heap.make_int(9));
    CHECK(t.get(h, "b").as_int() == 9);

    std::string h2 = t.create_default("Pair");
    CHECK(h != h2);
    CHECK(t.live_count() == 2);
    CHECK(t.get(h2, "a").as_int() == 0);

    t.destroy(h);
    t.destroy(h2);
    CHECK(t.live_count() == 0);
}

TEST_CASE("dangling handles and double destroy") {
    Heap heap;
    HandleTable t(&heap.ledger());
    t.register_class(two_field_class(heap));
    std::string h = t.create_default("Pair");
    t.destroy(h);
    CHECK(contains(error_of([&] { (void)t.get(h, "a"); }), "does not name a live object"));
    CHECK(contains(error_of([&] { t.destroy(h); }), "does not name a live object"));
    CHECK(contains(error_of([&] { t.set(h, "a", heap.make_int(1)); }),
                   "does not name a live object"));

    // arity and field errors
    CHECK(contains(error_of([&] { (void)t.create("Pair", std::vector<Value>{heap.make_int(1)}); }),
                   "expects 2 values, got 1"));
    std::string live = t.create_default("Pair");
    CHECK(contains(error_of([&] { (void)t.get(live, "zzz"); }), "has no field 'zzz'"));
    CHECK(contains(error_of([&] { (void)t.create("Nope", {}); }), "unknown handle class"));
}

TEST_CASE("aliased handles share one object; value objects do not") {
    Heap heap;
    HandleTable t(&heap.ledger());
    t.register_class(two_field_class(heap));

    std::string h1 = t.create("Pair", std::vector<Value>{heap.make_int(5), heap.make_int(6)});
    std::string h2 = h1; // copying the handle text aliases the same object
    t.set(h2, "a", heap.make_int(42));
    CHECK(t.get(h1, "a").as_int() == 42); // reference semantics

    // the value runtime run side by side: the alias keeps the old contents
    Registry r;
    Environment env;
    auto point = samples::install_point(r);
    env.set("p1", construct_default(*point));
    env.set("p2", env.get("p1"));
    set_field(*point, "x", "p2", env, r.heap().make_double(42.0));
    CHECK(get_field(*point, "x", env.get("p1")).as_double() == 0.0);
    CHECK(get_field(*point, "x", env.get("p2")).as_double() == 42.0);
}

TEST_CASE("omitted destroys leak; destroys drain the table") {
    Heap heap;
    HandleTable t(&heap.ledger());
    t.register_class(two_field_class(heap));

    std::vector<std::string> handles;
    for (int i = 0; i < 1000; ++i)
        handles.push_back(t.create_default("Pair"));
    CHECK(t.live_count() == 1000); // nothing reclaims them

    for (const std::string& h : handles) t.destroy(h);
    CHECK(t.live_count() == 0);
}

TEST_CASE("handles are never reused within a table's lifetime") {
    Heap heap;
    HandleTable t(&heap.ledger());
    t.register_class(two_field_class(heap));
    std::string h1 = t.create_default("Pair");
    t.destroy(h1);
    std::string h2 = t.create_default("Pair");
    CHECK(h1 != h2);
}

TEST_CASE("a handle object costs strictly more than the equivalent value object") {
    Heap heap;
    HandleTable t(&heap.ledger());
    t.register_class(two_field_class(heap));

    std::uint64_t before = heap.ledger().live_bytes();
    std::vector<Value> vals{heap.make_int(1), heap.make_int(2)};
    std::string h = t.create("Pair", vals);
    std::uint64_t handle_cost = heap.ledger().live_bytes() - before;

    Value obj = heap.make_list({heap.make_int(1), heap.make_int(2)});
    std::uint64_t value_cost = footprint_bytes(obj);
    CHECK(handle_cost > value_cost);
    (void)h;
}

TEST_CASE("destroy and table teardown release ledger bytes") {
    Heap heap;
    std::uint64_t baseline = heap.ledger().live_bytes();
    {
        HandleTable t(&heap.ledger());
        t.register_class(two_field_class(heap));
        std::string h = t.create_default("Pair");
        CHECK(heap.ledger().live_bytes() > baseline);
        t.destroy(h);
        t.create_default("Pair"); // leaked on purpose: teardown must reclaim it
    }
    CHECK(heap.ledger().live_bytes() == baseline);
}
