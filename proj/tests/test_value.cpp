#include <doctest.h>

#include "support/oracles.hpp"
#include "voo/value.hpp"

using namespace voo;
using namespace voo::testing;

TEST_CASE("scalar text forms") {
    Heap heap;
    CHECK(heap.make_int(0).to_text() == "0");
    CHECK(heap.make_int(-42).to_text() == "-42");
    CHECK(heap.make_bool(true).to_text() == "1");
    CHECK(heap.make_bool(false).to_text() == "0");
    CHECK(heap.make_double(0.0).to_text() == "0.0");
    CHECK(heap.make_double(78.53975).to_text() == "78.53975");
    CHECK(heap.make_double(1e30).to_text() == "1e+30");
    CHECK(heap.make_text("point").to_text() == "point");
    CHECK(Value().to_text() == ""); // the empty value
}

TEST_CASE("format_double round-trips and marks doubles") {
    CHECK(format_double(1.0) == "1.0");
    CHECK(format_double(-3.5) == "-3.5");
    CHECK(format_double(0.1) == "0.1");
    std::string s = format_double(2.23606797749979);
    CHECK(std::stod(s) == 2.23606797749979);
}

TEST_CASE("list text form brace-quotes awkward elements") {
    Heap heap;
    Value plain = heap.make_list({heap.make_double(0.0), heap.make_double(0.0),
                                  heap.make_text("point")});
    CHECK(plain.to_text() == "0.0 0.0 point");

    Value spaced = heap.make_list({heap.make_text("a b"), heap.make_text("c")});
    CHECK(spaced.to_text() == "{a b} c");
    Value parsed = heap.parse_list(spaced.to_text());
    CHECK(text_equal(parsed, spaced));
    CHECK(parsed.list_length() == 2);
    CHECK(parsed.list_at(0).to_text() == "a b");

    Value empties = heap.make_list({heap.make_text(""), heap.make_text("x")});
    CHECK(empties.to_text() == "{} x");
}

TEST_CASE("parse_list") {
    Heap heap;
    Value five = heap.parse_list("1.0 2.0 test 1 1");
    CHECK(five.list_length() == 5);
    CHECK(five.list_at(0).as_double() == 1.0);
    CHECK(five.list_at(2).to_text() == "test");

    CHECK(heap.parse_list("").list_length() == 0);
    CHECK(heap.parse_list("   \t\n").list_length() == 0);

    Value braced = heap.parse_list("{a b} c");
    CHECK(braced.list_length() == 2);
    CHECK(braced.list_at(0).to_text() == "a b");
    CHECK(braced.list_at(1).to_text() == "c");

    CHECK(heap.parse_list("{{x y} z} w").list_at(0).to_text() == "{x y} z");

    CHECK_THROWS_AS((void)heap.parse_list("{a b"), ParseError);
    CHECK(contains(error_of([&] { (void)heap.parse_list("a } b"); }), "unbalanced brace"));
    try {
        (void)heap.parse_list("ab {cd");
    } catch (const ParseError& e) {
        CHECK(e.where() == 3);
    }
}

TEST_CASE("list_at bounds and agreement with a naive scan") {
    Heap heap;
    Value v = heap.make_list({heap.make_double(1.5), heap.make_double(2.5), heap.make_text("A")});
    CHECK(v.list_at(0).as_double() == 1.5);

    Value empty = heap.make_list({});
    CHECK(contains(error_of([&] { (void)empty.list_at(0); }), "index 0 out of range (length 0)"));
    CHECK(contains(error_of([&] { (void)heap.make_int(3).list_length(); }),
                   "expected a list value, got int"));

    std::mt19937_64 rng(test_seed());
    for (int trial = 0; trial < 50; ++trial) {
        int n = std::uniform_int_distribution<int>(0, 8)(rng);
        std::vector<Value> elems;
        for (int i = 0; i < n; ++i)
            elems.push_back(heap.make_int(std::uniform_int_distribution<int>(-99, 99)(rng)));
        std::vector<Value> copy = elems; // the naive scan keeps its own handles
        Value list = heap.make_list(std::move(elems));
        for (int i = 0; i < n; ++i) {
            CHECK(same_cell(list.list_at(i), copy[i]));
            CHECK(list.list_at(i).to_text() == copy[i].to_text());
        }
    }
}

TEST_CASE("list_set leaves other holders untouched") {
    Heap heap;
    Value p1 = heap.make_list({heap.make_int(0), heap.make_int(0)});
    Value p2 = p1;
    p2.list_set(0, heap.make_int(9));
    CHECK(p2.to_text() == "9 0");
    CHECK(p1.to_text() == "0 0");
    CHECK_FALSE(same_cell(p1, p2));
}

TEST_CASE("list_set on a sole holder mutates in place") {
    Heap heap;
    Value v = heap.make_list({heap.make_int(1), heap.make_int(2)});
    Value nine = heap.make_int(9);
    std::uint64_t allocs = heap.ledger().total_allocations();
    v.list_set(0, std::move(nine));
    CHECK(heap.ledger().total_allocations() == allocs); // no spine copy
    CHECK(v.to_text() == "9 2");
}

TEST_CASE("list_set errors") {
    Heap heap;
    Value v = heap.make_list({heap.make_int(1)});
    CHECK(contains(error_of([&] { v.list_set(3, heap.make_int(0)); }),
                   "index 3 out of range (length 1)"));
    Value d = heap.make_double(1.0);
    CHECK(contains(error_of([&] { d.list_set(0, heap.make_int(0)); }),
                   "expected a list value, got double"));

    // rewriting a slot with its own element is a no-op
    Value w = heap.make_list({heap.make_int(5), heap.make_text("x")});
    std::string before = w.to_text();
    w.list_set(1, w.list_at(1));
    CHECK(w.to_text() == before);
}

TEST_CASE("interning returns the identical cell") {
    Heap heap;
    Value a = heap.intern("::Shape");
    Value b = heap.intern("::Shape");
    CHECK(same_cell(a, b));
    CHECK(a.is_atom());
    CHECK(a.to_text() == "::Shape");

    Value empty = heap.intern("");
    CHECK(empty.is_atom());
    CHECK(empty.to_text() == "");
    CHECK(same_cell(empty, heap.intern("")));

    // one ledger allocation per distinct text, no matter how many holders
    Value first = heap.intern("::Circle");
    std::uint64_t allocs = heap.ledger().total_allocations();
    std::vector<Value> holders;
    holders.reserve(100000);
    for (int i = 0; i < 100000; ++i) holders.push_back(heap.intern("::Circle"));
    CHECK(heap.ledger().total_allocations() == allocs);
    for (const Value& h : holders)
        if (!same_cell(h, first)) FAIL("intern returned a different cell");
}

TEST_CASE("is_shared tracks the holder count") {
    Heap heap;
    Value v = heap.make_list({heap.make_int(1)});
    CHECK_FALSE(v.is_shared());
    CHECK(v.share_count() == 1);
    {
        Value other = v;
        CHECK(v.is_shared());
        CHECK(v.share_count() == 2);
    }
    CHECK_FALSE(v.is_shared()); // second holder dropped
}

TEST_CASE("footprint model") {
    using namespace footprint_model;
    Heap heap;
    CHECK(footprint_bytes(heap.make_list({})) == kCellHeader);

    for (std::size_t k : {std::size_t(1), std::size_t(3), std::size_t(7)}) {
        std::vector<Value> elems;
        for (std::size_t i = 0; i < k; ++i) elems.push_back(heap.make_int(1));
        Value list = heap.make_list(std::move(elems));
        CHECK(footprint_bytes(list) == kCellHeader + k * kSlot + k * (kCellHeader + kSlot));
    }

    // a shared atom is paid once across a population
    Value tag = heap.intern("::Circle");
    FootprintAccumulator population;
    std::uint64_t naive_sum = 0;
    std::vector<Value> objs;
    for (int i = 0; i < 1000; ++i) {
        Value obj = heap.make_list({tag, heap.make_int(i)});
        naive_sum += footprint_bytes(obj);
        population.add(obj);
        objs.push_back(std::move(obj));
    }
    std::uint64_t atom_bytes = footprint_bytes(tag);
    CHECK(population.total() == naive_sum - 999 * atom_bytes);
}

TEST_CASE("round-trip property against the independent renderer") {
    Heap heap;
    std::mt19937_64 rng(test_seed());
    for (int trial = 0; trial < 300; ++trial) {
        Node n = random_node(rng, 4);
        if (n.type != Node::Type::List) continue; // parse_list parses lists
        Value v = build_value(heap, n);
        std::string text = v.to_text();
        CHECK(text == oracle_render(n));
        Value back = heap.parse_list(text);
        CHECK(back.to_text() == text);
        CHECK(text_equal(back, v));
    }
}

TEST_CASE("copy-on-write soundness property") {
    Heap heap;
    std::mt19937_64 rng(test_seed() ^ 0xC0Full);
    for (int trial = 0; trial < 300; ++trial) {
        Node n = random_node(rng, 3);
        if (n.type != Node::Type::List || n.kids.empty()) continue;
        Value a = build_value(heap, n);
        Value b = a;
        std::string before = a.to_text();
        std::size_t i = std::uniform_int_distribution<std::size_t>(0, n.kids.size() - 1)(rng);
        b.list_set(i, heap.make_text("mutated"));
        CHECK(a.to_text() == before);
        CHECK(b.list_at(i).to_text() == "mutated");
    }
}

TEST_CASE("dicts keep insertion order and copy on write") {
    Heap heap;
    Value d = heap.make_dict({{"x", heap.make_int(1)}, {"y", heap.make_int(2)}});
    CHECK(d.to_text() == "x 1 y 2");
    CHECK(d.dict_size() == 2);
    REQUIRE(d.dict_find("y") != nullptr);
    CHECK(d.dict_find("y")->as_int() == 2);
    CHECK(d.dict_find("missing") == nullptr);

    Value alias = d;
    d.dict_set("x", heap.make_int(10));
    CHECK(d.to_text() == "x 10 y 2");
    CHECK(alias.to_text() == "x 1 y 2");

    std::uint64_t before = heap.ledger().live_bytes();
    d.dict_set("z", heap.make_int(3)); // unshared now: spine grows in place
    CHECK(d.to_text() == "x 10 y 2 z 3");
    CHECK(heap.ledger().live_bytes() ==
          before + 1 + 2 * footprint_model::kSlot +
              (footprint_model::kCellHeader + footprint_model::kSlot));

    Value quoted = heap.make_dict({{"k v", heap.make_text("a b")}});
    CHECK(quoted.to_text() == "{k v} {a b}");
}

TEST_CASE("text cache invalidation on mutation") {
    Heap heap;
    Value v = heap.make_list({heap.make_int(1)});
    CHECK(v.to_text() == "1");
    v.list_set(0, heap.make_int(2));
    CHECK(v.to_text() == "2");
}

TEST_CASE("coercing reads") {
    Heap heap;
    CHECK(heap.make_text("42").as_int() == 42);
    CHECK(heap.make_text("1.5").as_double() == 1.5);
    CHECK(heap.make_int(7).as_double() == 7.0);
    CHECK(heap.make_bool(true).as_int() == 1);
    CHECK(heap.make_text("true").as_bool());
    CHECK(heap.make_text("off").as_bool() == false);
    CHECK(heap.make_int(0).as_bool() == false);
    CHECK(contains(error_of([&] { (void)heap.make_text("abc").as_double(); }),
                   "expected a number"));
    CHECK(contains(error_of([&] { (void)heap.make_text("1.5").as_int(); }),
                   "expected an integer"));
    CHECK(contains(error_of([&] { (void)heap.make_text("maybe").as_bool(); }),
                   "expected a boolean"));
}

namespace {

struct Blob : NativeInstance {
    int payload = 7;
};

} // namespace

TEST_CASE("native values without a to_text hook cannot be cast to text") {
    Heap heap;
    NativeTypeDescriptor d;
    d.type_name = "Blob";
    d.duplicate = [](const NativeInstance& i) -> std::unique_ptr<NativeInstance> {
        return std::make_unique<Blob>(static_cast<const Blob&>(i));
    };
    Value v = heap.make_native(d, std::make_unique<Blob>());
    CHECK(contains(error_of([&] { (void)v.to_text(); }),
                   "type \"Blob\" cannot be cast to text"));
    CHECK(v.is_native());
}

TEST_CASE("ledger returns to baseline when values are dropped") {
    Heap heap;
    std::uint64_t live_allocs = heap.ledger().live_allocations();
    std::uint64_t live_bytes = heap.ledger().live_bytes();
    {
        std::vector<Value> population;
        for (int i = 0; i < 1000; ++i)
            population.push_back(heap.make_list({heap.make_int(i), heap.make_text("x")}));
        CHECK(heap.ledger().live_allocations() > live_allocs);
    }
    CHECK(heap.ledger().live_allocations() == live_allocs);
    CHECK(heap.ledger().live_bytes() == live_bytes);
}
