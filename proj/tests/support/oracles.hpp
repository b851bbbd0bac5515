#pragma once

// Test-side oracles, independent of the implementation paths they check.

#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "voo/value.hpp"

namespace voo::testing {

inline std::uint64_t test_seed() {
    if (const char* s = std::getenv("VOO_BENCH_SEED")) return std::strtoull(s, nullptr, 10);
    return 0x5EEDull;
}

// A little value AST the generators own; rendering it is a second,
// independent route to the canonical text form.
struct Node {
    enum class Type { Int, Half, Text, List };
    Type type = Type::Int;
    std::int64_t int_v = 0;
    std::int64_t half_v = 0; // value is half_v / 2, exact in decimal
    std::string text_v;
    std::vector<Node> kids;
};

inline Node random_node(std::mt19937_64& rng, int depth) {
    static const char* kTexts[] = {"a", "hello", "b c", "", "x y z", "d{}e", "{inner}"};
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 3 : 2);
    Node n;
    switch (pick(rng)) {
    case 0:
        n.type = Node::Type::Int;
        n.int_v = std::uniform_int_distribution<std::int64_t>(-1000, 1000)(rng);
        break;
    case 1:
        n.type = Node::Type::Half;
        n.half_v = std::uniform_int_distribution<std::int64_t>(-40, 40)(rng);
        break;
    case 2:
        n.type = Node::Type::Text;
        n.text_v = kTexts[std::uniform_int_distribution<int>(0, 6)(rng)];
        break;
    default: {
        n.type = Node::Type::List;
        int width = std::uniform_int_distribution<int>(0, 4)(rng);
        for (int i = 0; i < width; ++i) n.kids.push_back(random_node(rng, depth - 1));
        break;
    }
    }
    return n;
}

// Independent implementation of the documented quoting rule: brace-quote
// an element that is empty or contains whitespace or braces.
inline std::string oracle_quote(const std::string& s) {
    bool quote = s.empty() || s.find_first_of(" \t\n\r{}") != std::string::npos;
    return quote ? "{" + s + "}" : s;
}

inline std::string oracle_render(const Node& n) {
    char buf[64];
    switch (n.type) {
    case Node::Type::Int:
        return std::to_string(n.int_v);
    case Node::Type::Half:
        std::snprintf(buf, sizeof(buf), "%.1f", static_cast<double>(n.half_v) / 2.0);
        return buf;
    case Node::Type::Text:
        return n.text_v;
    case Node::Type::List: {
        std::string out;
        for (std::size_t i = 0; i < n.kids.size(); ++i) {
            if (i) out += ' ';
            out += oracle_quote(oracle_render(n.kids[i]));
        }
        return out;
    }
    }
    return "";
}

inline Value build_value(Heap& heap, const Node& n) {
    switch (n.type) {
    case Node::Type::Int:
        return heap.make_int(n.int_v);
    case Node::Type::Half:
        return heap.make_double(static_cast<double>(n.half_v) / 2.0);
    case Node::Type::Text:
        return heap.make_text(n.text_v);
    case Node::Type::List: {
        std::vector<Value> elems;
        elems.reserve(n.kids.size());
        for (const Node& k : n.kids) elems.push_back(build_value(heap, k));
        return heap.make_list(std::move(elems));
    }
    }
    return Value();
}

// Runs f and hands back the error text ("" when nothing was thrown).
template <class F>
std::string error_of(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

inline bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

} // namespace voo::testing
