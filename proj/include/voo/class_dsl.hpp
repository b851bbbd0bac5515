#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voo/value.hpp"

namespace voo {

class Registry;

enum class FieldType : std::uint8_t { Double, Int, String, Bool, List, Dict, Obj };
enum class Visibility : std::uint8_t { Public, Private };

std::string_view field_type_tag(FieldType t);
std::optional<FieldType> field_type_from_tag(std::string_view tag);

struct FieldDecl {
    FieldType type = FieldType::String;
    std::string name;
    Value default_value;
    bool is_static = false;
    Visibility visibility = Visibility::Public;
};

struct MethodDecl {
    std::string name;
    std::vector<std::string> params;
    bool is_static = false;
    bool is_upvar = false;
    bool is_override = false;
    bool is_virtual = false;
    std::vector<std::string> update_fields; // non-empty iff declared -update
    std::string body_text;                  // opaque; runs only via a bound host callable
    Visibility visibility = Visibility::Public;
};

struct ConstructorDecl {
    std::vector<std::string> params;
    std::string body_text;
};

/// A parsed class declaration. Field defaults are already typed Values;
/// everything else is structure waiting for the compiler.
struct ClassDecl {
    std::string name;
    std::optional<std::string> parent;
    bool is_virtual = false;
    std::vector<FieldDecl> fields; // declaration order, statics included
    std::vector<MethodDecl> methods;
    std::optional<ConstructorDecl> custom_constructor;
    std::vector<std::string> imports;
};

/// Parse one class declaration of the form
///
///   voo::class Name ?-virtual? ?-extends Parent? {
///       public { type_t name default ... method ... }
///       private { ... }
///       method name ?modifiers? {params} ?modifiers? {body}
///       constructor {params} {body}
///       importMethods {a b}
///   }
///
/// The grammar is a token stream of words, "..."-quoted words, [...]
/// bracketed words and brace-delimited blocks; a `#` opening a line starts
/// a comment. Errors carry the source line number.
ClassDecl parse_class(Heap& heap, std::string_view source);

/// Parse a whole file: zero or more declarations.
std::vector<ClassDecl> parse_declarations(Heap& heap, std::string_view source);

/// Cross-declaration checks that need the registry: the parent exists,
/// -override targets exist on an ancestor, imports name public parent
/// methods, -virtual methods only appear in virtual lineages, and child
/// fields do not shadow ancestor fields.
void validate_decl(const ClassDecl& decl, const Registry& registry);

} // namespace voo
