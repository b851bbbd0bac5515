#include "voo/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "voo/bench.hpp"
#include "voo/class_compiler.hpp"
#include "voo/class_dsl.hpp"
#include "voo/native_point.hpp"
#include "voo/registry.hpp"
#include "voo/samples.hpp"

namespace voo {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void dump_decl(const ClassDecl& d, std::ostream& out) {
    out << "class " << d.name;
    if (d.parent) out << " extends " << *d.parent;
    if (d.is_virtual) out << " -virtual";
    out << "\n";
    for (const FieldDecl& f : d.fields) {
        out << "  " << (f.visibility == Visibility::Private ? "private " : "public  ")
            << field_type_tag(f.type) << (f.is_static ? " -static " : " ") << f.name << " = "
            << f.default_value.to_text() << "\n";
    }
    for (const MethodDecl& m : d.methods) {
        out << "  " << (m.visibility == Visibility::Private ? "private " : "public  ")
            << "method " << m.name << " {";
        for (std::size_t i = 0; i < m.params.size(); ++i) out << (i ? " " : "") << m.params[i];
        out << "}";
        if (m.is_static) out << " -static";
        if (m.is_upvar) out << " -upvar";
        if (m.is_override) out << " -override";
        if (m.is_virtual) out << " -virtual";
        if (!m.update_fields.empty()) {
            out << " -update {";
            for (std::size_t i = 0; i < m.update_fields.size(); ++i)
                out << (i ? " " : "") << m.update_fields[i];
            out << "}";
        }
        out << "\n";
    }
    if (d.custom_constructor) out << "  constructor declared\n";
    for (const std::string& imp : d.imports) out << "  importMethods " << imp << "\n";
}

int run_parse(const std::string& path, std::ostream& out) {
    Registry r;
    for (const ClassDecl& d : parse_declarations(r.heap(), read_file(path))) dump_decl(d, out);
    return 0;
}

int run_expand(const std::string& path, std::ostream& out) {
    Registry r;
    bool first = true;
    for (const ClassDecl& d : parse_declarations(r.heap(), read_file(path))) {
        if (!first) out << "\n";
        first = false;
        out << expand(r, d);
        compile_class(r, d); // later declarations may extend earlier ones
    }
    return 0;
}

int run_demo(std::ostream& out) {
    Registry r;
    Environment env;

    out << "== constructors ==\n";
    samples::install_person(r);
    Value p1 = r.invoke("Person::new", env,
                        {r.heap().make_text("Alice"), r.heap().make_int(30),
                         r.heap().make_double(75000.0)});
    Value p2 = r.invoke("Person::new()", env, {});
    Value p3 = r.invoke("Person::new.args", env,
                        {r.heap().make_text("-name"), r.heap().make_text("Bob"),
                         r.heap().make_text("-age"), r.heap().make_int(35)});
    out << "Person::new \"Alice\" 30 75000.0   -> {" << p1.to_text() << "}\n";
    out << "Person::new()                    -> {" << p2.to_text() << "}\n";
    out << "Person::new.args -name Bob ...   -> {" << p3.to_text() << "}\n";
    out << "greet(p1)                        -> "
        << r.invoke("Person::greet", env, {p1}).to_text() << "\n";

    out << "\n== value semantics ==\n";
    env.set("a", p1);
    env.set("b", env.get("a")); // b shares a's cells until a write
    r.invoke("Person::set.name", env, {r.heap().make_text("b"), r.heap().make_text("Carol")});
    out << "b := a; set.name b Carol\n";
    out << "a -> {" << env.get("a").to_text() << "}   (unchanged)\n";
    out << "b -> {" << env.get("b").to_text() << "}\n";

    out << "\n== virtual dispatch ==\n";
    samples::install_shapes(r);
    Value circle = r.invoke("Circle::new", env, {r.heap().make_double(5.0)});
    Value colored =
        r.invoke("ColoredCircle::new", env, {r.heap().make_double(5.0), r.heap().make_text("red")});
    Value shape = r.invoke("Shape::new()", env, {});
    out << "Shape::area [Circle::new 5.0]        -> "
        << r.invoke("Shape::area", env, {circle}).to_text() << "\n";
    out << "Shape::area [ColoredCircle::new 5.0] -> "
        << r.invoke("Shape::area", env, {colored}).to_text() << "\n";
    out << "Shape::area [Shape::new()]           -> "
        << r.invoke("Shape::area", env, {shape}).to_text() << "\n";

    out << "\n== native bridge ==\n";
    register_native_point(r, "CppVooPoint");
    Value np = r.invoke("CppVooPoint::new", env,
                        {r.heap().make_double(3.0), r.heap().make_double(4.0),
                         r.heap().make_text("test"), r.heap().make_int(1),
                         r.heap().make_bool(true)});
    out << "CppVooPoint::new 3.0 4.0 test 1 1    -> {" << np.to_text() << "}\n";
    out << "CppVooPoint::distance                -> "
        << r.invoke("CppVooPoint::distance", env, {np}).to_text() << "\n";
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"voo — a value-semantics object system on a copy-on-write value runtime"};
    app.require_subcommand(1);

    std::string parse_path;
    CLI::App* parse_cmd = app.add_subcommand("parse", "parse class declarations and dump them");
    parse_cmd->add_option("file", parse_path, "class declaration file")->required();

    std::string expand_path;
    CLI::App* expand_cmd =
        app.add_subcommand("expand", "emit the raw generated form of each declaration");
    expand_cmd->add_option("file", expand_path, "class declaration file")->required();

    BenchConfig config;
    std::string format_name = "text";
    std::string out_path;
    CLI::App* bench_cmd = app.add_subcommand("bench", "run the benchmark suites");
    bench_cmd->add_option("--suites", config.suites, "suites to run")->delimiter(',');
    bench_cmd->add_option("--frameworks", config.frameworks, "frameworks to run")->delimiter(',');
    bench_cmd->add_option("--iterations", config.iterations, "iterations per micro suite");
    bench_cmd->add_option("--bulk", config.bulk_n, "object count for the bulk suite");
    bench_cmd->add_option("--format", format_name, "text, csv or json");
    bench_cmd->add_option("--out", out_path, "write the report to a file");

    CLI::App* demo_cmd = app.add_subcommand("demo", "run the guided walkthrough");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*parse_cmd) return run_parse(parse_path, std::cout);
        if (*expand_cmd) return run_expand(expand_path, std::cout);
        if (*demo_cmd) return run_demo(std::cout);
        if (*bench_cmd) {
            std::vector<BenchResult> results = run_suite(config);
            ReportFormat format = report_format_from_name(format_name);
            if (out_path.empty()) {
                emit_report(results, format, std::cout);
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw Error("cannot open file '" + out_path + "' for writing");
                emit_report(results, format, out);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace voo
