#include "voo/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "voo/baseline.hpp"
#include "voo/class_compiler.hpp"
#include "voo/class_dsl.hpp"
#include "voo/native_point.hpp"
#include "voo/registry.hpp"
#include "voo/samples.hpp"
#include "voo/value.hpp"

namespace voo {

using Clock = std::chrono::steady_clock;

static double elapsed_us(Clock::time_point t0, Clock::time_point t1) {
    return std::chrono::duration<double, std::micro>(t1 - t0).count();
}

double profile_avg_us(const std::function<void()>& body, std::uint64_t times) {
    if (times < 1) throw Error("profile: iteration count must be >= 1");
    body(); // warmup run, never measured
    auto t0 = Clock::now();
    for (std::uint64_t i = 0; i < times; ++i) body();
    auto t1 = Clock::now();
    return elapsed_us(t0, t1) / static_cast<double>(times);
}

namespace {

const char* kBaselinePointName = "BaselinePoint";

HandleClass baseline_point_class(Heap& heap) {
    HandleClass cls;
    cls.name = kBaselinePointName;
    cls.fields = {"x", "y", "name", "id", "active"};
    cls.defaults = {heap.make_double(0.0), heap.make_double(0.0), heap.make_text("point"),
                    heap.make_int(0), heap.make_bool(true)};
    return cls;
}

std::vector<Value> explicit_point_args(Heap& heap) {
    std::vector<Value> args;
    args.push_back(heap.make_double(1.0));
    args.push_back(heap.make_double(2.0));
    args.push_back(heap.make_text("test"));
    args.push_back(heap.make_int(1));
    args.push_back(heap.make_bool(true));
    return args;
}

// Per-framework micro-suite harness. Explicit-creation args are prebuilt
// once (the analog of script literals); the bulk run below builds fresh
// values per object instead.
class MicroHarness {
public:
    virtual ~MicroHarness() = default;
    virtual void creation_explicit() = 0;
    virtual void creation_default() = 0;
    virtual void setter() = 0;
    virtual void getter() = 0;
    virtual bool has_declaration() const { return true; }
    virtual void declaration() = 0;
};

class VooHarness : public MicroHarness {
public:
    VooHarness() {
        samples::install_bench_point(registry_);
        args_ = explicit_point_args(registry_.heap());
        env_.set("p", registry_.invoke("VooPoint::new()", env_, {}));
        getter_args_ = {env_.get("p")};
        setter_args_ = {registry_.heap().make_text("p"), registry_.heap().make_double(3.14)};
    }
    void creation_explicit() override { registry_.invoke("VooPoint::new", env_, args_); }
    void creation_default() override { registry_.invoke("VooPoint::new()", env_, {}); }
    void setter() override { registry_.invoke("VooPoint::set.x", env_, setter_args_); }
    void getter() override { registry_.invoke("VooPoint::get.x", env_, getter_args_); }
    void declaration() override {
        compile_class(registry_, parse_class(registry_.heap(), samples::bench_point_source()));
    }

private:
    Registry registry_;
    Environment env_;
    std::vector<Value> args_;
    std::vector<Value> getter_args_;
    std::vector<Value> setter_args_;
};

class BaselineHarness : public MicroHarness {
public:
    BaselineHarness() : table_(&heap_.ledger()) {
        table_.register_class(baseline_point_class(heap_));
        args_ = explicit_point_args(heap_);
        handle_ = table_.create(kBaselinePointName, args_);
        set_val_ = heap_.make_double(3.14);
    }
    void creation_explicit() override { table_.create(kBaselinePointName, args_); }
    void creation_default() override { table_.create_default(kBaselinePointName); }
    void setter() override { table_.set(handle_, "x", set_val_); }
    void getter() override { table_.get(handle_, "x"); }
    void declaration() override { table_.register_class(baseline_point_class(heap_)); }

private:
    Heap heap_;
    HandleTable table_;
    std::vector<Value> args_;
    std::string handle_;
    Value set_val_;
};

class NativeHarness : public MicroHarness {
public:
    NativeHarness() {
        register_native_point(registry_, "CppVooPoint");
        args_ = explicit_point_args(registry_.heap());
        env_.set("p", registry_.invoke("CppVooPoint::new()", env_, {}));
        getter_args_ = {env_.get("p")};
        setter_args_ = {registry_.heap().make_text("p"), registry_.heap().make_double(3.14)};
    }
    void creation_explicit() override { registry_.invoke("CppVooPoint::new", env_, args_); }
    void creation_default() override { registry_.invoke("CppVooPoint::new()", env_, {}); }
    void setter() override { registry_.invoke("CppVooPoint::set.x", env_, setter_args_); }
    void getter() override { registry_.invoke("CppVooPoint::get.x", env_, getter_args_); }
    bool has_declaration() const override { return false; }
    void declaration() override {}

private:
    Registry registry_;
    Environment env_;
    std::vector<Value> args_;
    std::vector<Value> getter_args_;
    std::vector<Value> setter_args_;
};

std::unique_ptr<MicroHarness> make_harness(std::string_view framework) {
    if (framework == "voo") return std::make_unique<VooHarness>();
    if (framework == "baseline") return std::make_unique<BaselineHarness>();
    if (framework == "native") return std::make_unique<NativeHarness>();
    throw Error("unknown framework '" + std::string(framework) + "'");
}

bool known_suite(std::string_view s) {
    return s == "creation-explicit" || s == "creation-default" || s == "setter" ||
           s == "getter" || s == "declaration" || s == "bulk";
}

BenchResult micro_result(std::string suite, std::string framework, std::uint64_t iterations,
                         double avg_us) {
    BenchResult res;
    res.suite = std::move(suite);
    res.framework = std::move(framework);
    res.iterations = iterations;
    res.avg_us = avg_us;
    return res;
}

} // namespace

BenchResult bulk_bench(std::string_view framework, std::uint64_t n) {
    BenchResult res;
    res.suite = "bulk";
    res.framework = std::string(framework);
    res.iterations = n;
    res.population = n;

    if (framework == "voo") {
        Registry r;
        Environment env;
        auto cls = samples::install_bench_point(r);
        std::vector<Value> population;
        population.reserve(n);
        std::uint64_t before = r.heap().ledger().live_bytes();
        auto t0 = Clock::now();
        for (std::uint64_t i = 0; i < n; ++i) {
            std::vector<Value> args = explicit_point_args(r.heap());
            population.push_back(construct_positional(r, *cls, args));
        }
        auto t1 = Clock::now();
        res.bytes_total = r.heap().ledger().live_bytes() - before;
        res.avg_us = n ? elapsed_us(t0, t1) / static_cast<double>(n) : 0.0;
    } else if (framework == "baseline") {
        Heap heap;
        HandleTable table(&heap.ledger());
        table.register_class(baseline_point_class(heap));
        std::vector<std::string> population;
        population.reserve(n);
        std::uint64_t before = heap.ledger().live_bytes();
        auto t0 = Clock::now();
        for (std::uint64_t i = 0; i < n; ++i) {
            std::vector<Value> args = explicit_point_args(heap);
            population.push_back(table.create(kBaselinePointName, args));
        }
        auto t1 = Clock::now();
        res.bytes_total = heap.ledger().live_bytes() - before;
        res.avg_us = n ? elapsed_us(t0, t1) / static_cast<double>(n) : 0.0;
    } else if (framework == "native") {
        Registry r;
        Environment env;
        register_native_point(r, "CppVooPoint");
        std::vector<Value> population;
        population.reserve(n);
        std::uint64_t before = r.heap().ledger().live_bytes();
        auto t0 = Clock::now();
        for (std::uint64_t i = 0; i < n; ++i) {
            std::vector<Value> args = explicit_point_args(r.heap());
            population.push_back(r.invoke("CppVooPoint::new", env, std::move(args)));
        }
        auto t1 = Clock::now();
        res.bytes_total = r.heap().ledger().live_bytes() - before;
        res.avg_us = n ? elapsed_us(t0, t1) / static_cast<double>(n) : 0.0;
    } else {
        throw Error("unknown framework '" + std::string(framework) + "'");
    }
    res.bytes_per_object = n ? res.bytes_total / n : 0;
    return res;
}

std::vector<BenchResult> run_suite(const BenchConfig& config) {
    for (const std::string& s : config.suites)
        if (!known_suite(s)) throw Error("unknown suite '" + s + "'");
    std::vector<BenchResult> out;
    for (const std::string& suite : config.suites) {
        for (const std::string& framework : config.frameworks) {
            if (suite == "bulk") {
                out.push_back(bulk_bench(framework, config.bulk_n));
                continue;
            }
            auto harness = make_harness(framework);
            double avg = 0.0;
            if (suite == "creation-explicit") {
                avg = profile_avg_us([&] { harness->creation_explicit(); }, config.iterations);
            } else if (suite == "creation-default") {
                avg = profile_avg_us([&] { harness->creation_default(); }, config.iterations);
            } else if (suite == "setter") {
                avg = profile_avg_us([&] { harness->setter(); }, config.iterations);
            } else if (suite == "getter") {
                avg = profile_avg_us([&] { harness->getter(); }, config.iterations);
            } else if (suite == "declaration") {
                if (!harness->has_declaration()) continue;
                avg = profile_avg_us([&] { harness->declaration(); }, config.iterations);
            }
            out.push_back(micro_result(suite, framework, config.iterations, avg));
        }
    }
    return out;
}

ReportFormat report_format_from_name(std::string_view name) {
    if (name == "text") return ReportFormat::Text;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw Error("unknown report format '" + std::string(name) + "'");
}

void emit_report(std::span<const BenchResult> results, ReportFormat format, std::ostream& out) {
    switch (format) {
    case ReportFormat::Text: {
        char line[256];
        std::snprintf(line, sizeof(line), "%-18s %-9s %10s %12s %10s %12s %10s\n", "suite",
                      "framework", "iters", "avg_us", "objects", "bytes", "bytes/obj");
        out << line;
        for (const BenchResult& r : results) {
            std::snprintf(line, sizeof(line), "%-18s %-9s %10llu %12.3f %10llu %12llu %10llu\n",
                          r.suite.c_str(), r.framework.c_str(),
                          static_cast<unsigned long long>(r.iterations), r.avg_us,
                          static_cast<unsigned long long>(r.population),
                          static_cast<unsigned long long>(r.bytes_total),
                          static_cast<unsigned long long>(r.bytes_per_object));
            out << line;
        }
        break;
    }
    case ReportFormat::Csv: {
        out << "suite,framework,iterations,avg_us,population,bytes_total,bytes_per_object\n";
        char num[32];
        for (const BenchResult& r : results) {
            std::snprintf(num, sizeof(num), "%.3f", r.avg_us);
            out << r.suite << ',' << r.framework << ',' << r.iterations << ',' << num << ','
                << r.population << ',' << r.bytes_total << ',' << r.bytes_per_object << '\n';
        }
        break;
    }
    case ReportFormat::Json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const BenchResult& r : results) {
            arr.push_back({{"suite", r.suite},
                           {"framework", r.framework},
                           {"iterations", r.iterations},
                           {"avg_us", r.avg_us},
                           {"population", r.population},
                           {"bytes_total", r.bytes_total},
                           {"bytes_per_object", r.bytes_per_object}});
        }
        out << arr.dump(2) << '\n';
        break;
    }
    }
}

} // namespace voo
