#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace voo {

/// One measured row. For micro suites population/bytes are zero; for the
/// bulk suite iterations == population == the object count and avg_us is
/// per object. bytes_per_object is bytes_total / population in integer
/// math, 0 when the population is empty.
struct BenchResult {
    std::string suite;
    std::string framework;
    std::uint64_t iterations = 0;
    double avg_us = 0.0;
    std::uint64_t population = 0;
    std::uint64_t bytes_total = 0;
    std::uint64_t bytes_per_object = 0;
};

/// Run body once unmeasured (the warmup discard), then `times` measured
/// iterations; returns the mean in microseconds (monotonic clock).
double profile_avg_us(const std::function<void()>& body, std::uint64_t times);

/// Suites: creation-explicit, creation-default, setter, getter,
/// declaration, bulk. Frameworks: voo (compiled point class), baseline
/// (handle table), native (bridged point record). The declaration suite
/// does not apply to the native framework — its classes are declared at
/// C++ compile time — so that pair is skipped.
struct BenchConfig {
    std::vector<std::string> suites = {"creation-explicit", "creation-default", "setter",
                                       "getter", "declaration", "bulk"};
    std::vector<std::string> frameworks = {"voo", "baseline", "native"};
    std::uint64_t iterations = 1000;
    std::uint64_t bulk_n = 100000;
};

std::vector<BenchResult> run_suite(const BenchConfig& config);

/// Create n point objects in a fresh, isolated runtime instance for one
/// framework; wall time plus ledger-based byte accounting.
BenchResult bulk_bench(std::string_view framework, std::uint64_t n);

enum class ReportFormat { Text, Csv, Json };
ReportFormat report_format_from_name(std::string_view name);

void emit_report(std::span<const BenchResult> results, ReportFormat format, std::ostream& out);

} // namespace voo
