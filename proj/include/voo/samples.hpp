#pragma once

#include <memory>
#include <string_view>

#include "voo/class_compiler.hpp"
#include "voo/registry.hpp"

namespace voo::samples {

/// Stock class declarations used by the demo, the benchmark harness and
/// the test corpus. Sources mirror the .voo files shipped under samples/.

std::string_view person_source();     // name/age/salary + greet
std::string_view point_source();      // x/y/name + static count + distance
std::string_view bench_point_source(); // the 5-field benchmark point
std::string_view shapes_source();     // Shape -virtual, Circle, ColoredCircle

/// Compile and bind greet.
std::shared_ptr<CompiledClass> install_person(Registry& r);

/// Compile and bind distance.
std::shared_ptr<CompiledClass> install_point(Registry& r);

/// Compile the 5-field point and bind distance.
std::shared_ptr<CompiledClass> install_bench_point(Registry& r);

/// Compile the three shape classes and bind every area body.
void install_shapes(Registry& r);

} // namespace voo::samples
