#pragma once

#include <string>
#include <string_view>

#include "voo/registry.hpp"
#include "voo/value.hpp"

namespace voo {

/// The compiled 5-field point record: the migration target the native
/// bridge demonstrates. Field set and defaults match the script-side
/// benchmark point class exactly.
class NativePoint : public NativeInstance {
public:
    NativePoint() = default;
    NativePoint(double x, double y, std::string name, std::int64_t id, bool active)
        : x_(x), y_(y), name_(std::move(name)), id_(id), active_(active) {}

    double x() const { return x_; }
    double y() const { return y_; }
    const std::string& name() const { return name_; }
    std::int64_t id() const { return id_; }
    bool active() const { return active_; }

    void set_x(double v) { x_ = v; }
    void set_y(double v) { y_ = v; }
    void set_name(std::string v) { name_ = std::move(v); }
    void set_id(std::int64_t v) { id_ = v; }
    void set_active(bool v) { active_ = v; }

    double distance() const;
    std::string to_text() const;

private:
    double x_ = 0.0;
    double y_ = 0.0;
    std::string name_ = "point";
    std::int64_t id_ = 0;
    bool active_ = true;
};

/// Descriptor with all hooks: duplicate, to_text (space-joined fields),
/// from_generic (parses a 5-element list), defaults and positional
/// construction. instance_bytes is sizeof(NativePoint): fields live inline
/// in the record, which is exactly the footprint advantage being measured.
NativeTypeDescriptor make_native_point_descriptor();

/// Register the type (if not present) and a class-command surface under
/// `class_name` mirroring the compiled-class shape: new, new(), get.*,
/// set.* per field, and distance.
void register_native_point(Registry& r, std::string_view class_name);

} // namespace voo
