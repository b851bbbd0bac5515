#include "voo/native_point.hpp"

#include <cmath>
#include <memory>

#include "voo/native_bridge.hpp"

namespace voo {

double NativePoint::distance() const {
    return std::sqrt(x_ * x_ + y_ * y_);
}

std::string NativePoint::to_text() const {
    std::string out = format_double(x_);
    out += ' ';
    out += format_double(y_);
    out += ' ';
    out += name_;
    out += ' ';
    out += std::to_string(id_);
    out += ' ';
    out += active_ ? '1' : '0';
    return out;
}

namespace {

const NativePoint& as_point(const NativeInstance& inst) {
    return static_cast<const NativePoint&>(inst);
}

std::unique_ptr<NativeInstance> point_from_generic(Heap& heap, const Value& v) {
    Value items = v.is_list() ? v : heap.parse_list(v.to_text());
    if (items.list_length() != 5)
        throw Error("Expected list of 5 elements: x y name id active");
    return std::make_unique<NativePoint>(
        items.list_at(0).as_double(), items.list_at(1).as_double(),
        std::string(items.list_at(2).to_text()), items.list_at(3).as_int(),
        items.list_at(4).as_bool());
}

} // namespace

NativeTypeDescriptor make_native_point_descriptor() {
    NativeTypeDescriptor d;
    d.type_name = "VooPointRecord";
    d.duplicate = [](const NativeInstance& inst) -> std::unique_ptr<NativeInstance> {
        return std::make_unique<NativePoint>(as_point(inst));
    };
    d.to_text = [](const NativeInstance& inst) { return as_point(inst).to_text(); };
    d.from_generic = point_from_generic;
    d.make_default = []() -> std::unique_ptr<NativeInstance> {
        return std::make_unique<NativePoint>();
    };
    d.construct = [](Heap& heap, std::span<const Value> init) -> std::unique_ptr<NativeInstance> {
        if (init.size() != 5) throw Error("Expected list of 5 elements: x y name id active");
        std::vector<Value> elems(init.begin(), init.end());
        return point_from_generic(heap, heap.make_list(std::move(elems)));
    };
    d.instance_bytes = sizeof(NativePoint);
    return d;
}

void register_native_point(Registry& r, std::string_view class_name) {
    if (!r.find_native_type("VooPointRecord"))
        register_native_type(r, make_native_point_descriptor());

    NativeClassSpec spec;
    spec.fields.push_back({"x",
                           [](Heap& h, const NativeInstance& p) { return h.make_double(as_point(p).x()); },
                           [](NativeInstance& p, const Value& v) {
                               static_cast<NativePoint&>(p).set_x(v.as_double());
                           }});
    spec.fields.push_back({"y",
                           [](Heap& h, const NativeInstance& p) { return h.make_double(as_point(p).y()); },
                           [](NativeInstance& p, const Value& v) {
                               static_cast<NativePoint&>(p).set_y(v.as_double());
                           }});
    spec.fields.push_back({"name",
                           [](Heap& h, const NativeInstance& p) { return h.make_text(as_point(p).name()); },
                           [](NativeInstance& p, const Value& v) {
                               static_cast<NativePoint&>(p).set_name(std::string(v.to_text()));
                           }});
    spec.fields.push_back({"id",
                           [](Heap& h, const NativeInstance& p) { return h.make_int(as_point(p).id()); },
                           [](NativeInstance& p, const Value& v) {
                               static_cast<NativePoint&>(p).set_id(v.as_int());
                           }});
    spec.fields.push_back({"active",
                           [](Heap& h, const NativeInstance& p) { return h.make_bool(as_point(p).active()); },
                           [](NativeInstance& p, const Value& v) {
                               static_cast<NativePoint&>(p).set_active(v.as_bool());
                           }});
    spec.methods.push_back({"distance",
                            [](Heap& h, const NativeInstance& p, std::span<const Value>) {
                                return h.make_double(as_point(p).distance());
                            }});
    register_native_class(r, class_name, "VooPointRecord", std::move(spec));
}

} // namespace voo
