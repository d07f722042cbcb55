#include "x3dui/emitter.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "x3dui/runtime.hpp"

namespace x3dui::emit {

namespace {

std::string num(double v) {
    if (v == 0) v = 0;  // avoid "-0"
    std::ostringstream out;
    out.precision(15);
    out << v;
    return out.str();
}

std::string color_string(const Color& c) {
    return num(c.r) + " " + num(c.g) + " " + num(c.b);
}

bool has_text_face(WidgetKind kind) {
    switch (kind) {
        case WidgetKind::TextButton:
        case WidgetKind::TextToggleButton:
        case WidgetKind::CheckBox:
        case WidgetKind::RadioButton:
        case WidgetKind::Label:
        case WidgetKind::TextField:
        case WidgetKind::ComboBox:
            return true;
        default:
            return false;
    }
}

}  // namespace

DepthAssignment assign_depths(std::size_t sibling_count, double z_epsilon,
                              double frame_layer_gap) {
    if (z_epsilon <= 0) throw std::invalid_argument("z epsilon must be positive");
    DepthAssignment result;
    for (std::size_t i = 0; i < sibling_count; ++i)
        result.offsets.push_back(static_cast<double>(i) * z_epsilon);
    result.range = sibling_count > 1 ? static_cast<double>(sibling_count - 1) * z_epsilon : 0.0;
    result.warning = result.range > frame_layer_gap;
    return result;
}

std::vector<int> assign_order(const std::vector<bool>& overlay_flags) {
    std::vector<int> order(overlay_flags.size(), 0);
    int next = 0;
    for (std::size_t i = 0; i < overlay_flags.size(); ++i) {
        if (!overlay_flags[i]) order[i] = next++;
    }
    for (std::size_t i = 0; i < overlay_flags.size(); ++i) {
        if (overlay_flags[i]) order[i] = next++;
    }
    return order;
}

Vec3 map_to_scene(const Rect& rect, double container_w, double container_h, double depth) {
    Vec3 v;
    v.x = rect.x + rect.w / 2 - container_w / 2;
    v.y = container_h / 2 - (rect.y + rect.h / 2);
    v.z = -depth;
    return v;
}

Rect unmap_from_scene(const Vec3& translation, double w, double h, double container_w,
                      double container_h) {
    Rect rect;
    rect.w = w;
    rect.h = h;
    rect.x = translation.x - w / 2 + container_w / 2;
    rect.y = container_h / 2 - translation.y - h / 2;
    return rect;
}

xml::Node emit_hud_rig(const EmitConfig& config, xml::Node gui_root) {
    if (config.hud == HudStrategy::Layer3d && !config.strict_standard) {
        xml::Node layer = xml::Node::element("Layer3D");
        layer.set_attribute("DEF", "Hud");
        layer.add_child(std::move(gui_root));
        return layer;
    }
    // viewpoint-following transform: the sensor's pose drives the GUI root
    xml::Node rig = xml::Node::element("Group");
    rig.set_attribute("DEF", "Hud");
    xml::Node sensor = xml::Node::element("ProximitySensor");
    sensor.set_attribute("DEF", "HudSensor");
    sensor.set_attribute("size", "1000000 1000000 1000000");
    rig.add_child(std::move(sensor));
    rig.add_child(std::move(gui_root));
    xml::Node route1 = xml::Node::element("ROUTE");
    route1.set_attribute("fromNode", "HudSensor");
    route1.set_attribute("fromField", "position_changed");
    route1.set_attribute("toNode", "HudRoot");
    route1.set_attribute("toField", "set_translation");
    rig.add_child(std::move(route1));
    xml::Node route2 = xml::Node::element("ROUTE");
    route2.set_attribute("fromNode", "HudSensor");
    route2.set_attribute("fromField", "orientation_changed");
    route2.set_attribute("toNode", "HudRoot");
    route2.set_attribute("toField", "set_rotation");
    rig.add_child(std::move(route2));
    return rig;
}

std::vector<xml::Node> emit_extern_protos(const std::vector<WidgetKind>& used_kinds,
                                          const std::string& library_url) {
    std::set<WidgetKind> used(used_kinds.begin(), used_kinds.end());
    std::vector<xml::Node> declarations;
    for (WidgetKind kind : widget_catalog()) {
        if (!used.count(kind)) continue;
        std::string name(kind_name(kind));
        xml::Node decl = xml::Node::element("ExternProtoDeclare");
        decl.set_attribute("name", name);
        decl.set_attribute("url", library_url + "#" + name);
        declarations.push_back(std::move(decl));
    }
    return declarations;
}

namespace {

struct Emitter {
    const WidgetTree& tree;
    const EmitConfig& config;
    const Desktop& desktop;
    std::vector<std::string> warnings;
    std::set<std::string> instantiated;

    xml::Node instance(const WidgetNode& node) {
        xml::Node inst = xml::Node::element("ProtoInstance");
        std::string name(kind_name(node.kind));
        inst.set_attribute("name", name);
        inst.set_attribute("DEF", name + "_" + std::to_string(node.id));
        instantiated.insert(name);
        return inst;
    }

    void field(xml::Node& inst, const std::string& name, const std::string& value) {
        xml::Node fv = xml::Node::element("fieldValue");
        fv.set_attribute("name", name);
        fv.set_attribute("value", value);
        inst.add_child(std::move(fv));
    }

    void common_fields(xml::Node& inst, const WidgetNode& node, const Rect& rect) {
        field(inst, "width", num(rect.w));
        field(inst, "height", num(rect.h));
        if (node.transparency != 0) field(inst, "transparency", num(node.transparency));
        if (node.color) field(inst, "color", color_string(*node.color));
        if (!node.visible) field(inst, "visible", "false");
        if (!node.text.empty()) field(inst, "text", node.text);
        if (!node.title.empty()) field(inst, "title", node.title);
        if (!node.items.empty()) {
            std::string joined;
            for (const auto& item : node.items) {
                if (!joined.empty()) joined += "|";
                joined += item;
            }
            field(inst, "items", joined);
        }
        if (node.kind == WidgetKind::HorizontalSlider) {
            field(inst, "minValue", num(node.min_value));
            field(inst, "maxValue", num(node.max_value));
            field(inst, "value", num(node.value));
            if (node.intervals > 0) field(inst, "intervals", std::to_string(node.intervals));
            if (node.discrete) field(inst, "discrete", "true");
        }
        if (node.max_length) field(inst, "maxLength", std::to_string(*node.max_length));
        if (node.control) field(inst, "control", std::string(control_kind_name(*node.control)));
        if (node.checked) field(inst, "checked", "true");
        if (has_text_face(node.kind) && config.use_texture_text && !config.strict_standard)
            field(inst, "fontStyle", "USE_TEXTURE");
        if (node.layout) {
            // layoutManager is a node-valued field, so the manager appears as
            // a real instance and its declaration is justified by usage
            std::string manager(kind_name(node.layout->prototype()));
            xml::Node fv = xml::Node::element("fieldValue");
            fv.set_attribute("name", "layoutManager");
            xml::Node mgr = xml::Node::element("ProtoInstance");
            mgr.set_attribute("name", manager);
            fv.add_child(std::move(mgr));
            inst.add_child(std::move(fv));
            instantiated.insert(manager);
        }
    }

    // wrap a child subtree in a Transform carrying the mapped translation
    xml::Node placed(xml::Node subtree, const Rect& rect, double container_w, double container_h,
                     double depth) {
        Vec3 v = map_to_scene(rect, container_w, container_h, depth);
        xml::Node transform = xml::Node::element("Transform");
        transform.set_attribute("translation", num(v.x) + " " + num(v.y) + " " + num(v.z));
        transform.add_child(std::move(subtree));
        return transform;
    }

    xml::Node ordered_wrapper(const std::vector<bool>& overlays) {
        std::vector<int> order = assign_order(overlays);
        if (config.strict_standard) return xml::Node::element("Group");
        xml::Node group = xml::Node::element("OrderedGroup");
        std::string joined;
        for (int value : order) {
            if (!joined.empty()) joined += " ";
            joined += std::to_string(value);
        }
        if (!joined.empty()) group.set_attribute("order", joined);
        return group;
    }

    bool is_overlay(const WidgetNode& parent, const WidgetNode& child) {
        if (parent.kind != WidgetKind::TabPanel) return false;
        // the active tab's content renders over the other headers
        int active = 0;
        for (std::size_t i = 0; i < parent.children.size(); ++i) {
            if (parent.children[i].id == child.id) return static_cast<int>(i) == active;
        }
        return false;
    }

    // emit `node` and its laid-out descendants; rects come from the frame's
    // placement map and are relative to the frame content box
    xml::Node widget_subtree(const WidgetNode& node, const TreeLayout& layout,
                             const Size& container) {
        xml::Node inst = instance(node);
        Rect rect{0, 0, container.w, container.h};
        auto placement = layout.placements.find(node.id);
        if (placement != layout.placements.end()) rect = placement->second;
        common_fields(inst, node, rect);

        std::vector<const WidgetNode*> placed_children;
        for (const auto& child : node.children) {
            if (child.kind == WidgetKind::ControlButton) continue;
            if (layout.placements.count(child.id) || child.kind == WidgetKind::RadioButton)
                placed_children.push_back(&child);
        }
        if (!placed_children.empty()) {
            DepthAssignment depths = assign_depths(placed_children.size(), config.z_epsilon,
                                                   config.frame_layer_gap);
            if (depths.warning)
                warnings.push_back("depth range " + num(depths.range) + " under " +
                                   std::string(kind_name(node.kind)) + "_" +
                                   std::to_string(node.id) + " exceeds the frame layer gap");
            std::vector<bool> overlays;
            for (const WidgetNode* child : placed_children)
                overlays.push_back(is_overlay(node, *child));
            xml::Node group = ordered_wrapper(overlays);
            for (std::size_t i = 0; i < placed_children.size(); ++i) {
                const WidgetNode& child = *placed_children[i];
                Rect child_rect = rect;
                auto it = layout.placements.find(child.id);
                if (it != layout.placements.end()) child_rect = it->second;
                // child translation is relative to this node's center
                Rect local{child_rect.x - rect.x, child_rect.y - rect.y, child_rect.w,
                           child_rect.h};
                xml::Node subtree = widget_subtree(child, layout, container);
                group.add_child(placed(std::move(subtree), local, rect.w, rect.h,
                                       depths.offsets[i]));
            }
            inst.add_child(std::move(group));
        }
        return inst;
    }

    xml::Node frame_subtree(const WidgetNode& frame, int layer_index) {
        const FrameState& fs = desktop.state().frames.at(frame.id);
        const TreeLayout& layout = desktop.frame_layout(frame.id);
        Size content{fs.rect.w, fs.rect.h - desktop.header_height()};

        xml::Node inst = instance(frame);
        common_fields(inst, frame, {0, 0, fs.rect.w, fs.rect.h});
        if (!frame.resizable) field(inst, "resizable", "false");
        if (frame.docked) field(inst, "docked", "true");
        for (const auto& child : frame.children) {
            if (child.kind == WidgetKind::ControlButton)
                field(inst, "controls", std::string(control_kind_name(*child.control)));
        }

        std::vector<const WidgetNode*> top_level;
        for (const auto& child : frame.children) {
            if (child.kind == WidgetKind::ControlButton) continue;
            if (layout.placements.count(child.id)) top_level.push_back(&child);
        }
        if (!top_level.empty()) {
            DepthAssignment depths =
                assign_depths(top_level.size(), config.z_epsilon, config.frame_layer_gap);
            if (depths.warning)
                warnings.push_back("depth range " + num(depths.range) + " in frame " +
                                   std::to_string(frame.id) + " exceeds the frame layer gap");
            std::vector<bool> overlays(top_level.size(), false);
            xml::Node group = ordered_wrapper(overlays);
            for (std::size_t i = 0; i < top_level.size(); ++i) {
                const WidgetNode& child = *top_level[i];
                Rect rect = layout.placements.at(child.id);
                xml::Node subtree = widget_subtree(child, layout, content);
                group.add_child(
                    placed(std::move(subtree), rect, content.w, content.h, depths.offsets[i]));
            }
            inst.add_child(std::move(group));
        }

        Rect frame_rect = fs.rect;
        double depth = static_cast<double>(layer_index + 1) * config.frame_layer_gap;
        return placed(std::move(inst), frame_rect, desktop.state().viewport_w,
                      desktop.state().viewport_h, depth);
    }
};

void collect_instantiated(const xml::Node& node, std::set<std::string>& names) {
    if (node.type == xml::Node::Type::Element && node.name == "ProtoInstance") {
        if (const std::string* name = node.attribute("name")) names.insert(*name);
    }
    for (const auto& child : node.children) collect_instantiated(child, names);
}

}  // namespace

EmitResult emit_scene(const WidgetTree& tree, const EmitConfig& config) {
    ValidationReport report = validate_tree(tree);
    if (!report.ok())
        throw std::invalid_argument("cannot emit an invalid tree: " +
                                    report.violations.front().message);
    if (config.z_epsilon <= 0) throw std::invalid_argument("z epsilon must be positive");
    if (config.frame_layer_gap <= config.z_epsilon)
        throw std::invalid_argument("frame layer gap must exceed z epsilon");

    Desktop desktop(tree);
    Emitter emitter{tree, config, desktop, {}, {}};

    xml::Node gui_root = xml::Node::element("Transform");
    gui_root.set_attribute("DEF", "HudRoot");

    // the Display instance hosts the desktop surface and the image base path
    xml::Node display = emitter.instance(tree.display);
    emitter.field(display, "imagePath", config.image_path);
    emitter.field(display, "width", num(desktop.state().viewport_w));
    emitter.field(display, "height", num(desktop.state().viewport_h));
    gui_root.add_child(std::move(display));

    for (const auto& child : tree.display.children) {
        if (child.kind == WidgetKind::TaskBar) {
            xml::Node taskbar = emitter.instance(child);
            Rect bar = desktop.taskbar_rect();
            emitter.field(taskbar, "width", num(bar.w));
            emitter.field(taskbar, "height", num(bar.h));
            gui_root.add_child(emitter.placed(std::move(taskbar), bar,
                                              desktop.state().viewport_w,
                                              desktop.state().viewport_h, 0));
        }
    }

    int layer_index = 0;
    for (const auto& child : tree.display.children) {
        if (child.kind != WidgetKind::Frame) continue;
        gui_root.add_child(emitter.frame_subtree(child, layer_index));
        ++layer_index;
    }

    EmitConfig effective = config;
    if (config.strict_standard && config.hud == HudStrategy::Layer3d)
        effective.hud = HudStrategy::ProximityRoute;
    xml::Node rig = emit_hud_rig(effective, std::move(gui_root));

    // declarations derive from what the body actually instantiates
    std::set<std::string> names;
    collect_instantiated(rig, names);
    names.insert(emitter.instantiated.begin(), emitter.instantiated.end());
    std::vector<WidgetKind> used;
    for (const std::string& name : names) {
        if (auto kind = kind_from_name(name)) used.push_back(*kind);
    }

    xml::Document document;
    document.xml_decl = "version=\"1.0\" encoding=\"UTF-8\"";
    document.root = xml::Node::element("X3D");
    document.root.set_attribute("profile", "Immersive");
    document.root.set_attribute("version", "3.2");
    xml::Node scene = xml::Node::element("Scene");
    for (xml::Node& decl : emit_extern_protos(used, config.library_url))
        scene.add_child(std::move(decl));
    scene.add_child(std::move(rig));
    document.root.add_child(std::move(scene));

    EmitResult result;
    result.document = std::move(document);
    result.warnings = std::move(emitter.warnings);
    return result;
}

std::string serialize_xml(const xml::Document& document, bool pretty) {
    return xml::serialize(document, pretty ? xml::Layout::Pretty : xml::Layout::Minified);
}

}  // namespace x3dui::emit
