#pragma once

#include <string>
#include <vector>

#include "x3dui/layout.hpp"
#include "x3dui/widget.hpp"
#include "x3dui/xml.hpp"

namespace x3dui::emit {

enum class HudStrategy { ProximityRoute, Layer3d };

struct EmitConfig {
    HudStrategy hud = HudStrategy::ProximityRoute;
    double z_epsilon = 0.001;       // sibling separation along z
    double frame_layer_gap = 0.1;   // distance between frame layers
    bool use_texture_text = true;   // render text through the texture pipeline
    bool strict_standard = false;   // suppress proprietary nodes
    std::string library_url = "x3dui.x3d";
    std::string image_path = "images/";
};

// Sibling i sits at z = i * epsilon. `warning` is set when the total range
// exceeds the inter-frame gap, meaning layers would start interpenetrating.
struct DepthAssignment {
    std::vector<double> offsets;
    double range = 0;
    bool warning = false;
};
DepthAssignment assign_depths(std::size_t sibling_count, double z_epsilon,
                              double frame_layer_gap);

// Rendering priority for an OrderedGroup wrapper: document order, except
// overlay children (drop-downs, active tab content) take the highest values.
// Larger renders later, on top.
std::vector<int> assign_order(const std::vector<bool>& overlay_flags);

// Layout space is y-down with the origin at the container's top-left; scene
// space is y-up and centered. depth maps to -z.
struct Vec3 {
    double x = 0, y = 0, z = 0;
};
Vec3 map_to_scene(const Rect& rect, double container_w, double container_h, double depth);
Rect unmap_from_scene(const Vec3& translation, double w, double h, double container_w,
                      double container_h);

// HUD rig around already-built GUI content. The proximity strategy pairs a
// ProximitySensor with two ROUTEs driving the GUI root transform; the layer
// strategy hands the content to a Layer3D overlay.
xml::Node emit_hud_rig(const EmitConfig& config, xml::Node gui_root);

// One ExternProtoDeclare per used kind, catalog order, url = library#Name.
std::vector<xml::Node> emit_extern_protos(const std::vector<WidgetKind>& used_kinds,
                                          const std::string& library_url);

struct EmitResult {
    xml::Document document;
    std::vector<std::string> warnings;
};

// Full back end: validated, id-assigned tree in, X3D document out. Layouts
// are computed from the declared or minimum frame sizes.
EmitResult emit_scene(const WidgetTree& tree, const EmitConfig& config);

std::string serialize_xml(const xml::Document& document, bool pretty = true);

}  // namespace x3dui::emit
