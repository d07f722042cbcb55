#pragma once

#include <map>
#include <optional>
#include <vector>

#include "x3dui/widget.hpp"

namespace x3dui {

struct Rect {
    double x = 0, y = 0, w = 0, h = 0;

    bool contains(double px, double py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    bool intersects(const Rect& other) const {
        return x < other.x + other.w && other.x < x + w && y < other.y + other.h &&
               other.y < y + h;
    }
};

struct Size {
    double w = 0, h = 0;
};

// Result of one doLayout pass. Placements are indexed by child position for
// the low-level algorithms and by widget id for the tree-level driver.
struct ComputedLayout {
    std::vector<std::optional<Rect>> slots;  // per input child; empty = not placed
    double min_width = 0;
    double min_height = 0;
    double container_w = 0;  // post-enlargement container size
    double container_h = 0;
};

ComputedLayout layout_flow(double container_w, const std::vector<Size>& children, double hgap,
                           double vgap);

ComputedLayout layout_border(Size container, const std::map<Region, Size>& regions, double hgap,
                             double vgap);

ComputedLayout layout_box(LayoutSpec::Orientation orientation, const std::vector<Size>& children,
                          double gap, LayoutSpec::HAlign halign, LayoutSpec::VAlign valign,
                          Size container);

ComputedLayout layout_grid(int rows, int cols, const std::vector<Size>& children, double hgap,
                           double vgap, bool compress_horizontally, bool compress_vertically);

// Intrinsic size of a widget: text metrics for text-bearing controls, the
// layout's minimum for containers. Explicit width/height props override.
Size measure_widget(const WidgetNode& node, const Settings& settings);

// Minimum size a container may take given the proposed size. Flow depends on
// the proposed width; Border/Box/Grid do not.
Size compute_min_size(const WidgetNode& container, const Settings& settings, Size proposed);

Size clamp_resize(const WidgetNode& frame, const Settings& settings, Size current, Size requested);

// Recursive doLayout over a container subtree: rectangles for every laid-out
// descendant, in the coordinate space of the given container's content box.
struct TreeLayout {
    std::map<int, Rect> placements;  // widget id -> rect
    Size container;                  // post-enlargement content size
    Size min_size;
};

// `active_tabs` maps TabPanel widget id -> active tab index (default 0); only
// the active tab's content is placed.
TreeLayout layout_widget_tree(const WidgetNode& container, const Settings& settings,
                              Size content_size, const std::map<int, int>& active_tabs = {});

// Layout metric defaults shared with the runtime and emitter.
namespace metrics {
inline constexpr double kPadX = 6;
inline constexpr double kPadY = 4;
inline constexpr double kCheckGap = 4;
}  // namespace metrics

}  // namespace x3dui
