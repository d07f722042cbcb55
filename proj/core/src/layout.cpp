#include "x3dui/layout.hpp"

#include <algorithm>
#include <cmath>

namespace x3dui {

namespace {

double sum_main(const std::vector<Size>& sizes, bool horizontal, double gap) {
    double total = 0;
    for (const auto& s : sizes) total += horizontal ? s.w : s.h;
    if (!sizes.empty()) total += gap * static_cast<double>(sizes.size() - 1);
    return total;
}

}  // namespace

ComputedLayout layout_flow(double container_w, const std::vector<Size>& children, double hgap,
                           double vgap) {
    ComputedLayout out;
    double widest = 0;
    for (const auto& c : children) widest = std::max(widest, c.w);
    double w = std::max(container_w, widest);

    double x = 0, y = 0, row_h = 0;
    for (const auto& c : children) {
        if (x > 0 && x + c.w > w) {
            y += row_h + vgap;
            x = 0;
            row_h = 0;
        }
        out.slots.push_back(Rect{x, y, c.w, c.h});
        x += c.w + hgap;
        row_h = std::max(row_h, c.h);
    }
    out.min_width = widest;
    out.min_height = children.empty() ? 0 : y + row_h;
    out.container_w = w;
    out.container_h = out.min_height;
    return out;
}

ComputedLayout layout_border(Size container, const std::map<Region, Size>& regions, double hgap,
                             double vgap) {
    ComputedLayout out;
    auto get = [&](Region r) -> const Size* {
        auto it = regions.find(r);
        return it == regions.end() ? nullptr : &it->second;
    };
    const Size* north = get(Region::North);
    const Size* south = get(Region::South);
    const Size* west = get(Region::West);
    const Size* east = get(Region::East);
    const Size* center = get(Region::Center);

    int middle_count = (west ? 1 : 0) + (east ? 1 : 0) + (center ? 1 : 0);
    double middle_w = (west ? west->w : 0) + (east ? east->w : 0) + (center ? center->w : 0);
    if (middle_count > 1) middle_w += hgap * static_cast<double>(middle_count - 1);
    double middle_h = std::max({west ? west->h : 0.0, east ? east->h : 0.0,
                                center ? center->h : 0.0});

    double required_w = std::max({north ? north->w : 0.0, south ? south->w : 0.0, middle_w});
    double required_h = (north ? north->h : 0) + (south ? south->h : 0) + middle_h;
    int bands = (north ? 1 : 0) + (south ? 1 : 0) + (middle_count > 0 ? 1 : 0);
    if (bands > 1) required_h += vgap * static_cast<double>(bands - 1);

    double w = std::max(container.w, required_w);
    double h = std::max(container.h, required_h);

    double band_top = north ? north->h + vgap : 0;
    double band_bottom = south ? h - south->h - vgap : h;
    if (middle_count == 0) {
        band_top = 0;  // gap only applies between present bands
        band_bottom = 0;
    }
    double band_h = band_bottom - band_top;

    double center_left = west ? west->w + hgap : 0;
    double center_right = east ? w - east->w - hgap : w;

    auto place = [&](Region r, Rect rect) {
        // slots follow the fixed region order N,S,W,E,C
        out.slots.push_back(rect);
        (void)r;
    };
    out.slots.clear();
    for (Region r : {Region::North, Region::South, Region::West, Region::East, Region::Center}) {
        const Size* s = get(r);
        if (!s) {
            out.slots.push_back(std::nullopt);
            continue;
        }
        switch (r) {
            case Region::North: place(r, {0, 0, w, s->h}); break;
            case Region::South: place(r, {0, h - s->h, w, s->h}); break;
            case Region::West: place(r, {0, band_top, s->w, band_h}); break;
            case Region::East: place(r, {w - s->w, band_top, s->w, band_h}); break;
            case Region::Center:
                place(r, {center_left + (center_right - center_left - s->w) / 2,
                          band_top + (band_h - s->h) / 2, s->w, s->h});
                break;
        }
    }
    out.min_width = required_w;
    out.min_height = required_h;
    out.container_w = w;
    out.container_h = h;
    return out;
}

ComputedLayout layout_box(LayoutSpec::Orientation orientation, const std::vector<Size>& children,
                          double gap, LayoutSpec::HAlign halign, LayoutSpec::VAlign valign,
                          Size container) {
    ComputedLayout out;
    const bool row = orientation == LayoutSpec::Orientation::Row;

    double main_total = sum_main(children, row, gap);
    double cross_max = 0;
    for (const auto& c : children) cross_max = std::max(cross_max, row ? c.h : c.w);

    out.min_width = row ? main_total : cross_max;
    out.min_height = row ? cross_max : main_total;
    out.container_w = std::max(container.w, out.min_width);
    out.container_h = std::max(container.h, out.min_height);

    // The block as a whole is aligned along the main axis; each child is
    // aligned individually across it.
    double main_extent = row ? out.container_w : out.container_h;
    double main_start = 0;
    auto block_align = row ? static_cast<int>(halign) : static_cast<int>(valign);
    if (block_align == 1) main_start = (main_extent - main_total) / 2;  // center
    if (block_align == 2) main_start = main_extent - main_total;       // right/bottom

    double cursor = main_start;
    for (const auto& c : children) {
        double cross_extent = row ? out.container_h : out.container_w;
        double cross_size = row ? c.h : c.w;
        auto cross_align = row ? static_cast<int>(valign) : static_cast<int>(halign);
        double cross = 0;
        if (cross_align == 1) cross = (cross_extent - cross_size) / 2;
        if (cross_align == 2) cross = cross_extent - cross_size;
        if (row) {
            out.slots.push_back(Rect{cursor, cross, c.w, c.h});
            cursor += c.w + gap;
        } else {
            out.slots.push_back(Rect{cross, cursor, c.w, c.h});
            cursor += c.h + gap;
        }
    }
    return out;
}

ComputedLayout layout_grid(int rows, int cols, const std::vector<Size>& children, double hgap,
                           double vgap, bool compress_horizontally, bool compress_vertically) {
    ComputedLayout out;
    rows = std::max(rows, 1);
    cols = std::max(cols, 1);
    const size_t cells = static_cast<size_t>(rows) * static_cast<size_t>(cols);

    double global_w = 0, global_h = 0;
    for (size_t i = 0; i < children.size() && i < cells; ++i) {
        global_w = std::max(global_w, children[i].w);
        global_h = std::max(global_h, children[i].h);
    }

    std::vector<double> col_w(static_cast<size_t>(cols), 0);
    std::vector<double> row_h(static_cast<size_t>(rows), 0);
    for (size_t i = 0; i < children.size() && i < cells; ++i) {
        size_t r = i / static_cast<size_t>(cols);
        size_t c = i % static_cast<size_t>(cols);
        col_w[c] = std::max(col_w[c], children[i].w);
        row_h[r] = std::max(row_h[r], children[i].h);
    }
    if (!compress_horizontally) std::fill(col_w.begin(), col_w.end(), global_w);
    if (!compress_vertically) std::fill(row_h.begin(), row_h.end(), global_h);

    std::vector<double> col_x(static_cast<size_t>(cols), 0);
    std::vector<double> row_y(static_cast<size_t>(rows), 0);
    for (size_t c = 1; c < col_x.size(); ++c) col_x[c] = col_x[c - 1] + col_w[c - 1] + hgap;
    for (size_t r = 1; r < row_y.size(); ++r) row_y[r] = row_y[r - 1] + row_h[r - 1] + vgap;

    for (size_t i = 0; i < children.size(); ++i) {
        if (i >= cells) {
            out.slots.push_back(std::nullopt);  // redundant elements are not rendered
            continue;
        }
        size_t r = i / static_cast<size_t>(cols);
        size_t c = i % static_cast<size_t>(cols);
        out.slots.push_back(Rect{col_x[c], row_y[r], col_w[c], row_h[r]});
    }

    double total_w = 0, total_h = 0;
    for (double wv : col_w) total_w += wv;
    for (double hv : row_h) total_h += hv;
    total_w += hgap * static_cast<double>(cols - 1);
    total_h += vgap * static_cast<double>(rows - 1);
    out.min_width = total_w;
    out.min_height = total_h;
    out.container_w = total_w;
    out.container_h = total_h;
    return out;
}

namespace {

bool is_layout_container(const WidgetNode& node) {
    switch (node.kind) {
        case WidgetKind::Frame:
        case WidgetKind::Panel:
        case WidgetKind::Rectangle:
        case WidgetKind::Plane:
        case WidgetKind::Layer:
            return true;
        default:
            return false;
    }
}

// Children that take part in the parent's layout pass. Control buttons are
// header chrome, the taskbar is desktop chrome.
bool is_layoutable_child(const WidgetNode& node) {
    return node.kind != WidgetKind::ControlButton && node.kind != WidgetKind::TaskBar &&
           node.kind != WidgetKind::HorizontalRunner;
}

std::vector<const WidgetNode*> layoutable_children(const WidgetNode& container) {
    std::vector<const WidgetNode*> out;
    for (const auto& child : container.children) {
        if (is_layoutable_child(child)) out.push_back(&child);
    }
    return out;
}

ComputedLayout run_layout(const LayoutSpec& spec, Size content,
                          const std::vector<const WidgetNode*>& children,
                          const std::vector<Size>& sizes) {
    switch (spec.kind) {
        case LayoutSpec::Kind::Flow:
            return layout_flow(content.w, sizes, spec.hgap, spec.vgap);
        case LayoutSpec::Kind::Border: {
            std::map<Region, Size> regions;
            for (size_t i = 0; i < children.size(); ++i) {
                Region r = children[i]->region.value_or(Region::Center);
                regions.emplace(r, sizes[i]);  // first child per region wins
            }
            ComputedLayout by_region = layout_border(content, regions, spec.hgap, spec.vgap);
            // remap fixed N,S,W,E,C slots back onto child order
            ComputedLayout out = by_region;
            out.slots.assign(children.size(), std::nullopt);
            std::map<Region, bool> used;
            const Region order[] = {Region::North, Region::South, Region::West, Region::East,
                                    Region::Center};
            for (size_t i = 0; i < children.size(); ++i) {
                Region r = children[i]->region.value_or(Region::Center);
                if (used[r]) continue;
                used[r] = true;
                for (size_t ri = 0; ri < 5; ++ri) {
                    if (order[ri] == r) out.slots[i] = by_region.slots[ri];
                }
            }
            return out;
        }
        case LayoutSpec::Kind::Box:
            return layout_box(spec.orientation, sizes, spec.gap, spec.halign, spec.valign,
                              content);
        case LayoutSpec::Kind::Grid:
            return layout_grid(spec.rows, spec.cols, sizes, spec.hgap, spec.vgap,
                               spec.compress_horizontally, spec.compress_vertically);
    }
    return {};
}

Size measure_tab_panel(const WidgetNode& node, const Settings& settings) {
    const double lh = TextMetrics::line_height(settings.font_size);
    double header_w = 0;
    double content_w = 0, content_h = 0;
    for (const auto& tab : node.children) {
        header_w += measure_text(tab.tab_title, settings.font_size).width + 2 * metrics::kPadX + 2;
        Size content = compute_min_size(tab, settings, {0, 0});
        content_w = std::max(content_w, content.w);
        content_h = std::max(content_h, content.h);
    }
    double header_h = node.children.empty() ? 0 : lh + 2 * metrics::kPadY;
    return {std::max(header_w, content_w), header_h + content_h};
}

}  // namespace

Size measure_widget(const WidgetNode& node, const Settings& settings) {
    const double fs = settings.font_size;
    const double lh = TextMetrics::line_height(fs);
    Size size;
    switch (node.kind) {
        case WidgetKind::Button:
        case WidgetKind::ToggleButton:
            size = {lh + 2 * metrics::kPadY, lh + 2 * metrics::kPadY};
            break;
        case WidgetKind::TextButton:
        case WidgetKind::TextToggleButton:
            size = {measure_text(node.text, fs).width + 2 * metrics::kPadX,
                    lh + 2 * metrics::kPadY};
            break;
        case WidgetKind::CheckBox:
        case WidgetKind::RadioButton:
            size = {fs + metrics::kCheckGap + measure_text(node.text, fs).width, lh};
            break;
        case WidgetKind::Label: {
            std::vector<std::string> lines;
            std::string current;
            for (char c : node.text) {
                if (c == '\n') {
                    lines.push_back(current);
                    current.clear();
                } else {
                    current.push_back(c);
                }
            }
            lines.push_back(current);
            double w = 0;
            for (const auto& line : lines) w = std::max(w, measure_text(line, fs).width);
            size = {w, static_cast<double>(lines.size()) * lh};
            break;
        }
        case WidgetKind::TextField: {
            double chars = node.max_length ? static_cast<double>(*node.max_length) : 10.0;
            size = {TextMetrics::char_width(fs) * chars + 2 * metrics::kPadX,
                    lh + 2 * metrics::kPadY};
            break;
        }
        case WidgetKind::ComboBox: {
            double widest = measure_text(node.text, fs).width;
            for (const auto& item : node.items)
                widest = std::max(widest, measure_text(item, fs).width);
            size = {widest + 2 * metrics::kPadX + (lh + 2 * metrics::kPadY),
                    lh + 2 * metrics::kPadY};
            break;
        }
        case WidgetKind::HorizontalSlider:
            size = {100, lh + 8};
            break;
        case WidgetKind::HorizontalRunner:
            size = {fs, fs};
            break;
        case WidgetKind::ControlButton:
            size = {lh, lh};
            break;
        case WidgetKind::TaskBar:
            size = {0, lh + 2 * metrics::kPadY};
            break;
        case WidgetKind::RadioButtonGroup: {
            std::vector<Size> sizes;
            for (const auto& child : node.children) sizes.push_back(measure_widget(child, settings));
            ComputedLayout stacked = layout_box(LayoutSpec::Orientation::Column, sizes, 2,
                                                LayoutSpec::HAlign::Left, LayoutSpec::VAlign::Top,
                                                {0, 0});
            size = {stacked.min_width, stacked.min_height};
            break;
        }
        case WidgetKind::TabPanel:
            size = measure_tab_panel(node, settings);
            break;
        default:
            if (is_layout_container(node)) {
                Size proposed{node.width.value_or(0), node.height.value_or(0)};
                size = compute_min_size(node, settings, proposed);
            }
            break;
    }
    if (node.width) size.w = *node.width;
    if (node.height) size.h = *node.height;
    return size;
}

Size compute_min_size(const WidgetNode& container, const Settings& settings, Size proposed) {
    if (!is_layout_container(container)) {
        Size s = measure_widget(container, settings);
        return s;
    }
    LayoutSpec spec = container.layout.value_or(LayoutSpec{});
    auto children = layoutable_children(container);
    if (children.empty()) {
        // Empty-container floor: the border box alone.
        return {2 * spec.hgap, 2 * spec.vgap};
    }
    std::vector<Size> sizes;
    sizes.reserve(children.size());
    for (const auto* child : children) sizes.push_back(measure_widget(*child, settings));
    ComputedLayout result = run_layout(spec, proposed, children, sizes);
    return {result.min_width, result.min_height};
}

Size clamp_resize(const WidgetNode& frame, const Settings& settings, Size current,
                  Size requested) {
    if (frame.kind == WidgetKind::Frame && !frame.resizable) return current;
    Size min_at_request = compute_min_size(frame, settings, requested);
    double w = std::max(requested.w, min_at_request.w);
    Size min_at_w = compute_min_size(frame, settings, {w, requested.h});
    double h = std::max(requested.h, min_at_w.h);
    return {w, h};
}

namespace {

void layout_rec(const WidgetNode& container, const Settings& settings, Size content,
                const std::map<int, int>& active_tabs, double off_x, double off_y,
                TreeLayout& out);

void place_child(const WidgetNode& child, Rect rect, const Settings& settings,
                 const std::map<int, int>& active_tabs, double off_x, double off_y,
                 TreeLayout& out) {
    Rect absolute{rect.x + off_x, rect.y + off_y, rect.w, rect.h};
    if (child.id >= 0) out.placements[child.id] = absolute;

    if (child.kind == WidgetKind::TabPanel) {
        const double lh = TextMetrics::line_height(settings.font_size);
        double header_h = child.children.empty() ? 0 : lh + 2 * metrics::kPadY;
        int active = 0;
        if (auto it = active_tabs.find(child.id); it != active_tabs.end()) active = it->second;
        if (active >= 0 && static_cast<size_t>(active) < child.children.size()) {
            const WidgetNode& tab = child.children[static_cast<size_t>(active)];
            Rect content{0, header_h, rect.w, rect.h - header_h};
            place_child(tab, content, settings, active_tabs, absolute.x, absolute.y, out);
        }
        return;
    }
    if (child.kind == WidgetKind::RadioButtonGroup) {
        std::vector<Size> sizes;
        for (const auto& option : child.children)
            sizes.push_back(measure_widget(option, settings));
        ComputedLayout stacked =
            layout_box(LayoutSpec::Orientation::Column, sizes, 2, LayoutSpec::HAlign::Left,
                       LayoutSpec::VAlign::Top, {rect.w, rect.h});
        for (size_t i = 0; i < child.children.size(); ++i) {
            if (stacked.slots[i])
                place_child(child.children[i], *stacked.slots[i], settings, active_tabs,
                            absolute.x, absolute.y, out);
        }
        return;
    }
    if (is_layout_container(child)) {
        layout_rec(child, settings, {rect.w, rect.h}, active_tabs, absolute.x, absolute.y, out);
    }
}

void layout_rec(const WidgetNode& container, const Settings& settings, Size content,
                const std::map<int, int>& active_tabs, double off_x, double off_y,
                TreeLayout& out) {
    LayoutSpec spec = container.layout.value_or(LayoutSpec{});
    auto children = layoutable_children(container);
    if (children.empty()) return;
    std::vector<Size> sizes;
    sizes.reserve(children.size());
    for (const auto* child : children) sizes.push_back(measure_widget(*child, settings));
    ComputedLayout result = run_layout(spec, content, children, sizes);
    for (size_t i = 0; i < children.size(); ++i) {
        if (!result.slots[i]) continue;
        place_child(*children[i], *result.slots[i], settings, active_tabs, off_x, off_y, out);
    }
}

}  // namespace

TreeLayout layout_widget_tree(const WidgetNode& container, const Settings& settings,
                              Size content_size, const std::map<int, int>& active_tabs) {
    TreeLayout out;
    Size min = compute_min_size(container, settings, content_size);
    out.min_size = min;
    out.container = {std::max(content_size.w, min.w), std::max(content_size.h, min.h)};
    layout_rec(container, settings, out.container, active_tabs, 0, 0, out);
    return out;
}

}  // namespace x3dui
