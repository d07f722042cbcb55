#include "x3dui/widget.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "x3dui/xml.hpp"

namespace x3dui {

namespace {

struct KindEntry {
    WidgetKind kind;
    std::string_view name;
    WidgetCategory category;
};

constexpr KindEntry kCatalog[] = {
    {WidgetKind::Display, "Display", WidgetCategory::System},
    {WidgetKind::Settings, "Settings", WidgetCategory::System},
    {WidgetKind::Rectangle, "Rectangle", WidgetCategory::Visual},
    {WidgetKind::Layer, "Layer", WidgetCategory::Visual},
    {WidgetKind::Plane, "Plane", WidgetCategory::Visual},
    {WidgetKind::Button, "Button", WidgetCategory::Visual},
    {WidgetKind::ToggleButton, "ToggleButton", WidgetCategory::Visual},
    {WidgetKind::TextButton, "TextButton", WidgetCategory::Visual},
    {WidgetKind::TextToggleButton, "TextToggleButton", WidgetCategory::Visual},
    {WidgetKind::CheckBox, "CheckBox", WidgetCategory::Visual},
    {WidgetKind::RadioButton, "RadioButton", WidgetCategory::Visual},
    {WidgetKind::ControlButton, "ControlButton", WidgetCategory::Visual},
    {WidgetKind::Label, "Label", WidgetCategory::Visual},
    {WidgetKind::TextField, "TextField", WidgetCategory::Visual},
    {WidgetKind::ComboBox, "ComboBox", WidgetCategory::Visual},
    {WidgetKind::HorizontalSlider, "HorizontalSlider", WidgetCategory::Visual},
    {WidgetKind::HorizontalRunner, "HorizontalRunner", WidgetCategory::Visual},
    {WidgetKind::Panel, "Panel", WidgetCategory::Visual},
    {WidgetKind::TabPanel, "TabPanel", WidgetCategory::Visual},
    {WidgetKind::Frame, "Frame", WidgetCategory::Visual},
    {WidgetKind::TaskBar, "TaskBar", WidgetCategory::Visual},
    {WidgetKind::RadioButtonGroup, "RadioButtonGroup", WidgetCategory::Group},
    {WidgetKind::LayoutManager, "LayoutManager", WidgetCategory::Layout},
    {WidgetKind::BorderLayout, "BorderLayout", WidgetCategory::Layout},
    {WidgetKind::BoxLayout, "BoxLayout", WidgetCategory::Layout},
    {WidgetKind::GridLayout, "GridLayout", WidgetCategory::Layout},
    {WidgetKind::FlowLayout, "FlowLayout", WidgetCategory::Layout},
};

const KindEntry& entry_of(WidgetKind kind) {
    for (const auto& e : kCatalog) {
        if (e.kind == kind) return e;
    }
    return kCatalog[0];  // unreachable
}

size_t utf8_length(std::string_view text) {
    size_t n = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

}  // namespace

WidgetCategory category_of(WidgetKind kind) { return entry_of(kind).category; }

std::string_view kind_name(WidgetKind kind) { return entry_of(kind).name; }

std::optional<WidgetKind> kind_from_name(std::string_view name) {
    for (const auto& e : kCatalog) {
        if (e.name == name) return e.kind;
    }
    return std::nullopt;
}

const std::vector<WidgetKind>& widget_catalog() {
    static const std::vector<WidgetKind> catalog = [] {
        std::vector<WidgetKind> kinds;
        for (const auto& e : kCatalog) kinds.push_back(e.kind);
        return kinds;
    }();
    return catalog;
}

WidgetKind LayoutSpec::prototype() const {
    switch (kind) {
        case Kind::Flow: return WidgetKind::FlowLayout;
        case Kind::Border: return WidgetKind::BorderLayout;
        case Kind::Box: return WidgetKind::BoxLayout;
        case Kind::Grid: return WidgetKind::GridLayout;
    }
    return WidgetKind::FlowLayout;
}

std::string_view region_name(Region r) {
    switch (r) {
        case Region::North: return "NORTH";
        case Region::South: return "SOUTH";
        case Region::West: return "WEST";
        case Region::East: return "EAST";
        case Region::Center: return "CENTER";
    }
    return "CENTER";
}

std::string_view control_kind_name(ControlKind c) {
    switch (c) {
        case ControlKind::Minimize: return "MINIMIZE";
        case ControlKind::Maximize: return "MAXIMIZE";
        case ControlKind::Normalize: return "NORMALIZE";
        case ControlKind::Close: return "CLOSE";
    }
    return "CLOSE";
}

const WidgetNode* WidgetNode::find(int widget_id) const {
    if (id == widget_id) return this;
    for (const auto& child : children) {
        if (const WidgetNode* hit = child.find(widget_id)) return hit;
    }
    return nullptr;
}

TextSize measure_text(std::string_view text, double font_size) {
    return {TextMetrics::char_width(font_size) * static_cast<double>(utf8_length(text)),
            TextMetrics::line_height(font_size)};
}

EllipsizedBlock ellipsize_lines(const std::vector<std::string>& lines, double max_width,
                                double font_size) {
    const double char_w = TextMetrics::char_width(font_size);
    const double ellipsis_w = char_w * static_cast<double>(TextMetrics::kEllipsis.size());
    EllipsizedBlock block;
    for (const auto& line : lines) {
        double w = measure_text(line, font_size).width;
        if (w <= max_width) {
            block.lines.push_back(line);
            block.width = std::max(block.width, w);
            continue;
        }
        // Keep as many leading characters as fit together with the ellipsis.
        long budget =
            static_cast<long>(std::floor(max_width / char_w + 1e-9)) -
            static_cast<long>(TextMetrics::kEllipsis.size());
        if (budget < 0) budget = 0;
        // budget counts code points; walk the UTF-8 prefix
        std::string truncated;
        long taken = 0;
        for (size_t i = 0; i < line.size() && taken < budget;) {
            size_t len = 1;
            unsigned char c = static_cast<unsigned char>(line[i]);
            if ((c & 0xE0) == 0xC0) len = 2;
            else if ((c & 0xF0) == 0xE0) len = 3;
            else if ((c & 0xF8) == 0xF0) len = 4;
            truncated += line.substr(i, len);
            i += len;
            ++taken;
        }
        truncated += TextMetrics::kEllipsis;
        block.lines.push_back(truncated);
        block.width = std::max(block.width, measure_text(truncated, font_size).width);
    }
    // Even an empty budget must accommodate the ellipsis.
    if (block.width > max_width) block.width = std::max(block.width, ellipsis_w);
    block.height = static_cast<double>(block.lines.size()) * TextMetrics::line_height(font_size);
    return block;
}

UiSpecError::UiSpecError(const std::string& message, int line_, int column_)
    : std::runtime_error(message + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(column_)),
      line(line_),
      column(column_) {}

namespace {

[[noreturn]] void spec_fail(const xml::Node& at, const std::string& message) {
    throw UiSpecError(message, at.line, at.column);
}

double parse_number(const xml::Node& at, const std::string& name, const std::string& value) {
    try {
        size_t idx = 0;
        double v = std::stod(value, &idx);
        while (idx < value.size() && std::isspace(static_cast<unsigned char>(value[idx]))) ++idx;
        if (idx != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (...) {
        spec_fail(at, "attribute '" + name + "' expects a number, got \"" + value + "\"");
    }
}

int parse_int(const xml::Node& at, const std::string& name, const std::string& value) {
    double v = parse_number(at, name, value);
    if (v != std::floor(v)) {
        spec_fail(at, "attribute '" + name + "' expects an integer, got \"" + value + "\"");
    }
    return static_cast<int>(v);
}

bool parse_bool(const xml::Node& at, const std::string& name, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    spec_fail(at, "attribute '" + name + "' expects true/false, got \"" + value + "\"");
}

Color parse_color(const xml::Node& at, const std::string& name, const std::string& value) {
    if (!value.empty() && value[0] == '#') {
        if (value.size() != 7) spec_fail(at, "attribute '" + name + "' expects #RRGGBB");
        auto hex = [&](size_t i) {
            return static_cast<double>(std::stoi(value.substr(i, 2), nullptr, 16)) / 255.0;
        };
        try {
            return {hex(1), hex(3), hex(5)};
        } catch (...) {
            spec_fail(at, "attribute '" + name + "' expects #RRGGBB");
        }
    }
    std::istringstream in(value);
    Color c;
    if (!(in >> c.r >> c.g >> c.b)) {
        spec_fail(at, "attribute '" + name + "' expects \"r g b\" or #RRGGBB");
    }
    return c;
}

std::string unescape_newlines(const std::string& value) {
    std::string out;
    for (size_t i = 0; i < value.size(); ++i) {
        if (value[i] == '\\' && i + 1 < value.size() && value[i + 1] == 'n') {
            out.push_back('\n');
            ++i;
        } else {
            out.push_back(value[i]);
        }
    }
    return out;
}

std::vector<std::string> split(const std::string& value, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : value) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

Region parse_region(const xml::Node& at, const std::string& value) {
    for (Region r : {Region::North, Region::South, Region::West, Region::East, Region::Center}) {
        if (region_name(r) == value) return r;
    }
    spec_fail(at, "unknown region \"" + value + "\"");
}

ControlKind parse_control_kind(const xml::Node& at, const std::string& value) {
    for (ControlKind c :
         {ControlKind::Minimize, ControlKind::Maximize, ControlKind::Normalize,
          ControlKind::Close}) {
        if (control_kind_name(c) == value) return c;
    }
    spec_fail(at, "unknown control button type \"" + value + "\"");
}

bool is_container_kind(WidgetKind kind) {
    return kind == WidgetKind::Frame || kind == WidgetKind::Panel ||
           kind == WidgetKind::Rectangle || kind == WidgetKind::Plane ||
           kind == WidgetKind::Layer;
}

// Applies the layout-selecting attributes; returns true if `name` was consumed.
bool apply_layout_attr(WidgetNode& node, const xml::Node& at, const std::string& name,
                       const std::string& value) {
    auto spec = [&]() -> LayoutSpec& {
        if (!node.layout) node.layout = LayoutSpec{};
        return *node.layout;
    };
    if (name == "layout") {
        if (value == "flow") spec().kind = LayoutSpec::Kind::Flow;
        else if (value == "border") spec().kind = LayoutSpec::Kind::Border;
        else if (value == "box") spec().kind = LayoutSpec::Kind::Box;
        else if (value == "grid") spec().kind = LayoutSpec::Kind::Grid;
        else spec_fail(at, "unknown layout \"" + value + "\"");
        return true;
    }
    if (name == "hgap") { spec().hgap = parse_number(at, name, value); return true; }
    if (name == "vgap") { spec().vgap = parse_number(at, name, value); return true; }
    if (name == "gap") { spec().gap = parse_number(at, name, value); return true; }
    if (name == "orientation") {
        if (value == "row") spec().orientation = LayoutSpec::Orientation::Row;
        else if (value == "column") spec().orientation = LayoutSpec::Orientation::Column;
        else spec_fail(at, "orientation expects row/column, got \"" + value + "\"");
        return true;
    }
    if (name == "halign") {
        if (value == "left") spec().halign = LayoutSpec::HAlign::Left;
        else if (value == "center") spec().halign = LayoutSpec::HAlign::Center;
        else if (value == "right") spec().halign = LayoutSpec::HAlign::Right;
        else spec_fail(at, "halign expects left/center/right");
        return true;
    }
    if (name == "valign") {
        if (value == "top") spec().valign = LayoutSpec::VAlign::Top;
        else if (value == "center") spec().valign = LayoutSpec::VAlign::Center;
        else if (value == "bottom") spec().valign = LayoutSpec::VAlign::Bottom;
        else spec_fail(at, "valign expects top/center/bottom");
        return true;
    }
    if (name == "rows") { spec().rows = parse_int(at, name, value); return true; }
    if (name == "cols") { spec().cols = parse_int(at, name, value); return true; }
    if (name == "compressHorizontally") {
        spec().compress_horizontally = parse_bool(at, name, value);
        return true;
    }
    if (name == "compressVertically") {
        spec().compress_vertically = parse_bool(at, name, value);
        return true;
    }
    return false;
}

WidgetNode parse_widget_element(const xml::Node& element);

void parse_children(WidgetNode& node, const xml::Node& element) {
    for (const auto& child : element.children) {
        if (child.type == xml::Node::Type::Comment) continue;
        if (child.type == xml::Node::Type::Text) {
            if (!child.whitespace_only) spec_fail(child, "unexpected text content");
            continue;
        }
        if (node.kind == WidgetKind::TabPanel) {
            if (child.name != "Tab") {
                spec_fail(child, "TabPanel children must be Tab elements, found '" + child.name +
                                     "'");
            }
            WidgetNode tab;
            tab.kind = WidgetKind::Panel;
            tab.tab_wrapper = true;
            tab.layout = LayoutSpec{};
            tab.line = child.line;
            tab.column = child.column;
            for (const auto& attr : child.attributes) {
                if (attr.name == "title") tab.tab_title = attr.value;
                else if (!apply_layout_attr(tab, child, attr.name, attr.value))
                    spec_fail(child, "unknown attribute '" + attr.name + "' on Tab");
            }
            parse_children(tab, child);
            node.children.push_back(std::move(tab));
            continue;
        }
        node.children.push_back(parse_widget_element(child));
    }
}

WidgetNode parse_widget_element(const xml::Node& element) {
    auto kind = kind_from_name(element.name);
    if (!kind) spec_fail(element, "unknown element " + element.name);
    if (category_of(*kind) == WidgetCategory::Layout || *kind == WidgetKind::Display ||
        *kind == WidgetKind::Settings) {
        spec_fail(element, "element '" + element.name + "' cannot appear as a widget");
    }

    WidgetNode node;
    node.kind = *kind;
    node.line = element.line;
    node.column = element.column;
    if (is_container_kind(node.kind)) node.layout = LayoutSpec{};  // FlowLayout default

    for (const auto& attr : element.attributes) {
        const std::string& name = attr.name;
        const std::string& value = attr.value;
        if (name == "title") { node.title = value; continue; }
        if (name == "text") { node.text = unescape_newlines(value); continue; }
        if (name == "width") { node.width = parse_number(element, name, value); continue; }
        if (name == "height") { node.height = parse_number(element, name, value); continue; }
        if (name == "x") { node.x = parse_number(element, name, value); continue; }
        if (name == "y") { node.y = parse_number(element, name, value); continue; }
        if (name == "color") { node.color = parse_color(element, name, value); continue; }
        if (name == "transparency") {
            node.transparency = parse_number(element, name, value);
            continue;
        }
        if (name == "border") {
            if (value == "lowered") node.border = BorderStyle::Lowered;
            else if (value == "raised") node.border = BorderStyle::Raised;
            else if (value == "edging") node.border = BorderStyle::Edging;
            else if (value == "none") node.border = BorderStyle::None;
            else spec_fail(element, "unknown border style \"" + value + "\"");
            continue;
        }
        if (name == "visible") { node.visible = parse_bool(element, name, value); continue; }
        if (name == "region") { node.region = parse_region(element, value); continue; }
        if (name == "checked") { node.checked = parse_bool(element, name, value); continue; }
        if (node.kind == WidgetKind::HorizontalSlider || node.kind == WidgetKind::HorizontalRunner) {
            if (name == "min") { node.min_value = parse_number(element, name, value); continue; }
            if (name == "max") { node.max_value = parse_number(element, name, value); continue; }
            if (name == "value") { node.value = parse_number(element, name, value); continue; }
            if (name == "intervals") { node.intervals = parse_int(element, name, value); continue; }
            if (name == "discrete") { node.discrete = parse_bool(element, name, value); continue; }
        }
        if (node.kind == WidgetKind::TextField && name == "maxLength") {
            node.max_length = parse_int(element, name, value);
            continue;
        }
        if (node.kind == WidgetKind::ComboBox && name == "items") {
            node.items = split(value, '|');
            continue;
        }
        if (node.kind == WidgetKind::ControlButton && name == "type") {
            node.control = parse_control_kind(element, value);
            continue;
        }
        if (node.kind == WidgetKind::Frame) {
            if (name == "resizable") { node.resizable = parse_bool(element, name, value); continue; }
            if (name == "docked") { node.docked = parse_bool(element, name, value); continue; }
            if (name == "controls") {
                for (const auto& part : split(value, ',')) {
                    WidgetNode button;
                    button.kind = WidgetKind::ControlButton;
                    button.control = parse_control_kind(element, part);
                    button.line = element.line;
                    button.column = element.column;
                    node.children.push_back(std::move(button));
                }
                continue;
            }
        }
        if (is_container_kind(node.kind) && apply_layout_attr(node, element, name, value)) continue;
        spec_fail(element, "unknown attribute '" + name + "' on " + element.name);
    }

    parse_children(node, element);
    return node;
}

void parse_settings_element(Settings& settings, const xml::Node& element) {
    for (const auto& attr : element.attributes) {
        const std::string& name = attr.name;
        const std::string& value = attr.value;
        if (name == "fontSize") settings.font_size = parse_number(element, name, value);
        else if (name == "hgap") settings.hgap = parse_number(element, name, value);
        else if (name == "vgap") settings.vgap = parse_number(element, name, value);
        else if (name == "DEBUG" || name == "debug") settings.debug = parse_bool(element, name, value);
        else if (name == "imagePath") settings.image_path = value;
        else if (name == "activeFrameColor")
            settings.active_frame_color = parse_color(element, name, value);
        else if (name == "inactiveFrameColor")
            settings.inactive_frame_color = parse_color(element, name, value);
        else if (name == "buttonFaceColor")
            settings.button_face_color = parse_color(element, name, value);
        else if (name == "textColor") settings.text_color = parse_color(element, name, value);
        else spec_fail(element, "unknown attribute '" + name + "' on Settings");
    }
    if (settings.font_size <= 0) spec_fail(element, "fontSize must be positive");
}

}  // namespace

WidgetTree parse_ui_spec(std::string_view source) {
    xml::Document doc = xml::parse(source);
    WidgetTree tree;
    tree.display.kind = WidgetKind::Display;
    tree.display.line = doc.root.line;
    tree.display.column = doc.root.column;

    if (doc.root.name == "Display") {
        for (const auto& attr : doc.root.attributes) {
            if (attr.name == "imagePath") tree.settings.image_path = attr.value;
            else spec_fail(doc.root, "unknown attribute '" + attr.name + "' on Display");
        }
        for (const auto& child : doc.root.children) {
            if (child.type == xml::Node::Type::Comment) continue;
            if (child.type == xml::Node::Type::Text) {
                if (!child.whitespace_only) spec_fail(child, "unexpected text content");
                continue;
            }
            if (child.name == "Settings") {
                parse_settings_element(tree.settings, child);
                continue;
            }
            tree.display.children.push_back(parse_widget_element(child));
        }
    } else {
        tree.display.children.push_back(parse_widget_element(doc.root));
    }

    // Implicit singleton TaskBar.
    bool has_taskbar =
        std::any_of(tree.display.children.begin(), tree.display.children.end(),
                    [](const WidgetNode& n) { return n.kind == WidgetKind::TaskBar; });
    if (!has_taskbar) {
        WidgetNode taskbar;
        taskbar.kind = WidgetKind::TaskBar;
        tree.display.children.push_back(std::move(taskbar));
    }
    return tree;
}

void apply_theme(Settings& settings, std::string_view theme_text) {
    xml::Node dummy;  // position-less error anchor for value diagnostics
    std::istringstream in{std::string(theme_text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        dummy.line = line_no;
        dummy.column = 1;
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        // '#' starts a comment only at line head so hex colors stay intact
        if (line[begin] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw UiSpecError("theme line missing '='", line_no, 1);
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "fontSize") settings.font_size = parse_number(dummy, key, value);
        else if (key == "hgap") settings.hgap = parse_number(dummy, key, value);
        else if (key == "vgap") settings.vgap = parse_number(dummy, key, value);
        else if (key == "DEBUG" || key == "debug") settings.debug = parse_bool(dummy, key, value);
        else if (key == "imagePath") settings.image_path = value;
        else if (key == "activeFrameColor") settings.active_frame_color = parse_color(dummy, key, value);
        else if (key == "inactiveFrameColor")
            settings.inactive_frame_color = parse_color(dummy, key, value);
        else if (key == "buttonFaceColor") settings.button_face_color = parse_color(dummy, key, value);
        else if (key == "textColor") settings.text_color = parse_color(dummy, key, value);
        else throw UiSpecError("unknown theme key '" + key + "'", line_no, 1);
    }
}

namespace {

void validate_node(const WidgetNode& node, const WidgetNode* parent, ValidationReport& report) {
    auto violate = [&](std::string message) {
        report.violations.push_back({std::move(message), node.line, node.column});
    };

    if (node.transparency < 0 || node.transparency > 1) {
        violate(std::string(kind_name(node.kind)) + ": transparency must be within [0,1]");
    }
    if (node.width && *node.width <= 0) {
        violate(std::string(kind_name(node.kind)) + ": width must be positive");
    }
    if (node.height && *node.height <= 0) {
        violate(std::string(kind_name(node.kind)) + ": height must be positive");
    }

    switch (node.kind) {
        case WidgetKind::ControlButton: {
            if (!parent || parent->kind != WidgetKind::Frame) {
                violate("ControlButton is only allowed in a Frame header");
            }
            if (!node.control) violate("ControlButton requires a type");
            break;
        }
        case WidgetKind::RadioButton: {
            if (!parent || parent->kind != WidgetKind::RadioButtonGroup) {
                violate("RadioButton must sit under a RadioButtonGroup");
            }
            break;
        }
        case WidgetKind::HorizontalRunner: {
            if (!parent || parent->kind != WidgetKind::HorizontalSlider) {
                violate("HorizontalRunner is only allowed under HorizontalSlider");
            }
            break;
        }
        case WidgetKind::Frame: {
            int control_count = 0;
            bool has_maximize = false, has_normalize = false;
            for (const auto& child : node.children) {
                if (child.kind != WidgetKind::ControlButton) continue;
                ++control_count;
                if (child.control == ControlKind::Maximize) has_maximize = true;
                if (child.control == ControlKind::Normalize) has_normalize = true;
            }
            if (control_count > 3) {
                violate("Frame header holds at most three control buttons");
            }
            if (has_maximize && has_normalize) {
                violate("MAXIMIZE and NORMALIZE control buttons must not be co-declared");
            }
            break;
        }
        case WidgetKind::TabPanel: {
            for (const auto& child : node.children) {
                if (!child.tab_wrapper) {
                    report.violations.push_back(
                        {"TabPanel children must be Tab wrappers", child.line, child.column});
                }
            }
            break;
        }
        default:
            break;
    }

    for (const auto& child : node.children) validate_node(child, &node, report);
}

}  // namespace

ValidationReport validate_tree(const WidgetTree& tree) {
    ValidationReport report;
    for (const auto& child : tree.display.children) {
        if (child.kind != WidgetKind::Frame && child.kind != WidgetKind::TaskBar) {
            report.violations.push_back(
                {"root must be Frame: found " + std::string(kind_name(child.kind)) +
                     " at desktop root",
                 child.line, child.column});
        }
    }
    for (const auto& child : tree.display.children) {
        validate_node(child, &tree.display, report);
    }
    return report;
}

namespace {

void assign_ids_rec(WidgetNode& node, int& next) {
    node.id = next++;
    for (auto& child : node.children) assign_ids_rec(child, next);
}

}  // namespace

WidgetTree assign_ids(WidgetTree tree) {
    tree.display.id = 0;
    int next = 1;
    for (auto& child : tree.display.children) assign_ids_rec(child, next);
    return tree;
}

}  // namespace x3dui
