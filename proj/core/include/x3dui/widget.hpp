#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace x3dui {

// The prototype catalog. Twenty-seven kinds partitioned into four categories:
// system (2), visual (19), group (1), layout (5).
enum class WidgetKind {
    // system
    Display,
    Settings,
    // visual
    Rectangle,
    Layer,
    Plane,
    Button,
    ToggleButton,
    TextButton,
    TextToggleButton,
    CheckBox,
    RadioButton,
    ControlButton,
    Label,
    TextField,
    ComboBox,
    HorizontalSlider,
    HorizontalRunner,
    Panel,
    TabPanel,
    Frame,
    TaskBar,
    // group
    RadioButtonGroup,
    // layout
    LayoutManager,
    BorderLayout,
    BoxLayout,
    GridLayout,
    FlowLayout,
};

enum class WidgetCategory { System, Visual, Group, Layout };

WidgetCategory category_of(WidgetKind kind);
std::string_view kind_name(WidgetKind kind);
std::optional<WidgetKind> kind_from_name(std::string_view name);
const std::vector<WidgetKind>& widget_catalog();  // all 27, stable order

enum class BorderStyle { None, Lowered, Raised, Edging };
enum class Region { North, South, West, East, Center };
enum class ControlKind { Minimize, Maximize, Normalize, Close };

std::string_view region_name(Region r);
std::string_view control_kind_name(ControlKind c);

struct Color {
    double r = 0, g = 0, b = 0;
};

// Container layout parameters. The four algorithms live in layout.hpp; this
// is only the declarative profile a Panel/Frame carries.
struct LayoutSpec {
    enum class Kind { Flow, Border, Box, Grid };
    enum class Orientation { Row, Column };
    enum class HAlign { Left, Center, Right };
    enum class VAlign { Top, Center, Bottom };

    Kind kind = Kind::Flow;
    double hgap = 5;
    double vgap = 5;
    Orientation orientation = Orientation::Row;  // box
    HAlign halign = HAlign::Left;                // box
    VAlign valign = VAlign::Top;                 // box
    double gap = 5;                              // box main-axis gap
    int rows = 1;                                // grid
    int cols = 1;                                // grid
    bool compress_horizontally = false;          // grid
    bool compress_vertically = false;            // grid

    WidgetKind prototype() const;  // FlowLayout / BorderLayout / BoxLayout / GridLayout
};

struct WidgetNode {
    int id = -1;  // assigned by assign_ids; Display owns 0
    WidgetKind kind = WidgetKind::Panel;

    std::string title;
    std::string text;                 // label/button/field text; '\n' separates label lines
    std::vector<std::string> items;   // combo box entries

    std::optional<double> width, height;   // explicit size override
    std::optional<double> x, y;            // frame position on the desktop
    std::optional<Color> color;
    double transparency = 0;               // [0,1]
    BorderStyle border = BorderStyle::None;
    bool visible = true;

    std::optional<LayoutSpec> layout;      // containers only
    std::optional<Region> region;          // border-layout placement tag

    // slider
    double min_value = 0, max_value = 100, value = 0;
    int intervals = 0;
    bool discrete = false;

    std::optional<int> max_length;             // text field
    std::optional<ControlKind> control;        // control button subtype
    bool resizable = true, docked = false;     // frame flags
    bool checked = false;                      // toggle/checkbox/radio initial state

    bool tab_wrapper = false;   // Panel created from a <Tab> element
    std::string tab_title;

    std::vector<WidgetNode> children;
    int line = 0, column = 0;  // source position for diagnostics

    const WidgetNode* find(int widget_id) const;
};

// Theme / look-and-feel. Resolved once while building the tree; treated as
// immutable afterwards (every consumer takes it by const reference).
struct Settings {
    Color active_frame_color{0.25, 0.35, 0.60};
    Color inactive_frame_color{0.55, 0.55, 0.60};
    Color button_face_color{0.80, 0.80, 0.78};
    Color text_color{0.05, 0.05, 0.05};
    double font_size = 10;  // abstract pixels
    double hgap = 5;
    double vgap = 5;
    bool debug = false;
    std::string image_path = "images/";
};

struct WidgetTree {
    WidgetNode display;  // kind Display; children = frames (+ optional TaskBar)
    Settings settings;
};

// Fixed-pitch text metric model: charWidth = 0.6*fontSize, lineHeight =
// 1.2*fontSize.
struct TextMetrics {
    static constexpr double kCharFactor = 0.6;
    static constexpr double kLineFactor = 1.2;
    static constexpr std::string_view kEllipsis = "...";

    static double char_width(double font_size) { return kCharFactor * font_size; }
    static double line_height(double font_size) { return kLineFactor * font_size; }
};

struct TextSize {
    double width = 0;
    double height = 0;
};

TextSize measure_text(std::string_view text, double font_size);

struct EllipsizedBlock {
    std::vector<std::string> lines;
    double width = 0;   // component width after ellipsizing (ellipsis floor applies)
    double height = 0;  // line count * line height
};

EllipsizedBlock ellipsize_lines(const std::vector<std::string>& lines, double max_width,
                                double font_size);

struct Violation {
    std::string message;
    int line = 0, column = 0;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// Front end. Throws xml::ParseError (malformed XML) or UiSpecError (unknown
// element/attribute, bad attribute value) with source positions.
class UiSpecError : public std::runtime_error {
public:
    UiSpecError(const std::string& message, int line, int column);
    int line, column;
};

WidgetTree parse_ui_spec(std::string_view source);

// Theme overrides: flat `key=value` lines, '#' comments.
void apply_theme(Settings& settings, std::string_view theme_text);

ValidationReport validate_tree(const WidgetTree& tree);

// Pre-order id assignment: Display = 0, then consecutive integers starting
// at 1 in document order. Idempotent.
WidgetTree assign_ids(WidgetTree tree);

}  // namespace x3dui
