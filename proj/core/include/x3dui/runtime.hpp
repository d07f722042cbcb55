#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "x3dui/layout.hpp"
#include "x3dui/widget.hpp"

namespace x3dui {

enum class FrameStatus { Normal, Minimized, Maximized, Closed };
std::string_view frame_status_name(FrameStatus status);

struct UiEvent {
    enum class Type { MouseDown, MouseUp, MouseDrag, KeyPress, ViewportResize };
    Type type = Type::MouseDown;
    double x = 0, y = 0;   // mouse events, viewport space
    std::string key;       // printable char or Backspace/Enter/Escape/Home/End/Left/Right
    double w = 0, h = 0;   // viewport resize

    static UiEvent mouse_down(double x, double y) { return {Type::MouseDown, x, y}; }
    static UiEvent mouse_up(double x, double y) { return {Type::MouseUp, x, y}; }
    static UiEvent mouse_drag(double x, double y) { return {Type::MouseDrag, x, y}; }
    static UiEvent key_press(std::string key) {
        UiEvent e;
        e.type = Type::KeyPress;
        e.key = std::move(key);
        return e;
    }
    static UiEvent viewport_resize(double w, double h) {
        UiEvent e;
        e.type = Type::ViewportResize;
        e.w = w;
        e.h = h;
        return e;
    }
};

struct OutputEvent {
    enum class Type {
        IsPressed,
        IsClicked,
        StatusChanged,
        SelectionChanged,
        ValueChanged,
        TextChanged,
        FrameActivated,
        FrameStatusChanged,
    };
    Type type = Type::IsClicked;
    int id = -1;
    bool flag = false;
    int index = 0;
    double value = 0;
    std::string text;
    FrameStatus status = FrameStatus::Normal;

    std::string to_string() const;

    static OutputEvent is_pressed(int id, bool down);
    static OutputEvent is_clicked(int id);
    static OutputEvent status_changed(int id, bool value);
    static OutputEvent selection_changed(int id, int index);
    static OutputEvent value_changed(int id, double value);
    static OutputEvent text_changed(int id, std::string text);
    static OutputEvent frame_activated(int id);
    static OutputEvent frame_status(int id, FrameStatus status);
};

using Outputs = std::vector<OutputEvent>;

struct TextFieldState {
    std::string buffer;
    int cursor = 0;
    int window_offset = 0;  // first visible character
};

struct FrameState {
    Rect rect;        // full window, header included
    Rect saved_rect;  // geometry remembered across maximize
    FrameStatus status = FrameStatus::Normal;
};

struct DesktopState {
    std::vector<int> frame_stack;  // back ... front
    std::optional<int> active_frame;
    std::vector<int> bands;        // frame ids, creation order
    std::map<int, FrameState> frames;

    std::map<int, bool> toggles;          // toggle buttons pressed / checkboxes checked
    std::map<int, int> radio_selection;   // group id -> selected member id
    std::map<int, TextFieldState> textfields;
    std::optional<int> focused_field;
    std::map<int, double> sliders;
    std::map<int, bool> combo_open;
    std::map<int, int> combo_selection;   // -1 = none
    std::map<int, int> active_tab;

    double viewport_w = 800, viewport_h = 600;

    std::optional<int> pressed_widget;  // MouseDown target awaiting release
    enum class DragKind { None, MoveFrame, ResizeFrame, SliderRunner };
    DragKind drag = DragKind::None;
    int drag_target = -1;
    double drag_dx = 0, drag_dy = 0;  // grab offset / edge anchor
    int drag_edge = 0;                // bitmask: 1=left 2=right 4=top 8=bottom
};

// Keeps a child rect fully inside the viewport; children larger than the
// viewport are pinned to the origin on the oversized axis.
Rect layer_constrain(Rect child, double viewport_w, double viewport_h);

struct SliderConfig {
    double min = 0, max = 100;
    int intervals = 0;
    bool discrete = false;
};

// Bound clamping, descending ranges, and discrete snapping (midpoint ties go
// to the mark nearer min).
double slider_correct(const SliderConfig& config, double requested);

// Pure text-field reducer; `finished` is set by Enter/Escape.
struct KeyOutcome {
    bool text_changed = false;
    bool finished = false;
};
KeyOutcome textfield_key(TextFieldState& field, const std::string& key,
                         std::optional<int> max_length, int visible_chars);

// The deterministic desktop state machine. One owner processes events
// sequentially; every transition is a pure function of (state, layout, event).
class Desktop {
public:
    explicit Desktop(WidgetTree tree, double viewport_w = 800, double viewport_h = 600);

    const WidgetTree& tree() const { return tree_; }
    const DesktopState& state() const { return state_; }

    Outputs dispatch(const UiEvent& event);

    // Window management (also reachable through dispatch).
    Outputs activate_frame(int frame_id);
    Outputs control_button_action(int frame_id, ControlKind kind);
    Outputs taskbar_click(int band_index);

    // Widget reducers.
    Outputs toggle_widget(int widget_id);
    Outputs radio_select(int group_id, int member_id);
    Outputs combo_open_click(int combo_id);
    Outputs combo_select_item(int combo_id, int item_index);
    Outputs combo_dismiss(int combo_id);
    Outputs tab_select(int tab_panel_id, int tab_index);
    Outputs slider_set(int slider_id, double value);
    Outputs slider_drag(int slider_id, double pointer_x);
    Outputs frame_resize(int frame_id, Size requested);
    Outputs frame_move(int frame_id, double x, double y);

    // Topmost widget under the point: path of ids, outermost frame first.
    // Empty when the point misses every widget and the taskbar.
    std::vector<int> hit_test(double x, double y) const;

    const TreeLayout& frame_layout(int frame_id) const;
    Rect widget_rect(int frame_id, int widget_id) const;  // viewport space
    Rect frame_content_rect(int frame_id) const;
    Rect taskbar_rect() const;
    Rect band_rect(int band_index) const;
    std::vector<Rect> control_button_rects(int frame_id) const;  // right to left
    std::vector<Rect> tab_header_rects(int frame_id, int tab_panel_id) const;
    std::vector<Rect> combo_item_rects(int frame_id, int combo_id) const;
    double header_height() const;

    const WidgetNode* find_widget(int widget_id) const;
    const WidgetNode* frame_of_widget(int widget_id) const;

    // FNV-1a digest over the canonical state dump; trace files end with it.
    std::uint64_t state_digest() const;
    std::string dump_state() const;

    // Invariant audit used by the fuzz harness; returns human-readable
    // violations, empty when the state is consistent.
    std::vector<std::string> audit() const;

private:
    WidgetTree tree_;
    DesktopState state_;
    std::map<int, TreeLayout> layouts_;

    void relayout(int frame_id);
    void relayout_all();
    const WidgetNode* frame_node(int frame_id) const;
    Outputs route_mouse_down(double x, double y);
    Outputs route_mouse_up(double x, double y);
    Outputs route_mouse_drag(double x, double y);
    Outputs route_key(const std::string& key);
    Outputs route_viewport_resize(double w, double h);
    std::vector<int> path_to(int frame_id, int widget_id) const;
    Outputs press_release_actions(int widget_id, bool same_target);
    SliderConfig slider_config(int slider_id) const;
    Rect slider_track_rect(int frame_id, int slider_id) const;
    void deactivate_current(Outputs& outputs);
};

// Event-script JSON: a list of records with monotone `seq` numbers. Throws
// std::runtime_error naming the offending record index.
std::vector<UiEvent> parse_event_script(const std::string& json_text);
std::string event_to_json(const UiEvent& event);
std::string output_to_json(const OutputEvent& output);

}  // namespace x3dui
