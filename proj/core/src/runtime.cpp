#include "x3dui/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace x3dui {

namespace {

constexpr double kEdgeGrip = 4;     // resize handle thickness
constexpr double kCascadeStep = 30; // default frame staggering
constexpr int kEdgeLeft = 1, kEdgeRight = 2, kEdgeTop = 4, kEdgeBottom = 8;

bool is_toggle_kind(WidgetKind kind) {
    return kind == WidgetKind::ToggleButton || kind == WidgetKind::TextToggleButton ||
           kind == WidgetKind::CheckBox;
}

bool is_momentary_button(WidgetKind kind) {
    return kind == WidgetKind::Button || kind == WidgetKind::TextButton;
}

}  // namespace

std::string_view frame_status_name(FrameStatus status) {
    switch (status) {
        case FrameStatus::Normal: return "normal";
        case FrameStatus::Minimized: return "minimized";
        case FrameStatus::Maximized: return "maximized";
        case FrameStatus::Closed: return "closed";
    }
    return "normal";
}

OutputEvent OutputEvent::is_pressed(int id, bool down) {
    OutputEvent e;
    e.type = Type::IsPressed;
    e.id = id;
    e.flag = down;
    return e;
}
OutputEvent OutputEvent::is_clicked(int id) {
    OutputEvent e;
    e.type = Type::IsClicked;
    e.id = id;
    return e;
}
OutputEvent OutputEvent::status_changed(int id, bool value) {
    OutputEvent e;
    e.type = Type::StatusChanged;
    e.id = id;
    e.flag = value;
    return e;
}
OutputEvent OutputEvent::selection_changed(int id, int index) {
    OutputEvent e;
    e.type = Type::SelectionChanged;
    e.id = id;
    e.index = index;
    return e;
}
OutputEvent OutputEvent::value_changed(int id, double value) {
    OutputEvent e;
    e.type = Type::ValueChanged;
    e.id = id;
    e.value = value;
    return e;
}
OutputEvent OutputEvent::text_changed(int id, std::string text) {
    OutputEvent e;
    e.type = Type::TextChanged;
    e.id = id;
    e.text = std::move(text);
    return e;
}
OutputEvent OutputEvent::frame_activated(int id) {
    OutputEvent e;
    e.type = Type::FrameActivated;
    e.id = id;
    return e;
}
OutputEvent OutputEvent::frame_status(int id, FrameStatus status) {
    OutputEvent e;
    e.type = Type::FrameStatusChanged;
    e.id = id;
    e.status = status;
    return e;
}

std::string OutputEvent::to_string() const {
    std::ostringstream out;
    switch (type) {
        case Type::IsPressed: out << "isPressed(" << id << "," << (flag ? "true" : "false") << ")"; break;
        case Type::IsClicked: out << "isClicked(" << id << ")"; break;
        case Type::StatusChanged:
            out << "statusChanged(" << id << "," << (flag ? "true" : "false") << ")";
            break;
        case Type::SelectionChanged: out << "selectionChanged(" << id << "," << index << ")"; break;
        case Type::ValueChanged: out << "valueChanged(" << id << "," << value << ")"; break;
        case Type::TextChanged: out << "textChanged(" << id << ",\"" << text << "\")"; break;
        case Type::FrameActivated: out << "frameActivated(" << id << ")"; break;
        case Type::FrameStatusChanged:
            out << "frameStatus(" << id << "," << frame_status_name(status) << ")";
            break;
    }
    return out.str();
}

Rect layer_constrain(Rect child, double viewport_w, double viewport_h) {
    if (child.w >= viewport_w) {
        child.x = 0;
    } else {
        child.x = std::clamp(child.x, 0.0, viewport_w - child.w);
    }
    if (child.h >= viewport_h) {
        child.y = 0;
    } else {
        child.y = std::clamp(child.y, 0.0, viewport_h - child.h);
    }
    return child;
}

double slider_correct(const SliderConfig& config, double requested) {
    if (config.min == config.max) return config.min;  // collapsed, disabled
    double lo = std::min(config.min, config.max);
    double hi = std::max(config.min, config.max);
    double value = std::clamp(requested, lo, hi);
    if (config.discrete && config.intervals > 0) {
        double step = (config.max - config.min) / static_cast<double>(config.intervals);
        double k = (value - config.min) / step;  // mark index from min, works both directions
        double frac = k - std::floor(k);
        double snapped = frac > 0.5 ? std::ceil(k) : std::floor(k);  // ties toward min
        value = config.min + snapped * step;
    }
    return value;
}

KeyOutcome textfield_key(TextFieldState& field, const std::string& key,
                         std::optional<int> max_length, int visible_chars) {
    KeyOutcome outcome;
    const int len = static_cast<int>(field.buffer.size());
    if (key == "Enter" || key == "Escape") {
        outcome.finished = true;
    } else if (key == "Backspace") {
        if (field.cursor > 0) {
            field.buffer.erase(static_cast<size_t>(field.cursor - 1), 1);
            --field.cursor;
            outcome.text_changed = true;
        }
    } else if (key == "Home") {
        field.cursor = 0;
    } else if (key == "End") {
        field.cursor = len;
    } else if (key == "Left") {
        field.cursor = std::max(0, field.cursor - 1);
    } else if (key == "Right") {
        field.cursor = std::min(len, field.cursor + 1);
    } else if (key.size() >= 1) {
        // printable character (silently rejected at the length cap)
        if (!max_length || len < *max_length) {
            field.buffer.insert(static_cast<size_t>(field.cursor), key);
            field.cursor += static_cast<int>(key.size());
            outcome.text_changed = true;
        }
    }
    // keep the cursor within the visible window
    if (visible_chars < 1) visible_chars = 1;
    if (field.cursor < field.window_offset) field.window_offset = field.cursor;
    if (field.cursor > field.window_offset + visible_chars)
        field.window_offset = field.cursor - visible_chars;
    field.window_offset =
        std::clamp(field.window_offset, 0, std::max(0, static_cast<int>(field.buffer.size())));
    return outcome;
}

namespace {

void init_widget_states(const WidgetNode& node, DesktopState& state) {
    switch (node.kind) {
        case WidgetKind::ToggleButton:
        case WidgetKind::TextToggleButton:
        case WidgetKind::CheckBox:
            state.toggles[node.id] = node.checked;
            break;
        case WidgetKind::RadioButtonGroup: {
            int selected = -1;
            for (const auto& option : node.children) {
                if (option.kind == WidgetKind::RadioButton && option.checked && selected < 0)
                    selected = option.id;
            }
            if (selected < 0) {
                for (const auto& option : node.children) {
                    if (option.kind == WidgetKind::RadioButton) {
                        selected = option.id;
                        break;
                    }
                }
            }
            if (selected >= 0) state.radio_selection[node.id] = selected;
            break;
        }
        case WidgetKind::TextField: {
            TextFieldState field;
            field.buffer = node.text;
            if (node.max_length && static_cast<int>(field.buffer.size()) > *node.max_length)
                field.buffer.resize(static_cast<size_t>(*node.max_length));
            field.cursor = static_cast<int>(field.buffer.size());
            state.textfields[node.id] = field;
            break;
        }
        case WidgetKind::HorizontalSlider: {
            SliderConfig config{node.min_value, node.max_value, node.intervals, node.discrete};
            state.sliders[node.id] = slider_correct(config, node.value);
            break;
        }
        case WidgetKind::ComboBox: {
            state.combo_open[node.id] = false;
            int selection = -1;
            for (size_t i = 0; i < node.items.size(); ++i) {
                if (node.items[i] == node.text) selection = static_cast<int>(i);
            }
            state.combo_selection[node.id] = selection;
            break;
        }
        case WidgetKind::TabPanel:
            state.active_tab[node.id] = 0;
            break;
        default:
            break;
    }
    for (const auto& child : node.children) init_widget_states(child, state);
}

}  // namespace

Desktop::Desktop(WidgetTree tree, double viewport_w, double viewport_h) : tree_(std::move(tree)) {
    state_.viewport_w = viewport_w;
    state_.viewport_h = viewport_h;

    int index = 0;
    for (const auto& child : tree_.display.children) {
        if (child.kind != WidgetKind::Frame) continue;
        FrameState fs;
        Size content = compute_min_size(child, tree_.settings,
                                        {child.width.value_or(0), child.height.value_or(0)});
        double w = std::max(child.width.value_or(content.w), content.w);
        double h = std::max(child.height.value_or(content.h), content.h) + header_height();
        double x = child.x.value_or(20 + index * kCascadeStep);
        double y = child.y.value_or(20 + index * kCascadeStep);
        fs.rect = layer_constrain({x, y, w, h}, viewport_w, viewport_h);
        fs.saved_rect = fs.rect;
        state_.frames[child.id] = fs;
        state_.frame_stack.push_back(child.id);
        state_.bands.push_back(child.id);
        init_widget_states(child, state_);
        ++index;
    }
    if (!state_.frame_stack.empty()) state_.active_frame = state_.frame_stack.back();
    relayout_all();
}

double Desktop::header_height() const {
    return TextMetrics::line_height(tree_.settings.font_size) + 2 * metrics::kPadY;
}

const WidgetNode* Desktop::frame_node(int frame_id) const {
    for (const auto& child : tree_.display.children) {
        if (child.kind == WidgetKind::Frame && child.id == frame_id) return &child;
    }
    return nullptr;
}

const WidgetNode* Desktop::find_widget(int widget_id) const {
    return tree_.display.find(widget_id);
}

const WidgetNode* Desktop::frame_of_widget(int widget_id) const {
    for (const auto& child : tree_.display.children) {
        if (child.kind == WidgetKind::Frame && child.find(widget_id)) return &child;
    }
    return nullptr;
}

void Desktop::relayout(int frame_id) {
    const WidgetNode* node = frame_node(frame_id);
    if (!node) return;
    const FrameState& fs = state_.frames.at(frame_id);
    Size content{fs.rect.w, fs.rect.h - header_height()};
    layouts_[frame_id] = layout_widget_tree(*node, tree_.settings, content, state_.active_tab);
}

void Desktop::relayout_all() {
    for (const auto& [id, fs] : state_.frames) {
        if (fs.status != FrameStatus::Closed) relayout(id);
    }
}

const TreeLayout& Desktop::frame_layout(int frame_id) const { return layouts_.at(frame_id); }

Rect Desktop::frame_content_rect(int frame_id) const {
    const FrameState& fs = state_.frames.at(frame_id);
    return {fs.rect.x, fs.rect.y + header_height(), fs.rect.w, fs.rect.h - header_height()};
}

Rect Desktop::widget_rect(int frame_id, int widget_id) const {
    Rect content = frame_content_rect(frame_id);
    Rect local = layouts_.at(frame_id).placements.at(widget_id);
    return {content.x + local.x, content.y + local.y, local.w, local.h};
}

Rect Desktop::taskbar_rect() const {
    double band_h = TextMetrics::line_height(tree_.settings.font_size) + 2 * metrics::kPadY;
    return {0, state_.viewport_h - band_h, state_.viewport_w, band_h};
}

Rect Desktop::band_rect(int band_index) const {
    if (band_index < 0 || static_cast<size_t>(band_index) >= state_.bands.size())
        throw std::out_of_range("band index out of range");
    Rect bar = taskbar_rect();
    double x = 2;
    for (int i = 0; i < band_index; ++i) {
        const WidgetNode* node = frame_node(state_.bands[static_cast<size_t>(i)]);
        double w = measure_text(node ? node->title : "", tree_.settings.font_size).width +
                   2 * metrics::kPadX;
        x += w + 2;
    }
    const WidgetNode* node = frame_node(state_.bands[static_cast<size_t>(band_index)]);
    double w =
        measure_text(node ? node->title : "", tree_.settings.font_size).width + 2 * metrics::kPadX;
    return {bar.x + x, bar.y + 2, w, bar.h - 4};
}

std::vector<ControlKind> visible_controls_of(const WidgetNode& frame, FrameStatus status) {
    std::vector<ControlKind> controls;
    for (const auto& child : frame.children) {
        if (child.kind != WidgetKind::ControlButton || !child.control) continue;
        ControlKind kind = *child.control;
        // a maximized window swaps MAXIMIZE for NORMALIZE and vice versa
        if (status == FrameStatus::Maximized && kind == ControlKind::Maximize)
            kind = ControlKind::Normalize;
        else if (status != FrameStatus::Maximized && kind == ControlKind::Normalize)
            kind = ControlKind::Maximize;
        controls.push_back(kind);
    }
    return controls;
}

std::vector<Rect> Desktop::control_button_rects(int frame_id) const {
    const WidgetNode* node = frame_node(frame_id);
    const FrameState& fs = state_.frames.at(frame_id);
    std::vector<Rect> rects;
    if (!node) return rects;
    double size = header_height() - 4;
    size_t count = visible_controls_of(*node, fs.status).size();
    double x = fs.rect.x + fs.rect.w - 2 - static_cast<double>(count) * (size + 2);
    for (size_t i = 0; i < count; ++i) {
        rects.push_back({x + 2, fs.rect.y + 2, size, size});
        x += size + 2;
    }
    return rects;
}

std::vector<Rect> Desktop::tab_header_rects(int frame_id, int tab_panel_id) const {
    const WidgetNode* panel = find_widget(tab_panel_id);
    std::vector<Rect> rects;
    if (!panel || panel->kind != WidgetKind::TabPanel) return rects;
    Rect panel_rect = widget_rect(frame_id, tab_panel_id);
    double lh = TextMetrics::line_height(tree_.settings.font_size);
    double x = panel_rect.x;
    for (const auto& tab : panel->children) {
        double w = measure_text(tab.tab_title, tree_.settings.font_size).width + 2 * metrics::kPadX;
        rects.push_back({x, panel_rect.y, w, lh + 2 * metrics::kPadY});
        x += w + 2;
    }
    return rects;
}

std::vector<Rect> Desktop::combo_item_rects(int frame_id, int combo_id) const {
    const WidgetNode* combo = find_widget(combo_id);
    std::vector<Rect> rects;
    if (!combo || combo->kind != WidgetKind::ComboBox) return rects;
    Rect base = widget_rect(frame_id, combo_id);
    double item_h = TextMetrics::line_height(tree_.settings.font_size) + 2;
    for (size_t i = 0; i < combo->items.size(); ++i) {
        rects.push_back({base.x, base.y + base.h + static_cast<double>(i) * item_h, base.w, item_h});
    }
    return rects;
}

SliderConfig Desktop::slider_config(int slider_id) const {
    const WidgetNode* node = find_widget(slider_id);
    if (!node || node->kind != WidgetKind::HorizontalSlider)
        throw std::invalid_argument("not a slider: " + std::to_string(slider_id));
    return {node->min_value, node->max_value, node->intervals, node->discrete};
}

Rect Desktop::slider_track_rect(int frame_id, int slider_id) const {
    Rect r = widget_rect(frame_id, slider_id);
    return {r.x + metrics::kPadX, r.y, std::max(1.0, r.w - 2 * metrics::kPadX), r.h};
}

std::vector<int> Desktop::hit_test(double x, double y) const {
    // The taskbar is desktop chrome rendered above every frame.
    for (const auto& child : tree_.display.children) {
        if (child.kind == WidgetKind::TaskBar && taskbar_rect().contains(x, y)) {
            return {child.id};
        }
    }
    // frames front-to-back
    for (auto it = state_.frame_stack.rbegin(); it != state_.frame_stack.rend(); ++it) {
        int frame_id = *it;
        const FrameState& fs = state_.frames.at(frame_id);
        if (fs.status == FrameStatus::Minimized || fs.status == FrameStatus::Closed) continue;
        const WidgetNode* node = frame_node(frame_id);
        if (!node) continue;

        // An open drop-down outranks everything, including geometry outside
        // its own frame rect.
        auto layout_it = layouts_.find(frame_id);
        if (layout_it != layouts_.end()) {
            for (const auto& [wid, rect] : layout_it->second.placements) {
                auto open = state_.combo_open.find(wid);
                if (open == state_.combo_open.end() || !open->second) continue;
                for (const Rect& item : combo_item_rects(frame_id, wid)) {
                    if (item.contains(x, y)) return path_to(frame_id, wid);
                }
            }
        }
        if (!fs.rect.contains(x, y)) continue;

        Rect content = frame_content_rect(frame_id);
        if (y < content.y) {
            // header: control buttons, then the drag surface (the frame itself)
            const auto controls = control_button_rects(frame_id);
            size_t control_index = 0;
            for (const auto& child : node->children) {
                if (child.kind != WidgetKind::ControlButton) continue;
                if (control_index < controls.size() && controls[control_index].contains(x, y)) {
                    return {frame_id, child.id};
                }
                ++control_index;
            }
            return {frame_id};
        }
        if (layout_it != layouts_.end()) {
            int best = -1;
            for (const auto& [wid, rect] : layout_it->second.placements) {
                Rect absolute{content.x + rect.x, content.y + rect.y, rect.w, rect.h};
                const WidgetNode* w = find_widget(wid);
                if (w && !w->visible) continue;
                if (absolute.contains(x, y) && wid > best) best = wid;
            }
            if (best >= 0) return path_to(frame_id, best);
        }
        return {frame_id};
    }
    return {};
}

std::vector<int> Desktop::path_to(int frame_id, int widget_id) const {
    std::vector<int> path;
    const WidgetNode* node = frame_node(frame_id);
    // walk the chain of ancestors from the frame down to the widget
    std::vector<int> chain;
    std::function<bool(const WidgetNode&)> walk = [&](const WidgetNode& n) -> bool {
        chain.push_back(n.id);
        if (n.id == widget_id) return true;
        for (const auto& child : n.children) {
            if (walk(child)) return true;
        }
        chain.pop_back();
        return false;
    };
    if (node && walk(*node)) return chain;
    return {frame_id, widget_id};
}

void Desktop::deactivate_current(Outputs& outputs) {
    (void)outputs;
    state_.active_frame.reset();
}

Outputs Desktop::activate_frame(int frame_id) {
    auto it = state_.frames.find(frame_id);
    if (it == state_.frames.end() || it->second.status == FrameStatus::Closed)
        throw std::invalid_argument("unknown or closed frame " + std::to_string(frame_id));
    Outputs outputs;
    FrameState& fs = it->second;
    if (fs.status == FrameStatus::Minimized) {
        fs.status = FrameStatus::Normal;
        fs.rect = layer_constrain(fs.rect, state_.viewport_w, state_.viewport_h);
        outputs.push_back(OutputEvent::frame_status(frame_id, FrameStatus::Normal));
        relayout(frame_id);
    }
    // bring to front
    auto pos = std::find(state_.frame_stack.begin(), state_.frame_stack.end(), frame_id);
    if (pos != state_.frame_stack.end()) state_.frame_stack.erase(pos);
    state_.frame_stack.push_back(frame_id);
    if (state_.active_frame != frame_id) {
        state_.active_frame = frame_id;
        outputs.push_back(OutputEvent::frame_activated(frame_id));
    }
    return outputs;
}

Outputs Desktop::control_button_action(int frame_id, ControlKind kind) {
    const WidgetNode* node = frame_node(frame_id);
    if (!node) throw std::invalid_argument("unknown frame " + std::to_string(frame_id));
    FrameState& fs = state_.frames.at(frame_id);
    auto controls = visible_controls_of(*node, fs.status);
    if (std::find(controls.begin(), controls.end(), kind) == controls.end())
        throw std::invalid_argument("frame has no such control button");
    Outputs outputs;
    switch (kind) {
        case ControlKind::Minimize:
            fs.status = FrameStatus::Minimized;
            if (state_.active_frame == frame_id) state_.active_frame.reset();
            outputs.push_back(OutputEvent::frame_status(frame_id, FrameStatus::Minimized));
            break;
        case ControlKind::Maximize:
            fs.saved_rect = fs.rect;
            fs.rect = {0, 0, state_.viewport_w, state_.viewport_h};
            fs.status = FrameStatus::Maximized;
            relayout(frame_id);
            outputs.push_back(OutputEvent::frame_status(frame_id, FrameStatus::Maximized));
            break;
        case ControlKind::Normalize:
            fs.rect = layer_constrain(fs.saved_rect, state_.viewport_w, state_.viewport_h);
            fs.status = FrameStatus::Normal;
            relayout(frame_id);
            outputs.push_back(OutputEvent::frame_status(frame_id, FrameStatus::Normal));
            break;
        case ControlKind::Close: {
            fs.status = FrameStatus::Closed;
            auto pos = std::find(state_.frame_stack.begin(), state_.frame_stack.end(), frame_id);
            if (pos != state_.frame_stack.end()) state_.frame_stack.erase(pos);
            auto band = std::find(state_.bands.begin(), state_.bands.end(), frame_id);
            if (band != state_.bands.end()) state_.bands.erase(band);
            if (state_.active_frame == frame_id) state_.active_frame.reset();
            outputs.push_back(OutputEvent::frame_status(frame_id, FrameStatus::Closed));
            break;
        }
    }
    return outputs;
}

Outputs Desktop::taskbar_click(int band_index) {
    if (band_index < 0 || static_cast<size_t>(band_index) >= state_.bands.size())
        throw std::out_of_range("band index out of range");
    int frame_id = state_.bands[static_cast<size_t>(band_index)];
    const FrameState& fs = state_.frames.at(frame_id);
    Outputs outputs;
    if (state_.active_frame == frame_id && fs.status != FrameStatus::Minimized) {
        FrameState& mutable_fs = state_.frames.at(frame_id);
        mutable_fs.status = FrameStatus::Minimized;
        state_.active_frame.reset();
        outputs.push_back(OutputEvent::frame_status(frame_id, FrameStatus::Minimized));
    } else {
        outputs = activate_frame(frame_id);
    }
    return outputs;
}

Outputs Desktop::toggle_widget(int widget_id) {
    const WidgetNode* node = find_widget(widget_id);
    if (!node || !is_toggle_kind(node->kind))
        throw std::invalid_argument("not a toggle widget: " + std::to_string(widget_id));
    bool next = !state_.toggles[widget_id];
    state_.toggles[widget_id] = next;
    Outputs outputs;
    if (node->kind == WidgetKind::CheckBox) {
        outputs.push_back(OutputEvent::status_changed(widget_id, next));
    } else {
        outputs.push_back(OutputEvent::is_pressed(widget_id, next));
        outputs.push_back(OutputEvent::status_changed(widget_id, next));
    }
    return outputs;
}

Outputs Desktop::radio_select(int group_id, int member_id) {
    const WidgetNode* group = find_widget(group_id);
    if (!group || group->kind != WidgetKind::RadioButtonGroup)
        throw std::invalid_argument("not a radio group: " + std::to_string(group_id));
    bool member_found = false;
    for (const auto& option : group->children) {
        if (option.id == member_id && option.kind == WidgetKind::RadioButton) member_found = true;
    }
    if (!member_found) throw std::invalid_argument("radio member not in group");
    int previous = state_.radio_selection[group_id];
    Outputs outputs;
    if (previous == member_id) return outputs;  // cannot be unchecked by clicking
    state_.radio_selection[group_id] = member_id;
    outputs.push_back(OutputEvent::status_changed(previous, false));
    outputs.push_back(OutputEvent::status_changed(member_id, true));
    return outputs;
}

Outputs Desktop::combo_open_click(int combo_id) {
    state_.combo_open[combo_id] = !state_.combo_open[combo_id];
    return {};
}

Outputs Desktop::combo_select_item(int combo_id, int item_index) {
    const WidgetNode* node = find_widget(combo_id);
    if (!node || node->kind != WidgetKind::ComboBox)
        throw std::invalid_argument("not a combo box: " + std::to_string(combo_id));
    if (item_index < 0 || static_cast<size_t>(item_index) >= node->items.size())
        throw std::out_of_range("combo item index out of range");
    state_.combo_open[combo_id] = false;
    state_.combo_selection[combo_id] = item_index;
    Outputs outputs;
    outputs.push_back(OutputEvent::selection_changed(combo_id, item_index));
    return outputs;
}

Outputs Desktop::combo_dismiss(int combo_id) {
    state_.combo_open[combo_id] = false;
    return {};
}

Outputs Desktop::tab_select(int tab_panel_id, int tab_index) {
    const WidgetNode* node = find_widget(tab_panel_id);
    if (!node || node->kind != WidgetKind::TabPanel)
        throw std::invalid_argument("not a tab panel: " + std::to_string(tab_panel_id));
    if (tab_index < 0 || static_cast<size_t>(tab_index) >= node->children.size())
        throw std::out_of_range("tab index out of range");
    if (state_.active_tab[tab_panel_id] == tab_index) return {};
    state_.active_tab[tab_panel_id] = tab_index;
    const WidgetNode* frame = frame_of_widget(tab_panel_id);
    if (frame) relayout(frame->id);
    Outputs outputs;
    outputs.push_back(OutputEvent::selection_changed(tab_panel_id, tab_index));
    return outputs;
}

Outputs Desktop::slider_set(int slider_id, double value) {
    SliderConfig config = slider_config(slider_id);
    double corrected = slider_correct(config, value);
    Outputs outputs;
    if (state_.sliders[slider_id] != corrected) {
        state_.sliders[slider_id] = corrected;
        outputs.push_back(OutputEvent::value_changed(slider_id, corrected));
    }
    return outputs;
}

Outputs Desktop::slider_drag(int slider_id, double pointer_x) {
    const WidgetNode* frame = frame_of_widget(slider_id);
    if (!frame) return {};
    Rect track = slider_track_rect(frame->id, slider_id);
    double t = std::clamp((pointer_x - track.x) / track.w, 0.0, 1.0);
    SliderConfig config = slider_config(slider_id);
    return slider_set(slider_id, config.min + t * (config.max - config.min));
}

Outputs Desktop::frame_resize(int frame_id, Size requested) {
    const WidgetNode* node = frame_node(frame_id);
    if (!node) throw std::invalid_argument("unknown frame " + std::to_string(frame_id));
    FrameState& fs = state_.frames.at(frame_id);
    if (!node->resizable) return {};
    Size current_content{fs.rect.w, fs.rect.h - header_height()};
    Size requested_content{requested.w, requested.h - header_height()};
    Size clamped = clamp_resize(*node, tree_.settings, current_content, requested_content);
    fs.rect.w = clamped.w;
    fs.rect.h = clamped.h + header_height();
    fs.rect = layer_constrain(fs.rect, state_.viewport_w, state_.viewport_h);
    relayout(frame_id);
    return {};
}

Outputs Desktop::frame_move(int frame_id, double x, double y) {
    FrameState& fs = state_.frames.at(frame_id);
    fs.rect.x = x;
    fs.rect.y = y;
    fs.rect = layer_constrain(fs.rect, state_.viewport_w, state_.viewport_h);
    return {};
}

Outputs Desktop::press_release_actions(int widget_id, bool same_target) {
    Outputs outputs;
    const WidgetNode* node = find_widget(widget_id);
    if (!node) return outputs;
    if (is_momentary_button(node->kind)) {
        outputs.push_back(OutputEvent::is_pressed(widget_id, false));
        if (same_target) outputs.push_back(OutputEvent::is_clicked(widget_id));
        return outputs;
    }
    if (!same_target) return outputs;
    if (is_toggle_kind(node->kind)) return toggle_widget(widget_id);
    if (node->kind == WidgetKind::RadioButton) {
        const WidgetNode* frame = frame_of_widget(widget_id);
        if (!frame) return outputs;
        // the enclosing group is the radio button's parent
        std::function<const WidgetNode*(const WidgetNode&)> find_group =
            [&](const WidgetNode& n) -> const WidgetNode* {
            for (const auto& child : n.children) {
                if (child.id == widget_id) return n.kind == WidgetKind::RadioButtonGroup ? &n : nullptr;
                if (const WidgetNode* g = find_group(child)) return g;
            }
            return nullptr;
        };
        if (const WidgetNode* group = find_group(*frame)) {
            return radio_select(group->id, widget_id);
        }
    }
    return outputs;
}

Outputs Desktop::route_mouse_down(double x, double y) {
    Outputs outputs;
    state_.pressed_widget.reset();
    state_.drag = DesktopState::DragKind::None;

    auto dismiss_open_combos = [&](std::optional<int> except) {
        for (auto& [id, open] : state_.combo_open) {
            if (open && id != except) open = false;
        }
    };

    // taskbar first
    if (taskbar_rect().contains(x, y)) {
        for (size_t i = 0; i < state_.bands.size(); ++i) {
            if (band_rect(static_cast<int>(i)).contains(x, y)) {
                dismiss_open_combos(std::nullopt);
                state_.focused_field.reset();
                Outputs band_outputs = taskbar_click(static_cast<int>(i));
                outputs.insert(outputs.end(), band_outputs.begin(), band_outputs.end());
                return outputs;
            }
        }
        return outputs;  // dead taskbar area
    }

    std::vector<int> path = hit_test(x, y);
    if (path.empty()) {
        // missing all widgets deactivates nothing
        dismiss_open_combos(std::nullopt);
        state_.focused_field.reset();
        return outputs;
    }
    int frame_id = path.front();
    const WidgetNode* frame = frame_node(frame_id);
    if (!frame) return outputs;

    if (state_.active_frame != frame_id) {
        Outputs activation = activate_frame(frame_id);
        outputs.insert(outputs.end(), activation.begin(), activation.end());
    }

    int widget_id = path.back();
    const WidgetNode* widget = find_widget(widget_id);
    FrameState& fs = state_.frames.at(frame_id);

    if (widget_id == frame_id) {
        dismiss_open_combos(std::nullopt);
        state_.focused_field.reset();
        // resize grips on the outer border
        int edge = 0;
        if (frame->resizable && fs.status != FrameStatus::Maximized) {
            if (x <= fs.rect.x + kEdgeGrip) edge |= kEdgeLeft;
            if (x >= fs.rect.x + fs.rect.w - kEdgeGrip) edge |= kEdgeRight;
            if (y <= fs.rect.y + kEdgeGrip) edge |= kEdgeTop;
            if (y >= fs.rect.y + fs.rect.h - kEdgeGrip) edge |= kEdgeBottom;
        }
        if (edge != 0) {
            state_.drag = DesktopState::DragKind::ResizeFrame;
            state_.drag_target = frame_id;
            state_.drag_edge = edge;
            state_.drag_dx = x;
            state_.drag_dy = y;
            return outputs;
        }
        bool in_header = y < fs.rect.y + header_height();
        if (in_header && !frame->docked && fs.status != FrameStatus::Maximized) {
            state_.drag = DesktopState::DragKind::MoveFrame;
            state_.drag_target = frame_id;
            state_.drag_dx = x - fs.rect.x;
            state_.drag_dy = y - fs.rect.y;
        }
        return outputs;
    }

    switch (widget->kind) {
        case WidgetKind::ControlButton: {
            dismiss_open_combos(std::nullopt);
            auto controls = visible_controls_of(*frame, fs.status);
            size_t control_index = 0;
            for (const auto& child : frame->children) {
                if (child.kind != WidgetKind::ControlButton) continue;
                if (child.id == widget_id && control_index < controls.size()) {
                    Outputs action = control_button_action(frame_id, controls[control_index]);
                    outputs.insert(outputs.end(), action.begin(), action.end());
                    return outputs;
                }
                ++control_index;
            }
            return outputs;
        }
        case WidgetKind::ComboBox: {
            dismiss_open_combos(widget_id);
            state_.focused_field.reset();
            if (state_.combo_open[widget_id]) {
                auto items = combo_item_rects(frame_id, widget_id);
                for (size_t i = 0; i < items.size(); ++i) {
                    if (items[i].contains(x, y)) {
                        Outputs selection = combo_select_item(widget_id, static_cast<int>(i));
                        outputs.insert(outputs.end(), selection.begin(), selection.end());
                        return outputs;
                    }
                }
            }
            combo_open_click(widget_id);
            return outputs;
        }
        case WidgetKind::TextField: {
            dismiss_open_combos(std::nullopt);
            state_.focused_field = widget_id;
            TextFieldState& field = state_.textfields[widget_id];
            Rect r = widget_rect(frame_id, widget_id);
            double cw = TextMetrics::char_width(tree_.settings.font_size);
            int offset = static_cast<int>(std::lround((x - r.x - metrics::kPadX) / cw));
            field.cursor = std::clamp(field.window_offset + offset, 0,
                                      static_cast<int>(field.buffer.size()));
            return outputs;
        }
        case WidgetKind::HorizontalSlider: {
            dismiss_open_combos(std::nullopt);
            state_.focused_field.reset();
            state_.drag = DesktopState::DragKind::SliderRunner;
            state_.drag_target = widget_id;
            Outputs value = slider_drag(widget_id, x);
            outputs.insert(outputs.end(), value.begin(), value.end());
            return outputs;
        }
        case WidgetKind::TabPanel: {
            dismiss_open_combos(std::nullopt);
            state_.focused_field.reset();
            auto headers = tab_header_rects(frame_id, widget_id);
            for (size_t i = 0; i < headers.size(); ++i) {
                if (headers[i].contains(x, y)) {
                    Outputs selection = tab_select(widget_id, static_cast<int>(i));
                    outputs.insert(outputs.end(), selection.begin(), selection.end());
                    return outputs;
                }
            }
            return outputs;
        }
        default:
            break;
    }

    dismiss_open_combos(std::nullopt);
    state_.focused_field.reset();
    if (is_momentary_button(widget->kind)) {
        state_.pressed_widget = widget_id;
        outputs.push_back(OutputEvent::is_pressed(widget_id, true));
    } else if (is_toggle_kind(widget->kind) || widget->kind == WidgetKind::RadioButton) {
        state_.pressed_widget = widget_id;
    }
    return outputs;
}

Outputs Desktop::route_mouse_up(double x, double y) {
    Outputs outputs;
    state_.drag = DesktopState::DragKind::None;
    if (!state_.pressed_widget) return outputs;
    int pressed = *state_.pressed_widget;
    state_.pressed_widget.reset();
    std::vector<int> path = hit_test(x, y);
    bool same_target = !path.empty() && path.back() == pressed;
    return press_release_actions(pressed, same_target);
}

Outputs Desktop::route_mouse_drag(double x, double y) {
    switch (state_.drag) {
        case DesktopState::DragKind::MoveFrame:
            return frame_move(state_.drag_target, x - state_.drag_dx, y - state_.drag_dy);
        case DesktopState::DragKind::ResizeFrame: {
            FrameState& fs = state_.frames.at(state_.drag_target);
            Rect r = fs.rect;
            double dx = x - state_.drag_dx;
            double dy = y - state_.drag_dy;
            state_.drag_dx = x;
            state_.drag_dy = y;
            double new_w = r.w, new_h = r.h, new_x = r.x, new_y = r.y;
            if (state_.drag_edge & kEdgeRight) new_w += dx;
            if (state_.drag_edge & kEdgeBottom) new_h += dy;
            if (state_.drag_edge & kEdgeLeft) {
                new_w -= dx;
                new_x += dx;
            }
            if (state_.drag_edge & kEdgeTop) {
                new_h -= dy;
                new_y += dy;
            }
            frame_resize(state_.drag_target, {new_w, new_h});
            // anchor the opposite edge when dragging left/top
            FrameState& updated = state_.frames.at(state_.drag_target);
            if (state_.drag_edge & kEdgeLeft) updated.rect.x = new_x + (new_w - updated.rect.w);
            if (state_.drag_edge & kEdgeTop) updated.rect.y = new_y + (new_h - updated.rect.h);
            if (state_.drag_edge & (kEdgeLeft | kEdgeTop))
                updated.rect = layer_constrain(updated.rect, state_.viewport_w, state_.viewport_h);
            return {};
        }
        case DesktopState::DragKind::SliderRunner:
            return slider_drag(state_.drag_target, x);
        case DesktopState::DragKind::None:
            return {};
    }
    return {};
}

Outputs Desktop::route_key(const std::string& key) {
    Outputs outputs;
    if (!state_.focused_field) return outputs;
    int field_id = *state_.focused_field;
    const WidgetNode* node = find_widget(field_id);
    if (!node) return outputs;
    TextFieldState& field = state_.textfields[field_id];
    const WidgetNode* frame = frame_of_widget(field_id);
    int visible = 10;
    if (frame) {
        Rect r = widget_rect(frame->id, field_id);
        visible = std::max(1, static_cast<int>((r.w - 2 * metrics::kPadX) /
                                               TextMetrics::char_width(tree_.settings.font_size)));
    }
    KeyOutcome outcome = textfield_key(field, key, node->max_length, visible);
    if (outcome.text_changed)
        outputs.push_back(OutputEvent::text_changed(field_id, field.buffer));
    if (outcome.finished) state_.focused_field.reset();
    return outputs;
}

Outputs Desktop::route_viewport_resize(double w, double h) {
    state_.viewport_w = w;
    state_.viewport_h = h;
    for (auto& [id, fs] : state_.frames) {
        if (fs.status == FrameStatus::Closed) continue;
        if (fs.status == FrameStatus::Maximized) {
            fs.rect = {0, 0, w, h};
        } else {
            fs.rect = layer_constrain(fs.rect, w, h);
        }
    }
    relayout_all();
    return {};
}

Outputs Desktop::dispatch(const UiEvent& event) {
    switch (event.type) {
        case UiEvent::Type::MouseDown: return route_mouse_down(event.x, event.y);
        case UiEvent::Type::MouseUp: return route_mouse_up(event.x, event.y);
        case UiEvent::Type::MouseDrag: return route_mouse_drag(event.x, event.y);
        case UiEvent::Type::KeyPress: return route_key(event.key);
        case UiEvent::Type::ViewportResize: return route_viewport_resize(event.w, event.h);
    }
    return {};
}

std::string Desktop::dump_state() const {
    std::ostringstream out;
    out << "viewport " << state_.viewport_w << "x" << state_.viewport_h << "\n";
    out << "stack";
    for (int id : state_.frame_stack) out << " " << id;
    out << "\nactive " << (state_.active_frame ? std::to_string(*state_.active_frame) : "-");
    out << "\nbands";
    for (int id : state_.bands) out << " " << id;
    out << "\n";
    for (const auto& [id, fs] : state_.frames) {
        out << "frame " << id << " " << frame_status_name(fs.status) << " " << fs.rect.x << ","
            << fs.rect.y << "," << fs.rect.w << "," << fs.rect.h << "\n";
    }
    for (const auto& [id, value] : state_.toggles) out << "toggle " << id << " " << value << "\n";
    for (const auto& [id, member] : state_.radio_selection)
        out << "radio " << id << " " << member << "\n";
    for (const auto& [id, field] : state_.textfields)
        out << "text " << id << " \"" << field.buffer << "\" " << field.cursor << " "
            << field.window_offset << "\n";
    for (const auto& [id, value] : state_.sliders) out << "slider " << id << " " << value << "\n";
    for (const auto& [id, open] : state_.combo_open)
        out << "combo " << id << " " << open << " " << state_.combo_selection.at(id) << "\n";
    for (const auto& [id, tab] : state_.active_tab) out << "tab " << id << " " << tab << "\n";
    return out.str();
}

std::uint64_t Desktop::state_digest() const {
    std::string dump = dump_state();
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : dump) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::vector<std::string> Desktop::audit() const {
    std::vector<std::string> problems;
    auto report = [&](std::string message) { problems.push_back(std::move(message)); };

    if (state_.active_frame) {
        auto it = state_.frames.find(*state_.active_frame);
        if (it == state_.frames.end()) {
            report("active frame does not exist");
        } else if (it->second.status == FrameStatus::Closed ||
                   it->second.status == FrameStatus::Minimized) {
            report("active frame is closed or minimized");
        }
    }
    for (const auto& [id, fs] : state_.frames) {
        bool in_stack = std::find(state_.frame_stack.begin(), state_.frame_stack.end(), id) !=
                        state_.frame_stack.end();
        bool in_bands =
            std::find(state_.bands.begin(), state_.bands.end(), id) != state_.bands.end();
        if (fs.status == FrameStatus::Closed) {
            if (in_stack) report("closed frame " + std::to_string(id) + " still stacked");
            if (in_bands) report("closed frame " + std::to_string(id) + " still has a band");
        } else {
            if (!in_stack) report("open frame " + std::to_string(id) + " missing from stack");
            if (!in_bands) report("open frame " + std::to_string(id) + " missing its band");
            Rect constrained = layer_constrain(fs.rect, state_.viewport_w, state_.viewport_h);
            if (constrained.x != fs.rect.x || constrained.y != fs.rect.y)
                report("frame " + std::to_string(id) + " escapes the viewport");
        }
    }
    // band order must be a subsequence of creation order (creation order ==
    // widget id order for frames)
    for (size_t i = 1; i < state_.bands.size(); ++i) {
        if (state_.bands[i - 1] >= state_.bands[i]) report("band order violates creation order");
    }
    for (const auto& [group_id, member_id] : state_.radio_selection) {
        const WidgetNode* group = find_widget(group_id);
        if (!group) {
            report("radio group missing");
            continue;
        }
        bool ok = false;
        for (const auto& option : group->children) {
            if (option.id == member_id) ok = true;
        }
        if (!ok) report("radio selection outside its group");
    }
    for (const auto& [id, field] : state_.textfields) {
        const WidgetNode* node = find_widget(id);
        int len = static_cast<int>(field.buffer.size());
        if (node && node->max_length && len > *node->max_length)
            report("text field " + std::to_string(id) + " exceeds maxLength");
        if (field.cursor < 0 || field.cursor > len)
            report("text field " + std::to_string(id) + " cursor out of range");
    }
    for (const auto& [id, value] : state_.sliders) {
        const WidgetNode* node = find_widget(id);
        if (!node) continue;
        SliderConfig config{node->min_value, node->max_value, node->intervals, node->discrete};
        if (slider_correct(config, value) != value)
            report("slider " + std::to_string(id) + " holds an uncorrected value");
    }
    return problems;
}

std::vector<UiEvent> parse_event_script(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("event script is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw std::runtime_error("event script must be a JSON array");
    std::vector<UiEvent> events;
    long last_seq = -1;
    for (size_t i = 0; i < doc.size(); ++i) {
        const auto& record = doc[i];
        auto fail = [&](const std::string& why) {
            throw std::runtime_error("event record " + std::to_string(i) + ": " + why);
        };
        if (!record.is_object()) fail("not an object");
        if (!record.contains("seq") || !record["seq"].is_number_integer()) fail("missing seq");
        long seq = record["seq"].get<long>();
        if (seq <= last_seq) fail("seq numbers must be strictly increasing");
        last_seq = seq;
        if (!record.contains("type") || !record["type"].is_string()) fail("missing type");
        std::string type = record["type"].get<std::string>();
        UiEvent event;
        auto need_num = [&](const char* field) -> double {
            if (!record.contains(field) || !record[field].is_number())
                fail(std::string("missing numeric field '") + field + "'");
            return record[field].get<double>();
        };
        if (type == "mouseDown" || type == "mouseUp" || type == "mouseDrag") {
            event.x = need_num("x");
            event.y = need_num("y");
            event.type = type == "mouseDown" ? UiEvent::Type::MouseDown
                         : type == "mouseUp" ? UiEvent::Type::MouseUp
                                             : UiEvent::Type::MouseDrag;
        } else if (type == "keyPress") {
            if (!record.contains("key") || !record["key"].is_string()) fail("missing key");
            event.type = UiEvent::Type::KeyPress;
            event.key = record["key"].get<std::string>();
        } else if (type == "viewportResize") {
            event.type = UiEvent::Type::ViewportResize;
            event.w = need_num("w");
            event.h = need_num("h");
        } else {
            fail("unknown event type '" + type + "'");
        }
        events.push_back(std::move(event));
    }
    return events;
}

std::string event_to_json(const UiEvent& event) {
    nlohmann::json record;
    switch (event.type) {
        case UiEvent::Type::MouseDown: record["type"] = "mouseDown"; break;
        case UiEvent::Type::MouseUp: record["type"] = "mouseUp"; break;
        case UiEvent::Type::MouseDrag: record["type"] = "mouseDrag"; break;
        case UiEvent::Type::KeyPress: record["type"] = "keyPress"; break;
        case UiEvent::Type::ViewportResize: record["type"] = "viewportResize"; break;
    }
    if (event.type == UiEvent::Type::KeyPress) {
        record["key"] = event.key;
    } else if (event.type == UiEvent::Type::ViewportResize) {
        record["w"] = event.w;
        record["h"] = event.h;
    } else {
        record["x"] = event.x;
        record["y"] = event.y;
    }
    return record.dump();
}

std::string output_to_json(const OutputEvent& output) {
    nlohmann::json record;
    record["id"] = output.id;
    switch (output.type) {
        case OutputEvent::Type::IsPressed:
            record["event"] = "isPressed";
            record["value"] = output.flag;
            break;
        case OutputEvent::Type::IsClicked: record["event"] = "isClicked"; break;
        case OutputEvent::Type::StatusChanged:
            record["event"] = "statusChanged";
            record["value"] = output.flag;
            break;
        case OutputEvent::Type::SelectionChanged:
            record["event"] = "selectionChanged";
            record["index"] = output.index;
            break;
        case OutputEvent::Type::ValueChanged:
            record["event"] = "valueChanged";
            record["value"] = output.value;
            break;
        case OutputEvent::Type::TextChanged:
            record["event"] = "textChanged";
            record["text"] = output.text;
            break;
        case OutputEvent::Type::FrameActivated: record["event"] = "frameActivated"; break;
        case OutputEvent::Type::FrameStatusChanged:
            record["event"] = "frameStatus";
            record["status"] = std::string(frame_status_name(output.status));
            break;
    }
    return record.dump();
}

}  // namespace x3dui
