#include <doctest.h>

#include <string>

#include "x3dui/runtime.hpp"

using namespace x3dui;

namespace {

Desktop make_desktop(const std::string& spec, double vw = 800, double vh = 600) {
    WidgetTree tree = assign_ids(parse_ui_spec(spec));
    REQUIRE(validate_tree(tree).ok());
    return Desktop(std::move(tree), vw, vh);
}

struct Point {
    double x, y;
};

Point center(const Rect& r) { return {r.x + r.w / 2, r.y + r.h / 2}; }

Outputs click(Desktop& d, Point p) {
    Outputs outputs = d.dispatch(UiEvent::mouse_down(p.x, p.y));
    Outputs up = d.dispatch(UiEvent::mouse_up(p.x, p.y));
    outputs.insert(outputs.end(), up.begin(), up.end());
    return outputs;
}

const std::string kWorkbench =
    "<Display><Frame title=\"A\" x=\"10\" y=\"10\" width=\"300\" height=\"200\" "
    "controls=\"MINIMIZE,MAXIMIZE,CLOSE\">"
    "<TextButton text=\"OK\"/>"                                        // id 5
    "<ToggleButton/>"                                                  // id 6
    "<CheckBox text=\"c\"/>"                                           // id 7
    "<RadioButtonGroup>"                                               // id 8
    "<RadioButton text=\"r1\" checked=\"true\"/>"                      // id 9
    "<RadioButton text=\"r2\"/>"                                       // id 10
    "</RadioButtonGroup>"
    "<TextField maxLength=\"4\"/>"                                     // id 11
    "<ComboBox items=\"aa|bb|cc\"/>"                                   // id 12
    "<HorizontalSlider min=\"0\" max=\"10\" intervals=\"5\" discrete=\"true\"/>"  // id 13
    "</Frame></Display>";

}  // namespace

TEST_CASE("layer constraint keeps children inside the viewport") {
    Rect moved = layer_constrain({750, 300, 100, 100}, 800, 600);
    CHECK(moved.x == 700);
    CHECK(moved.y == 300);
    Rect inside = layer_constrain({100, 100, 100, 100}, 800, 600);
    CHECK(inside.x == 100);
    CHECK(inside.y == 100);
    Rect oversized = layer_constrain({50, 50, 900, 100}, 800, 600);
    CHECK(oversized.x == 0);
}

TEST_CASE("slider correction clamps, snaps, and honors descending bounds") {
    CHECK(slider_correct({0, 10, 0, false}, 15) == 10);
    CHECK(slider_correct({0, 10, 5, true}, 3.2) == 4);
    CHECK(slider_correct({0, 10, 5, true}, 3.0) == 2);  // midpoint tie goes toward min
    CHECK(slider_correct({10, 0, 0, false}, 3) == 3);
    CHECK(slider_correct({5, 5, 0, false}, 99) == 5);   // collapsed bounds disable the slider
}

TEST_CASE("text field editing follows the key protocol") {
    TextFieldState field{"abc", 3, 0};
    KeyOutcome typed = textfield_key(field, "d", std::nullopt, 10);
    CHECK(field.buffer == "abcd");
    CHECK(field.cursor == 4);
    CHECK(typed.text_changed);

    KeyOutcome erased = textfield_key(field, "Backspace", std::nullopt, 10);
    CHECK(field.buffer == "abc");
    CHECK(field.cursor == 3);
    CHECK(erased.text_changed);

    TextFieldState full{"wxyz", 4, 0};
    KeyOutcome rejected = textfield_key(full, "q", 4, 10);
    CHECK(full.buffer == "wxyz");
    CHECK_FALSE(rejected.text_changed);

    KeyOutcome finished = textfield_key(full, "Enter", 4, 10);
    CHECK(finished.finished);

    textfield_key(full, "Home", 4, 10);
    CHECK(full.cursor == 0);
    textfield_key(full, "End", 4, 10);
    CHECK(full.cursor == 4);
    textfield_key(full, "Left", 4, 10);
    CHECK(full.cursor == 3);
    textfield_key(full, "Right", 4, 10);
    CHECK(full.cursor == 4);
}

TEST_CASE("the visible window follows the cursor") {
    TextFieldState field;
    for (char c = 'a'; c <= 'j'; ++c) textfield_key(field, std::string(1, c), std::nullopt, 4);
    CHECK(field.cursor == 10);
    CHECK(field.window_offset == 6);
    textfield_key(field, "Home", std::nullopt, 4);
    CHECK(field.window_offset == 0);
}

TEST_CASE("button click emits the press/release/click triple") {
    Desktop d = make_desktop(kWorkbench);
    Point p = center(d.widget_rect(1, 5));
    Outputs outputs = click(d, p);
    REQUIRE(outputs.size() == 3);
    CHECK(outputs[0].to_string() == "isPressed(5,true)");
    CHECK(outputs[1].to_string() == "isPressed(5,false)");
    CHECK(outputs[2].to_string() == "isClicked(5)");
}

TEST_CASE("releasing off the button cancels the click") {
    Desktop d = make_desktop(kWorkbench);
    Point p = center(d.widget_rect(1, 5));
    Outputs down = d.dispatch(UiEvent::mouse_down(p.x, p.y));
    REQUIRE(down.size() == 1);
    CHECK(down[0].to_string() == "isPressed(5,true)");
    Point elsewhere = center(d.widget_rect(1, 7));
    Outputs up = d.dispatch(UiEvent::mouse_up(elsewhere.x, elsewhere.y));
    REQUIRE(up.size() == 1);
    CHECK(up[0].to_string() == "isPressed(5,false)");
}

TEST_CASE("toggling twice is the identity") {
    Desktop d = make_desktop(kWorkbench);
    Point p = center(d.widget_rect(1, 6));
    Outputs first = click(d, p);
    REQUIRE(first.size() == 2);
    CHECK(first[0].to_string() == "isPressed(6,true)");
    CHECK(d.state().toggles.at(6));
    Outputs second = click(d, p);
    CHECK(second[0].to_string() == "isPressed(6,false)");
    CHECK_FALSE(d.state().toggles.at(6));
}

TEST_CASE("checkbox emits only statusChanged") {
    Desktop d = make_desktop(kWorkbench);
    Point p = center(d.widget_rect(1, 7));
    Outputs outputs = click(d, p);
    REQUIRE(outputs.size() == 1);
    CHECK(outputs[0].to_string() == "statusChanged(7,true)");
    Outputs again = click(d, p);
    CHECK(again[0].to_string() == "statusChanged(7,false)");
}

TEST_CASE("radio selection is exclusive and sticky") {
    Desktop d = make_desktop(kWorkbench);
    CHECK(d.state().radio_selection.at(8) == 9);
    Outputs reselect = click(d, center(d.widget_rect(1, 9)));
    CHECK(reselect.empty());  // cannot be unchecked by clicking
    Outputs flipped = click(d, center(d.widget_rect(1, 10)));
    REQUIRE(flipped.size() == 2);
    CHECK(flipped[0].to_string() == "statusChanged(9,false)");
    CHECK(flipped[1].to_string() == "statusChanged(10,true)");
    CHECK(d.state().radio_selection.at(8) == 10);
}

TEST_CASE("combo box opens, selects, and dismisses") {
    Desktop d = make_desktop(kWorkbench);
    Point p = center(d.widget_rect(1, 12));
    d.dispatch(UiEvent::mouse_down(p.x, p.y));
    d.dispatch(UiEvent::mouse_up(p.x, p.y));
    CHECK(d.state().combo_open.at(12));

    auto items = d.combo_item_rects(1, 12);
    REQUIRE(items.size() == 3);
    Point third = center(items[2]);
    Outputs selected = d.dispatch(UiEvent::mouse_down(third.x, third.y));
    REQUIRE(selected.size() == 1);
    CHECK(selected[0].to_string() == "selectionChanged(12,2)");
    CHECK_FALSE(d.state().combo_open.at(12));
    d.dispatch(UiEvent::mouse_up(third.x, third.y));

    // reopen, then dismiss by clicking empty frame area
    d.dispatch(UiEvent::mouse_down(p.x, p.y));
    d.dispatch(UiEvent::mouse_up(p.x, p.y));
    CHECK(d.state().combo_open.at(12));
    Rect content = d.frame_content_rect(1);
    Outputs dismissed =
        d.dispatch(UiEvent::mouse_down(content.x + content.w - 5, content.y + content.h - 5));
    CHECK(dismissed.empty());
    CHECK_FALSE(d.state().combo_open.at(12));
}

TEST_CASE("text field takes focus and reports edits") {
    Desktop d = make_desktop(kWorkbench);
    Point p = center(d.widget_rect(1, 11));
    d.dispatch(UiEvent::mouse_down(p.x, p.y));
    d.dispatch(UiEvent::mouse_up(p.x, p.y));
    CHECK(d.state().focused_field == 11);

    Outputs typed = d.dispatch(UiEvent::key_press("a"));
    REQUIRE(typed.size() == 1);
    CHECK(typed[0].to_string() == "textChanged(11,\"a\")");
    d.dispatch(UiEvent::key_press("b"));
    d.dispatch(UiEvent::key_press("c"));
    d.dispatch(UiEvent::key_press("d"));
    CHECK(d.state().textfields.at(11).buffer == "abcd");
    CHECK(d.dispatch(UiEvent::key_press("e")).empty());  // maxLength reached
    CHECK(d.state().textfields.at(11).buffer == "abcd");

    CHECK(d.dispatch(UiEvent::key_press("Enter")).empty());
    CHECK_FALSE(d.state().focused_field.has_value());
    CHECK(d.dispatch(UiEvent::key_press("x")).empty());  // nothing focused
}

TEST_CASE("slider reducer emits corrected values") {
    Desktop d = make_desktop(kWorkbench);
    Outputs outputs = d.slider_set(13, 3.2);
    REQUIRE(outputs.size() == 1);
    CHECK(outputs[0].type == OutputEvent::Type::ValueChanged);
    CHECK(outputs[0].value == 4);
    CHECK(d.slider_set(13, 4.0).empty());  // unchanged after correction
    Outputs clamped = d.slider_set(13, 15);
    REQUIRE(clamped.size() == 1);
    CHECK(clamped[0].value == 10);
}

TEST_CASE("slider drag maps track position to values") {
    Desktop d = make_desktop(kWorkbench);
    Rect r = d.widget_rect(1, 13);
    d.dispatch(UiEvent::mouse_down(r.x + r.w / 2, r.y + r.h / 2));
    CHECK(d.state().sliders.at(13) == 4);  // track midpoint is 5, a tie, snapped toward min
    d.dispatch(UiEvent::mouse_drag(r.x + r.w, r.y + r.h / 2));
    CHECK(d.state().sliders.at(13) == 10);
    d.dispatch(UiEvent::mouse_up(r.x + r.w, r.y + r.h / 2));
}

TEST_CASE("control buttons drive the window life cycle") {
    Desktop d = make_desktop(kWorkbench);
    Rect before = d.state().frames.at(1).rect;
    auto controls = d.control_button_rects(1);
    REQUIRE(controls.size() == 3);

    // maximize fills the viewport and remembers geometry
    Outputs maxed = d.dispatch(UiEvent::mouse_down(center(controls[1]).x, center(controls[1]).y));
    d.dispatch(UiEvent::mouse_up(center(controls[1]).x, center(controls[1]).y));
    REQUIRE(maxed.size() == 1);
    CHECK(maxed[0].to_string() == "frameStatus(1,maximized)");
    const Rect full = d.state().frames.at(1).rect;
    CHECK(full.x == 0);
    CHECK(full.y == 0);
    CHECK(full.w == 800);
    CHECK(full.h == 600);

    // the same slot now acts as normalize
    controls = d.control_button_rects(1);
    Outputs restored =
        d.dispatch(UiEvent::mouse_down(center(controls[1]).x, center(controls[1]).y));
    d.dispatch(UiEvent::mouse_up(center(controls[1]).x, center(controls[1]).y));
    REQUIRE(restored.size() == 1);
    CHECK(restored[0].to_string() == "frameStatus(1,normal)");
    CHECK(d.state().frames.at(1).rect.x == before.x);
    CHECK(d.state().frames.at(1).rect.w == before.w);

    // minimize hides the frame but keeps the band
    controls = d.control_button_rects(1);
    Outputs minimized =
        d.dispatch(UiEvent::mouse_down(center(controls[0]).x, center(controls[0]).y));
    d.dispatch(UiEvent::mouse_up(center(controls[0]).x, center(controls[0]).y));
    REQUIRE(minimized.size() == 1);
    CHECK(minimized[0].to_string() == "frameStatus(1,minimized)");
    CHECK_FALSE(d.state().active_frame.has_value());
    CHECK(d.state().bands.size() == 1);
    CHECK(d.hit_test(center(before).x, center(before).y).empty());

    // a taskbar click brings it back
    Outputs revived = d.taskbar_click(0);
    REQUIRE(revived.size() == 2);
    CHECK(revived[0].to_string() == "frameStatus(1,normal)");
    CHECK(revived[1].to_string() == "frameActivated(1)");

    // close drops frame and band; nothing stays active
    controls = d.control_button_rects(1);
    Outputs closed = d.dispatch(UiEvent::mouse_down(center(controls[2]).x, center(controls[2]).y));
    d.dispatch(UiEvent::mouse_up(center(controls[2]).x, center(controls[2]).y));
    REQUIRE(closed.size() == 1);
    CHECK(closed[0].to_string() == "frameStatus(1,closed)");
    CHECK(d.state().bands.empty());
    CHECK(d.state().frame_stack.empty());
    CHECK_FALSE(d.state().active_frame.has_value());
    CHECK(d.audit().empty());
}

TEST_CASE("maximize with normalize absent still round-trips geometry") {
    Desktop d = make_desktop("<Frame title=\"A\" width=\"100\" height=\"100\" "
                             "controls=\"MAXIMIZE\"/>");
    Rect before = d.state().frames.at(1).rect;
    d.control_button_action(1, ControlKind::Maximize);
    CHECK(d.state().frames.at(1).status == FrameStatus::Maximized);
    d.control_button_action(1, ControlKind::Normalize);
    CHECK(d.state().frames.at(1).rect.w == before.w);
    CHECK_THROWS(d.control_button_action(1, ControlKind::Close));
}

static const std::string kThreeFrames =
    "<Display>"
    "<Frame title=\"One\" x=\"10\" y=\"10\" width=\"150\" height=\"100\"><Button/></Frame>"
    "<Frame title=\"Two\" x=\"60\" y=\"40\" width=\"150\" height=\"100\"><Button/></Frame>"
    "<Frame title=\"Three\" x=\"110\" y=\"70\" width=\"150\" height=\"100\"><Button/></Frame>"
    "</Display>";

TEST_CASE("activation reorders the stack and overlapping hits go to the front") {
    Desktop d = make_desktop(kThreeFrames);
    // frames get ids 1,3,5; creation order = stack order; last one active
    CHECK(d.state().active_frame == 5);
    CHECK(d.state().frame_stack == std::vector<int>{1, 3, 5});

    Outputs raised = d.activate_frame(1);
    REQUIRE(raised.size() == 1);
    CHECK(raised[0].to_string() == "frameActivated(1)");
    CHECK(d.state().frame_stack == std::vector<int>{3, 5, 1});

    // the point (120,80) lies inside all three frames; front one wins
    auto path = d.hit_test(120, 80);
    REQUIRE_FALSE(path.empty());
    CHECK(path.front() == 1);

    // clicking a point only the inactive middle frame covers activates it
    Outputs activated = d.dispatch(UiEvent::mouse_down(180, 50));
    d.dispatch(UiEvent::mouse_up(180, 50));
    REQUIRE_FALSE(activated.empty());
    CHECK(activated[0].to_string() == "frameActivated(3)");
    CHECK(d.state().frame_stack.back() == 3);

    CHECK(d.activate_frame(3).empty());  // already active
    CHECK_THROWS(d.activate_frame(99));
}

TEST_CASE("taskbar clicks cover the three band cases") {
    Desktop d = make_desktop(kThreeFrames);
    CHECK(d.state().bands == std::vector<int>{1, 3, 5});

    // case 1: band of the active frame minimizes it
    Outputs minimized = d.taskbar_click(2);
    REQUIRE(minimized.size() == 1);
    CHECK(minimized[0].to_string() == "frameStatus(5,minimized)");
    CHECK(d.state().frames.at(5).status == FrameStatus::Minimized);
    CHECK(d.state().bands.size() == 3);  // band stays

    // case 2: band of a minimized frame restores and fronts it
    Outputs restored = d.taskbar_click(2);
    REQUIRE(restored.size() == 2);
    CHECK(restored[0].to_string() == "frameStatus(5,normal)");
    CHECK(restored[1].to_string() == "frameActivated(5)");
    CHECK(d.state().frame_stack.back() == 5);

    // case 3: band of an inactive normal frame activates and fronts it
    Outputs switched = d.taskbar_click(0);
    REQUIRE(switched.size() == 1);
    CHECK(switched[0].to_string() == "frameActivated(1)");
    CHECK(d.state().frame_stack.back() == 1);

    CHECK_THROWS(d.taskbar_click(5));
}

TEST_CASE("closing one of n frames leaves n-1 bands") {
    Desktop d = make_desktop(
        "<Display>"
        "<Frame title=\"One\" controls=\"CLOSE\" width=\"100\" height=\"80\"/>"
        "<Frame title=\"Two\" controls=\"CLOSE\" width=\"100\" height=\"80\"/>"
        "</Display>");
    REQUIRE(d.state().bands.size() == 2);
    d.control_button_action(1, ControlKind::Close);
    CHECK(d.state().bands == std::vector<int>{3});
    CHECK(d.audit().empty());
}

TEST_CASE("dragging the header moves the frame within the viewport") {
    Desktop d = make_desktop(kThreeFrames);
    d.activate_frame(1);
    Rect r = d.state().frames.at(1).rect;
    double grab_x = r.x + 60, grab_y = r.y + 8;
    d.dispatch(UiEvent::mouse_down(grab_x, grab_y));
    d.dispatch(UiEvent::mouse_drag(grab_x + 100, grab_y + 50));
    d.dispatch(UiEvent::mouse_up(grab_x + 100, grab_y + 50));
    Rect moved = d.state().frames.at(1).rect;
    CHECK(moved.x == r.x + 100);
    CHECK(moved.y == r.y + 50);

    // dragging far off-screen clamps to the viewport
    d.dispatch(UiEvent::mouse_down(moved.x + 60, moved.y + 8));
    d.dispatch(UiEvent::mouse_drag(5000, 5000));
    d.dispatch(UiEvent::mouse_up(5000, 5000));
    Rect clamped = d.state().frames.at(1).rect;
    CHECK(clamped.x == 800 - clamped.w);
    CHECK(clamped.y == 600 - clamped.h);
    CHECK(d.audit().empty());
}

TEST_CASE("resizing by the edge respects the layout minimum") {
    Desktop d = make_desktop("<Frame title=\"A\" x=\"10\" y=\"10\" width=\"200\" height=\"150\">"
                             "<TextButton text=\"Hello\"/></Frame>");
    Rect r = d.state().frames.at(1).rect;
    // grab the right edge and pull outward
    d.dispatch(UiEvent::mouse_down(r.x + r.w - 1, r.y + r.h / 2));
    d.dispatch(UiEvent::mouse_drag(r.x + r.w + 49, r.y + r.h / 2));
    d.dispatch(UiEvent::mouse_up(r.x + r.w + 49, r.y + r.h / 2));
    CHECK(d.state().frames.at(1).rect.w == r.w + 50);

    // shrinking below the minimum stops at the minimum
    Outputs ignored = d.frame_resize(1, {5, 5});
    CHECK(ignored.empty());
    Rect small = d.state().frames.at(1).rect;
    CHECK(small.w >= 42);  // TextButton("Hello") width 42
    CHECK(d.audit().empty());

    Desktop fixed = make_desktop(
        "<Frame title=\"S\" resizable=\"false\" width=\"100\" height=\"100\"/>");
    Rect held = fixed.state().frames.at(1).rect;
    fixed.frame_resize(1, {400, 400});
    CHECK(fixed.state().frames.at(1).rect.w == held.w);
}

TEST_CASE("viewport resize re-clamps frames and refills maximized ones") {
    Desktop d = make_desktop(
        "<Display><Frame title=\"A\" x=\"700\" y=\"0\" width=\"100\" height=\"80\"/>"
        "<Frame title=\"B\" controls=\"MAXIMIZE\" width=\"100\" height=\"80\"/></Display>");
    // ids: frame A = 1 (childless), frame B = 2, its control button 3
    d.control_button_action(2, ControlKind::Maximize);
    d.dispatch(UiEvent::viewport_resize(640, 600));
    CHECK(d.state().frames.at(1).rect.x == 540);
    CHECK(d.state().frames.at(2).rect.w == 640);
    CHECK(d.state().frames.at(2).rect.h == 600);
    CHECK(d.audit().empty());
}

TEST_CASE("tab selection swaps the laid-out content") {
    Desktop d = make_desktop(
        "<Frame title=\"T\" width=\"300\" height=\"200\">"
        "<TabPanel><Tab title=\"One\"><Label text=\"first\"/></Tab>"
        "<Tab title=\"Two\"><Button/></Tab></TabPanel></Frame>");
    // ids: frame 1, tabpanel 2, wrapper 3, label 4, wrapper 5, button 6
    CHECK(d.state().active_tab.at(2) == 0);
    CHECK(d.frame_layout(1).placements.count(4) == 1);
    CHECK(d.frame_layout(1).placements.count(6) == 0);

    auto headers = d.tab_header_rects(1, 2);
    REQUIRE(headers.size() == 2);
    Outputs switched = d.dispatch(UiEvent::mouse_down(center(headers[1]).x, center(headers[1]).y));
    d.dispatch(UiEvent::mouse_up(center(headers[1]).x, center(headers[1]).y));
    REQUIRE(switched.size() == 1);
    CHECK(switched[0].to_string() == "selectionChanged(2,1)");
    CHECK(d.state().active_tab.at(2) == 1);
    CHECK(d.frame_layout(1).placements.count(6) == 1);
    CHECK(d.frame_layout(1).placements.count(4) == 0);
    CHECK(d.tab_select(2, 1).empty());  // reselect is a no-op
    CHECK_THROWS(d.tab_select(2, 7));
}

TEST_CASE("replaying the same script gives identical digests") {
    std::vector<UiEvent> script = {
        UiEvent::mouse_down(120, 80), UiEvent::mouse_up(120, 80),
        UiEvent::mouse_down(70, 50),  UiEvent::mouse_drag(200, 200),
        UiEvent::mouse_up(200, 200),  UiEvent::viewport_resize(640, 480),
    };
    Desktop a = make_desktop(kThreeFrames);
    Desktop b = make_desktop(kThreeFrames);
    for (const UiEvent& event : script) {
        Outputs oa = a.dispatch(event);
        Outputs ob = b.dispatch(event);
        REQUIRE(oa.size() == ob.size());
        for (std::size_t i = 0; i < oa.size(); ++i)
            CHECK(oa[i].to_string() == ob[i].to_string());
    }
    CHECK(a.state_digest() == b.state_digest());
    CHECK(a.dump_state() == b.dump_state());
}

TEST_CASE("event scripts parse with strict sequence numbers") {
    auto events = parse_event_script(
        R"([{"seq":1,"type":"mouseDown","x":5,"y":6},
            {"seq":2,"type":"keyPress","key":"a"},
            {"seq":9,"type":"viewportResize","w":640,"h":480}])");
    REQUIRE(events.size() == 3);
    CHECK(events[0].type == UiEvent::Type::MouseDown);
    CHECK(events[1].key == "a");
    CHECK(events[2].w == 640);

    CHECK_THROWS_WITH_AS(
        parse_event_script(R"([{"seq":2,"type":"mouseUp","x":1,"y":1},
                               {"seq":1,"type":"mouseUp","x":1,"y":1}])"),
        doctest::Contains("record 1"), std::runtime_error);
    CHECK_THROWS(parse_event_script("not json"));
    CHECK_THROWS(parse_event_script(R"([{"seq":1,"type":"warp"}])"));
}
