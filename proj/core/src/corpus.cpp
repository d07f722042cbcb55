#include "x3dui/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace x3dui::corpus {

namespace {

std::string category_dir(WidgetKind kind) {
    switch (category_of(kind)) {
        case WidgetCategory::System: return "system";
        case WidgetCategory::Visual: return "visual";
        case WidgetCategory::Group: return "group";
        case WidgetCategory::Layout: return "layout";
    }
    return "visual";
}

// extern references per prototype; edges only point at catalog-earlier kinds
// so the dependency graph stays acyclic
std::vector<std::string> dependencies(WidgetKind kind) {
    switch (kind) {
        case WidgetKind::Display: return {};
        case WidgetKind::Settings: return {};
        case WidgetKind::Rectangle: return {};
        case WidgetKind::Layer: return {"Rectangle"};
        case WidgetKind::Plane: return {"Rectangle"};
        case WidgetKind::Button: return {"Plane"};
        case WidgetKind::ToggleButton: return {"Button"};
        case WidgetKind::TextButton: return {"Button"};
        case WidgetKind::TextToggleButton: return {"ToggleButton", "TextButton"};
        case WidgetKind::CheckBox: return {"ToggleButton"};
        case WidgetKind::RadioButton: return {"ToggleButton"};
        case WidgetKind::ControlButton: return {"Button"};
        case WidgetKind::Label: return {"Plane"};
        case WidgetKind::TextField: return {"Plane", "Label"};
        case WidgetKind::ComboBox: return {"TextField", "Button"};
        case WidgetKind::HorizontalSlider: return {"Plane"};
        case WidgetKind::HorizontalRunner: return {"Button"};
        case WidgetKind::Panel: return {"Plane"};
        case WidgetKind::TabPanel: return {"Panel", "TextToggleButton"};
        case WidgetKind::Frame: return {"Panel", "ControlButton", "Label"};
        case WidgetKind::TaskBar: return {"Panel", "TextToggleButton"};
        case WidgetKind::RadioButtonGroup: return {"RadioButton"};
        case WidgetKind::LayoutManager: return {};
        case WidgetKind::BorderLayout: return {"LayoutManager"};
        case WidgetKind::BoxLayout: return {"LayoutManager"};
        case WidgetKind::GridLayout: return {"LayoutManager"};
        case WidgetKind::FlowLayout: return {"LayoutManager"};
    }
    return {};
}

struct FieldDef {
    std::string name;
    std::string type;
    std::string access;
    std::string value;
    std::string doc;
};

std::vector<FieldDef> fields_of(WidgetKind kind) {
    std::vector<FieldDef> fields = {
        {"width", "SFFloat", "inputOutput", "100", "requested component width in pixels"},
        {"height", "SFFloat", "inputOutput", "20", "requested component height in pixels"},
        {"visible", "SFBool", "inputOutput", "true", "hides the component without unloading it"},
        {"transparency", "SFFloat", "inputOutput", "0", "surface transparency between 0 and 1"},
    };
    switch (category_of(kind)) {
        case WidgetCategory::Layout:
            fields = {
                {"hgap", "SFFloat", "initializeOnly", "5", "horizontal gap between children"},
                {"vgap", "SFFloat", "initializeOnly", "5", "vertical gap between children"},
                {"doLayout", "SFTime", "inputOnly", "",
                 "recomputes every child placement for the container"},
                {"getMinimumSize", "SFTime", "inputOnly", "",
                 "reports the smallest size the container may take"},
            };
            return fields;
        case WidgetCategory::Group:
            fields.push_back({"selected", "SFInt32", "inputOutput", "0",
                              "member currently holding the checked mark"});
            fields.push_back({"select", "SFInt32", "inputOnly", "",
                              "checks one member and unchecks the rest"});
            return fields;
        case WidgetCategory::System:
            fields.push_back({"imagePath", "SFString", "initializeOnly", "images/",
                              "base location of the library's graphical files"});
            fields.push_back({"fontSize", "SFFloat", "initializeOnly", "10",
                              "base glyph size all text metrics derive from"});
            return fields;
        case WidgetCategory::Visual:
            break;
    }
    switch (kind) {
        case WidgetKind::TextButton:
        case WidgetKind::TextToggleButton:
        case WidgetKind::Label:
            fields.push_back(
                {"text", "SFString", "inputOutput", "", "caption drawn on the face"});
            break;
        case WidgetKind::TextField:
            fields.push_back({"text", "SFString", "inputOutput", "", "current field content"});
            fields.push_back({"maxLength", "SFInt32", "initializeOnly", "0",
                              "caps the message length, 0 means unbounded"});
            break;
        case WidgetKind::ComboBox:
            fields.push_back({"items", "MFString", "initializeOnly", "",
                              "selectable entries of the drop-down list"});
            fields.push_back({"selectItem", "SFInt32", "inputOnly", "",
                              "programmatic selection of one entry"});
            break;
        case WidgetKind::HorizontalSlider:
            fields.push_back({"minValue", "SFFloat", "initializeOnly", "0",
                              "value at the track's left end"});
            fields.push_back({"maxValue", "SFFloat", "initializeOnly", "100",
                              "value at the track's right end"});
            fields.push_back({"setValue", "SFFloat", "inputOnly", "",
                              "moves the runner after bound and mark correction"});
            break;
        case WidgetKind::Frame:
            fields.push_back({"title", "SFString", "inputOutput", "", "header caption"});
            fields.push_back({"resizable", "SFBool", "initializeOnly", "true",
                              "enables the border resize grips"});
            fields.push_back({"activate", "SFTime", "inputOnly", "",
                              "raises the window and gives it the focus"});
            break;
        case WidgetKind::Button:
        case WidgetKind::ToggleButton:
        case WidgetKind::CheckBox:
        case WidgetKind::RadioButton:
            fields.push_back({"press", "SFTime", "inputOnly", "",
                              "programmatic press of the component"});
            break;
        default:
            break;
    }
    return fields;
}

// Hand-written style: wide indentation, banner comments, blank lines. The
// whitespace is the point; minification must win it back.
std::string proto_file_text(WidgetKind kind) {
    std::string name(kind_name(kind));
    std::ostringstream out;
    const std::string pad = "    ";
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<X3D profile=\"Immersive\" version=\"3.2\">\n\n";
    out << pad << "<Scene>\n\n";
    out << pad << pad << "<!-- ================================================== -->\n";
    out << pad << pad << "<!-- @doc proto " << name << ": reusable " << category_dir(kind)
        << " prototype of the widget library -->\n";
    out << pad << pad << "<!-- ================================================== -->\n\n";
    for (const std::string& dep : dependencies(kind)) {
        std::string dep_dir = "visual";
        if (auto dep_kind = kind_from_name(dep)) dep_dir = category_dir(*dep_kind);
        out << pad << pad << "<ExternProtoDeclare name=\"" << dep << "\" url=\"../" << dep_dir
            << "/" << dep << ".x3d#" << dep << "\">\n";
        out << pad << pad << pad << "<field name=\"station\" type=\"SFNode\" accessType=\"initializeOnly\"/>\n";
        out << pad << pad << "</ExternProtoDeclare>\n\n";
    }
    out << pad << pad << "<ProtoDeclare name=\"" << name << "\">\n\n";
    out << pad << pad << pad << "<ProtoInterface>\n";
    for (const FieldDef& field : fields_of(kind)) {
        out << pad << pad << pad << pad << "<!-- @doc "
            << (field.access == "inputOnly" ? "method" : "field") << " " << field.name << ": "
            << field.doc << " -->\n";
        out << pad << pad << pad << pad << "<field name=\"" << field.name << "\" type=\""
            << field.type << "\" accessType=\"" << field.access << "\"";
        if (!field.value.empty()) out << " value=\"" << field.value << "\"";
        out << "/>\n";
    }
    out << pad << pad << pad << "</ProtoInterface>\n\n";
    out << pad << pad << pad << "<ProtoBody>\n";
    out << pad << pad << pad << pad << "<Group DEF=\"" << name << "Root\">\n";
    for (int part = 0; part < 3; ++part) {
        out << pad << pad << pad << pad << pad << "<Transform DEF=\"" << name << "Part"
            << part << "\" translation=\"0 0 0." << part << "\">\n";
        out << pad << pad << pad << pad << pad << pad << "<Shape>\n";
        out << pad << pad << pad << pad << pad << pad << pad << "<Appearance>\n";
        out << pad << pad << pad << pad << pad << pad << pad << pad
            << "<Material diffuseColor=\"0.8 0.8 0.78\" transparency=\"0\"/>\n";
        out << pad << pad << pad << pad << pad << pad << pad << "</Appearance>\n";
        out << pad << pad << pad << pad << pad << pad << pad
            << "<IndexedFaceSet coordIndex=\"0 1 2 3 -1\" solid=\"false\">\n";
        out << pad << pad << pad << pad << pad << pad << pad << pad
            << "<Coordinate point=\"0 0 0, 1 0 0, 1 1 0, 0 1 0\"/>\n";
        out << pad << pad << pad << pad << pad << pad << pad << "</IndexedFaceSet>\n";
        out << pad << pad << pad << pad << pad << pad << "</Shape>\n";
        out << pad << pad << pad << pad << pad << "</Transform>\n";
    }
    out << pad << pad << pad << pad << pad << "<Script DEF=\"" << name << "Logic\">\n";
    out << pad << pad << pad << pad << pad << pad
        << "<field name=\"station\" type=\"SFNode\" accessType=\"initializeOnly\"/>\n";
    out << pad << pad << pad << pad << pad << "</Script>\n";
    out << pad << pad << pad << pad << "</Group>\n";
    out << pad << pad << pad << "</ProtoBody>\n\n";
    out << pad << pad << "</ProtoDeclare>\n\n";
    out << pad << "</Scene>\n\n";
    out << "</X3D>\n";
    return out.str();
}

}  // namespace

std::vector<CorpusFile> generate_corpus() {
    std::vector<CorpusFile> files;
    for (WidgetKind kind : widget_catalog()) {
        CorpusFile file;
        file.category = category_dir(kind);
        file.relative_path = file.category + "/" + std::string(kind_name(kind)) + ".x3d";
        file.content = proto_file_text(kind);
        files.push_back(std::move(file));
    }
    for (const char* image : {"button_face.png", "check_mark.png", "runner.png"}) {
        CorpusFile file;
        file.category = "images";
        file.relative_path = std::string("images/") + image;
        file.content = std::string("PNGSTUB ") + image + "\n";
        files.push_back(std::move(file));
    }
    return files;
}

void write_corpus(const std::string& directory) {
    namespace fs = std::filesystem;
    for (const CorpusFile& file : generate_corpus()) {
        fs::path path = fs::path(directory) / file.relative_path;
        fs::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << file.content;
    }
}

}  // namespace x3dui::corpus
