#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "x3dui/xml.hpp"

namespace testhelp {

// Random element trees for serializer round-trip checks.
inline x3dui::xml::Node random_node(std::mt19937& rng, int depth, int& budget) {
    static const char* names[] = {"Group",  "Transform", "Shape",    "Material",
                                  "Widget", "Panel",     "Appearance"};
    static const char* words[] = {"alpha", "beta", "a b c", "0 1 2", "x=1&y<2", "\"quoted\""};
    std::uniform_int_distribution<int> name_pick(0, 6);
    std::uniform_int_distribution<int> word_pick(0, 5);
    std::uniform_int_distribution<int> attr_count(0, 3);
    std::uniform_int_distribution<int> child_count(0, depth > 0 ? 3 : 0);
    std::uniform_int_distribution<int> kind_pick(0, 9);

    x3dui::xml::Node node = x3dui::xml::Node::element(names[name_pick(rng)]);
    --budget;
    int attrs = attr_count(rng);
    for (int i = 0; i < attrs; ++i)
        node.set_attribute("a" + std::to_string(i), words[word_pick(rng)]);
    int children = child_count(rng);
    bool last_was_text = false;
    for (int i = 0; i < children && budget > 0; ++i) {
        int kind = kind_pick(rng);
        if (kind == 1 && last_was_text) kind = 2;  // adjacent text merges on reparse
        last_was_text = kind == 1;
        if (kind == 0) {
            node.add_child(x3dui::xml::Node::comment("note " + std::to_string(i)));
            --budget;
        } else if (kind == 1) {
            node.add_child(x3dui::xml::Node::text_node(words[word_pick(rng)]));
            --budget;
        } else {
            node.add_child(random_node(rng, depth - 1, budget));
        }
    }
    return node;
}

inline x3dui::xml::Document random_document(std::mt19937& rng, int max_nodes) {
    x3dui::xml::Document doc;
    int budget = max_nodes;
    doc.root = random_node(rng, 5, budget);
    return doc;
}

// Random UI descriptions exercising most widget kinds.
inline std::string random_spec(std::mt19937& rng) {
    std::uniform_int_distribution<int> frame_count(1, 3);
    std::uniform_int_distribution<int> child_count(0, 5);
    std::uniform_int_distribution<int> widget_pick(0, 9);
    std::ostringstream out;
    out << "<Display>\n";
    int frames = frame_count(rng);
    for (int f = 0; f < frames; ++f) {
        out << "  <Frame title=\"F" << f << "\" width=\"240\" height=\"180\"";
        if (f % 2 == 0) out << " controls=\"MINIMIZE,CLOSE\"";
        out << ">\n";
        int children = child_count(rng);
        for (int c = 0; c < children; ++c) {
            switch (widget_pick(rng)) {
                case 0: out << "    <TextButton text=\"B" << c << "\"/>\n"; break;
                case 1: out << "    <CheckBox text=\"C" << c << "\"/>\n"; break;
                case 2: out << "    <Label text=\"L" << c << "\"/>\n"; break;
                case 3: out << "    <TextField maxLength=\"8\"/>\n"; break;
                case 4: out << "    <ComboBox items=\"one|two|three\"/>\n"; break;
                case 5: out << "    <HorizontalSlider min=\"0\" max=\"10\"/>\n"; break;
                case 6:
                    out << "    <RadioButtonGroup><RadioButton text=\"r1\"/>"
                        << "<RadioButton text=\"r2\"/></RadioButtonGroup>\n";
                    break;
                case 7:
                    out << "    <Panel layout=\"grid\" rows=\"2\" cols=\"2\">"
                        << "<Label text=\"g\"/><Button/></Panel>\n";
                    break;
                case 8:
                    out << "    <TabPanel><Tab title=\"t1\"><Label text=\"p\"/></Tab>"
                        << "<Tab title=\"t2\"><Button/></Tab></TabPanel>\n";
                    break;
                default: out << "    <Button/>\n"; break;
            }
        }
        out << "  </Frame>\n";
    }
    out << "</Display>\n";
    return out.str();
}

}  // namespace testhelp
