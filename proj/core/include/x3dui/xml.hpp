#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace x3dui::xml {

struct Attribute {
    std::string name;
    std::string value;
};

// One node of a generic element tree. Text and comment nodes keep their
// payload in `text`; whitespace-only text is flagged so minification and
// structural comparison can ignore it.
struct Node {
    enum class Type { Element, Text, Comment };

    Type type = Type::Element;
    std::string name;                   // element name
    std::string text;                   // text/comment payload
    std::vector<Attribute> attributes;  // declaration order preserved
    std::vector<Node> children;
    int line = 0;
    int column = 0;
    bool whitespace_only = false;

    static Node element(std::string n);
    static Node comment(std::string payload);
    static Node text_node(std::string payload);

    const std::string* attribute(std::string_view key) const;
    void set_attribute(std::string_view key, std::string value);
    Node& add_child(Node child);

    const Node* first_child(std::string_view element_name) const;
};

struct Document {
    Node root;
    std::string xml_decl;  // e.g. `version="1.0" encoding="UTF-8"`, empty if absent
    std::string doctype;   // raw DOCTYPE body, empty if absent
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, int line, int column);
    int line;
    int column;
};

Document parse(std::string_view source);

enum class Layout { Pretty, Minified };

// Deterministic serialization: attributes in declaration order, 2-space
// indentation in pretty mode. Minified mode drops whitespace-only text and
// all indentation but keeps comments.
std::string serialize(const Document& doc, Layout layout = Layout::Pretty);
std::string serialize(const Node& node, Layout layout = Layout::Pretty);

// Equality up to insignificant whitespace: whitespace-only text nodes are
// skipped, everything else (names, attribute order/values, comments, text)
// must match exactly.
bool structurally_equal(const Node& a, const Node& b);
bool structurally_equal(const Document& a, const Document& b);

std::string escape_attribute(std::string_view raw);
std::string escape_text(std::string_view raw);

}  // namespace x3dui::xml
