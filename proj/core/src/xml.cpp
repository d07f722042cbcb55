#include "x3dui/xml.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace x3dui::xml {

Node Node::element(std::string n) {
    Node node;
    node.type = Type::Element;
    node.name = std::move(n);
    return node;
}

Node Node::comment(std::string payload) {
    Node node;
    node.type = Type::Comment;
    node.text = std::move(payload);
    return node;
}

Node Node::text_node(std::string payload) {
    Node node;
    node.type = Type::Text;
    node.text = std::move(payload);
    node.whitespace_only = std::all_of(node.text.begin(), node.text.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
    });
    return node;
}

const std::string* Node::attribute(std::string_view key) const {
    for (const auto& attr : attributes) {
        if (attr.name == key) return &attr.value;
    }
    return nullptr;
}

void Node::set_attribute(std::string_view key, std::string value) {
    for (auto& attr : attributes) {
        if (attr.name == key) {
            attr.value = std::move(value);
            return;
        }
    }
    attributes.push_back({std::string(key), std::move(value)});
}

Node& Node::add_child(Node child) {
    children.push_back(std::move(child));
    return children.back();
}

const Node* Node::first_child(std::string_view element_name) const {
    for (const auto& child : children) {
        if (child.type == Type::Element && child.name == element_name) return &child;
    }
    return nullptr;
}

ParseError::ParseError(const std::string& message, int line_, int column_)
    : std::runtime_error(message + " at line " + std::to_string(line_) + ", column " +
                         std::to_string(column_)),
      line(line_),
      column(column_) {}

namespace {

class Parser {
public:
    explicit Parser(std::string_view source) : src_(source) {}

    Document run() {
        Document doc;
        skip_prolog(doc);
        skip_misc(doc);
        if (eof()) fail("expected root element");
        doc.root = parse_element();
        // trailing whitespace/comments allowed
        while (!eof()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (starts_with("<!--")) {
                parse_comment();
            } else {
                fail("content after root element");
            }
        }
        return doc;
    }

private:
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;

    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message, line_, col_);
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek(size_t off = 0) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool starts_with(std::string_view prefix) const {
        return src_.compare(pos_, prefix.size(), prefix) == 0;
    }

    void expect(std::string_view token) {
        if (!starts_with(token)) fail("expected '" + std::string(token) + "'");
        for (size_t i = 0; i < token.size(); ++i) advance();
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
    }

    void skip_prolog(Document& doc) {
        skip_ws();
        if (starts_with("<?xml")) {
            expect("<?xml");
            std::string decl;
            while (!eof() && !starts_with("?>")) decl.push_back(advance());
            if (eof()) fail("unterminated XML declaration");
            expect("?>");
            // trim
            size_t begin = decl.find_first_not_of(" \t\r\n");
            size_t end = decl.find_last_not_of(" \t\r\n");
            doc.xml_decl = begin == std::string::npos ? "" : decl.substr(begin, end - begin + 1);
        }
    }

    void skip_misc(Document& doc) {
        for (;;) {
            skip_ws();
            if (starts_with("<!--")) {
                parse_comment();
            } else if (starts_with("<!DOCTYPE")) {
                expect("<!DOCTYPE");
                std::string body;
                int depth = 1;
                while (!eof() && depth > 0) {
                    char c = advance();
                    if (c == '<') ++depth;
                    if (c == '>') --depth;
                    if (depth > 0) body.push_back(c);
                }
                doc.doctype = body;
            } else {
                return;
            }
        }
    }

    static bool is_name_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == ':';
    }
    static bool is_name_char(char c) {
        return is_name_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
               c == '.';
    }

    std::string parse_name() {
        if (eof() || !is_name_start(peek())) fail("expected name");
        std::string name;
        while (!eof() && is_name_char(peek())) name.push_back(advance());
        return name;
    }

    std::string decode_entity() {
        // at '&'
        int eline = line_, ecol = col_;
        advance();
        std::string ent;
        while (!eof() && peek() != ';' && ent.size() < 12) ent.push_back(advance());
        if (eof() || peek() != ';') throw ParseError("unterminated entity", eline, ecol);
        advance();
        if (ent == "amp") return "&";
        if (ent == "lt") return "<";
        if (ent == "gt") return ">";
        if (ent == "quot") return "\"";
        if (ent == "apos") return "'";
        if (!ent.empty() && ent[0] == '#') {
            long code = 0;
            try {
                code = ent[1] == 'x' || ent[1] == 'X' ? std::stol(ent.substr(2), nullptr, 16)
                                                      : std::stol(ent.substr(1));
            } catch (...) {
                throw ParseError("bad character reference '&" + ent + ";'", eline, ecol);
            }
            return encode_utf8(static_cast<unsigned long>(code));
        }
        throw ParseError("unknown entity '&" + ent + ";'", eline, ecol);
    }

    static std::string encode_utf8(unsigned long cp) {
        std::string out;
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
        return out;
    }

    Attribute parse_attribute() {
        Attribute attr;
        attr.name = parse_name();
        skip_ws();
        if (eof() || peek() != '=') fail("expected '=' after attribute name");
        advance();
        skip_ws();
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
        char quote = advance();
        while (!eof() && peek() != quote) {
            if (peek() == '&') {
                attr.value += decode_entity();
            } else if (peek() == '<') {
                fail("'<' in attribute value");
            } else {
                attr.value.push_back(advance());
            }
        }
        if (eof()) fail("unterminated attribute value");
        advance();
        return attr;
    }

    Node parse_comment() {
        Node node;
        node.type = Node::Type::Comment;
        node.line = line_;
        node.column = col_;
        expect("<!--");
        while (!eof() && !starts_with("-->")) node.text.push_back(advance());
        if (eof()) fail("unterminated comment");
        expect("-->");
        return node;
    }

    Node parse_element() {
        Node node;
        node.type = Node::Type::Element;
        node.line = line_;
        node.column = col_;
        expect("<");
        node.name = parse_name();
        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (starts_with("/>")) {
                expect("/>");
                return node;
            }
            if (peek() == '>') {
                advance();
                break;
            }
            Attribute attr = parse_attribute();
            if (node.attribute(attr.name)) fail("duplicate attribute '" + attr.name + "'");
            node.attributes.push_back(std::move(attr));
        }
        // content
        for (;;) {
            if (eof()) fail("unterminated element '" + node.name + "'");
            if (starts_with("</")) {
                expect("</");
                std::string closing = parse_name();
                if (closing != node.name)
                    fail("mismatched closing tag '" + closing + "', expected '" + node.name + "'");
                skip_ws();
                expect(">");
                return node;
            }
            if (starts_with("<!--")) {
                node.children.push_back(parse_comment());
            } else if (peek() == '<') {
                node.children.push_back(parse_element());
            } else {
                Node text;
                text.type = Node::Type::Text;
                text.line = line_;
                text.column = col_;
                while (!eof() && peek() != '<') {
                    if (peek() == '&') {
                        text.text += decode_entity();
                    } else {
                        text.text.push_back(advance());
                    }
                }
                text.whitespace_only = std::all_of(
                    text.text.begin(), text.text.end(),
                    [](unsigned char c) { return std::isspace(c) != 0; });
                node.children.push_back(std::move(text));
            }
        }
    }
};

void write_node(std::string& out, const Node& node, Layout layout, int depth, bool inline_mode) {
    const bool pretty = layout == Layout::Pretty && !inline_mode;
    auto indent = [&] {
        if (pretty) out.append(static_cast<size_t>(depth) * 2, ' ');
    };
    switch (node.type) {
        case Node::Type::Text:
            if (node.whitespace_only) return;  // re-emitted as formatting
            indent();
            out += escape_text(node.text);
            if (pretty) out += '\n';
            return;
        case Node::Type::Comment:
            indent();
            out += "<!--" + node.text + "-->";
            if (pretty) out += '\n';
            return;
        case Node::Type::Element:
            break;
    }
    indent();
    out += '<';
    out += node.name;
    for (const auto& attr : node.attributes) {
        out += ' ';
        out += attr.name;
        out += "=\"";
        out += escape_attribute(attr.value);
        out += '"';
    }
    bool has_content = std::any_of(node.children.begin(), node.children.end(), [](const Node& c) {
        return c.type != Node::Type::Text || !c.whitespace_only;
    });
    if (!has_content) {
        out += "/>";
        if (pretty) out += '\n';
        return;
    }
    // Elements holding real text are rendered inline so the text survives a
    // reparse byte-exact.
    bool has_text = std::any_of(node.children.begin(), node.children.end(), [](const Node& c) {
        return c.type == Node::Type::Text && !c.whitespace_only;
    });
    bool child_inline = inline_mode || has_text;
    out += '>';
    if (pretty && !child_inline) out += '\n';
    for (const auto& child : node.children)
        write_node(out, child, layout, depth + 1, child_inline);
    if (!child_inline) indent();
    out += "</";
    out += node.name;
    out += '>';
    if (pretty) out += '\n';
}

}  // namespace

Document parse(std::string_view source) { return Parser(source).run(); }

std::string serialize(const Node& node, Layout layout) {
    std::string out;
    write_node(out, node, layout, 0, false);
    return out;
}

std::string serialize(const Document& doc, Layout layout) {
    std::string out;
    if (!doc.xml_decl.empty()) {
        out += "<?xml " + doc.xml_decl + "?>";
        if (layout == Layout::Pretty) out += '\n';
    }
    if (!doc.doctype.empty()) {
        out += "<!DOCTYPE" + doc.doctype + ">";
        if (layout == Layout::Pretty) out += '\n';
    }
    out += serialize(doc.root, layout);
    return out;
}

bool structurally_equal(const Node& a, const Node& b) {
    auto significant = [](const Node& n) {
        return n.type != Node::Type::Text || !n.whitespace_only;
    };
    if (a.type != b.type) return false;
    if (a.type != Node::Type::Element) return a.text == b.text;
    if (a.name != b.name) return false;
    if (a.attributes.size() != b.attributes.size()) return false;
    for (size_t i = 0; i < a.attributes.size(); ++i) {
        if (a.attributes[i].name != b.attributes[i].name) return false;
        if (a.attributes[i].value != b.attributes[i].value) return false;
    }
    std::vector<const Node*> ca, cb;
    for (const auto& c : a.children)
        if (significant(c)) ca.push_back(&c);
    for (const auto& c : b.children)
        if (significant(c)) cb.push_back(&c);
    if (ca.size() != cb.size()) return false;
    for (size_t i = 0; i < ca.size(); ++i) {
        if (!structurally_equal(*ca[i], *cb[i])) return false;
    }
    return true;
}

bool structurally_equal(const Document& a, const Document& b) {
    return structurally_equal(a.root, b.root);
}

std::string escape_attribute(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

std::string escape_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace x3dui::xml
