#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "x3dui/xml.hpp"

using namespace x3dui;

TEST_CASE("parsing a two-element document") {
    xml::Document doc = xml::parse("<X3D><Scene/></X3D>");
    CHECK(doc.root.name == "X3D");
    REQUIRE(doc.root.children.size() == 1);
    CHECK(doc.root.children[0].name == "Scene");
}

TEST_CASE("comments survive parsing") {
    xml::Document doc = xml::parse("<a><!-- hi --><b/></a>");
    REQUIRE(doc.root.children.size() == 2);
    CHECK(doc.root.children[0].type == xml::Node::Type::Comment);
    CHECK(doc.root.children[0].text == " hi ");
}

TEST_CASE("attributes keep declaration order") {
    xml::Node node = xml::Node::element("Foo");
    node.set_attribute("a", "1");
    node.set_attribute("b", "2");
    CHECK(xml::serialize(node) == "<Foo a=\"1\" b=\"2\"/>\n");
}

TEST_CASE("entities decode and re-encode") {
    xml::Document doc = xml::parse("<a t=\"x&amp;y&lt;z\">5 &gt; 4 &#65;</a>");
    CHECK(*doc.root.attribute("t") == "x&y<z");
    REQUIRE(doc.root.children.size() == 1);
    CHECK(doc.root.children[0].text == "5 > 4 A");
    xml::Document again = xml::parse(xml::serialize(doc));
    CHECK(xml::structurally_equal(doc, again));
}

TEST_CASE("duplicate attributes are rejected with a position") {
    CHECK_THROWS_AS(xml::parse("<a x=\"1\" x=\"2\"/>"), xml::ParseError);
    try {
        xml::parse("<a>\n  <b x=\"1\" x=\"2\"/>\n</a>");
        FAIL("expected a parse error");
    } catch (const xml::ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("malformed input names the location") {
    CHECK_THROWS_AS(xml::parse("<a><b></a>"), xml::ParseError);
    CHECK_THROWS_AS(xml::parse("no markup"), xml::ParseError);
    CHECK_THROWS_AS(xml::parse("<a attr></a>"), xml::ParseError);
}

TEST_CASE("minified output drops indentation but keeps comments") {
    xml::Document doc = xml::parse("<a>\n  <!-- keep -->\n  <b>\n    <c/>\n  </b>\n</a>");
    std::string min = xml::serialize(doc, xml::Layout::Minified);
    CHECK(min == "<a><!-- keep --><b><c/></b></a>");
    CHECK(xml::structurally_equal(doc, xml::parse(min)));
}

TEST_CASE("structural equality ignores whitespace-only text") {
    xml::Document pretty = xml::parse("<a>\n  <b/>\n</a>");
    xml::Document tight = xml::parse("<a><b/></a>");
    CHECK(xml::structurally_equal(pretty, tight));
    xml::Document other = xml::parse("<a><b x=\"1\"/></a>");
    CHECK_FALSE(xml::structurally_equal(pretty, other));
}

TEST_CASE("mixed text content round-trips byte-exact") {
    xml::Document doc = xml::parse("<p>one <b>two</b> three</p>");
    std::string text = xml::serialize(doc);
    CHECK(xml::structurally_equal(doc, xml::parse(text)));
    CHECK(xml::serialize(xml::parse(text)) == text);
}

TEST_CASE("serializer round-trip holds on random documents") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 300; ++i) {
        xml::Document doc = testhelp::random_document(rng, 60);
        std::string pretty = xml::serialize(doc, xml::Layout::Pretty);
        std::string minified = xml::serialize(doc, xml::Layout::Minified);
        CAPTURE(pretty);
        CHECK(xml::structurally_equal(doc, xml::parse(pretty)));
        CHECK(xml::structurally_equal(doc, xml::parse(minified)));
    }
}

TEST_CASE("xml declaration and doctype are preserved") {
    xml::Document doc =
        xml::parse("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!DOCTYPE X3D>\n<X3D/>");
    CHECK(doc.xml_decl == "version=\"1.0\" encoding=\"UTF-8\"");
    CHECK(doc.root.name == "X3D");
}
