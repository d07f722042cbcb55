#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "x3dui/corpus.hpp"
#include "x3dui/toolchain.hpp"

using namespace x3dui;

namespace {

std::string proto_text(const std::string& name, const std::vector<std::string>& refs,
                       const std::string& extra = "") {
    std::string out = "<X3D><Scene>\n";
    for (const auto& ref : refs)
        out += "    <ExternProtoDeclare name=\"" + ref + "\" url=\"lib#" + ref + "\"/>\n";
    out += "    " + extra + "<ProtoDeclare name=\"" + name + "\">\n";
    out += "        <ProtoInterface><field name=\"width\" type=\"SFFloat\"/>"
           "<field name=\"press\" type=\"SFBool\" accessType=\"inputOnly\"/></ProtoInterface>\n";
    out += "        <ProtoBody><Group/></ProtoBody>\n    </ProtoDeclare>\n</Scene></X3D>\n";
    return out;
}

}  // namespace

TEST_CASE("minify strips layout whitespace and nothing else") {
    std::string text = "<a>\n    <!-- keep -->\n    <b attr=\"x  y\">\n        <c/>\n"
                       "    </b>\n</a>\n";
    std::string small = tool::minify(text);
    CHECK(small == "<a><!-- keep --><b attr=\"x  y\"><c/></b></a>");
    CHECK(tool::minify(small) == small);  // idempotent
    CHECK(xml::structurally_equal(xml::parse(text), xml::parse(small)));
}

TEST_CASE("minify preserves meaningful text content") {
    std::string text = "<a><b>hello  world</b></a>";
    CHECK(tool::minify(text).find("hello  world") != std::string::npos);
}

TEST_CASE("minification of random documents preserves the canonical parse") {
    std::mt19937 rng(31);
    for (int i = 0; i < 200; ++i) {
        xml::Document doc = testhelp::random_document(rng, 40);
        std::string pretty = xml::serialize(doc, xml::Layout::Pretty);
        std::string small = tool::minify(pretty);
        CHECK(small.size() <= pretty.size());
        CHECK(tool::minify(small) == small);
        CHECK(xml::structurally_equal(xml::parse(pretty), xml::parse(small)));
    }
}

TEST_CASE("size reduction is reported to one decimal") {
    CHECK(tool::size_reduction_percent(430000, 280000) == doctest::Approx(34.9));
    CHECK(tool::size_reduction_percent(1000, 1000) == 0.0);
    CHECK(tool::size_reduction_percent(1000, 700) == doctest::Approx(30.0));
    CHECK(tool::format_reduction(430000, 280000) == "34.9");
    CHECK_THROWS(tool::size_reduction_percent(0, 10));
}

TEST_CASE("a library file must declare exactly one prototype") {
    tool::ProtoFile file = tool::load_proto_file("visual/Button.x3d", "visual",
                                                 proto_text("Button", {"Rectangle"}));
    CHECK(file.declared == "Button");
    CHECK(file.references == std::vector<std::string>{"Rectangle"});
    CHECK(file.category == "visual");
    CHECK(file.source_bytes > 0);

    CHECK_THROWS(tool::load_proto_file("x.x3d", "visual", "<X3D><Scene><Group/></Scene></X3D>"));
    std::string twice = "<X3D><Scene><ProtoDeclare name=\"A\"><ProtoBody><Group/></ProtoBody>"
                        "</ProtoDeclare><ProtoDeclare name=\"B\"><ProtoBody><Group/></ProtoBody>"
                        "</ProtoDeclare></Scene></X3D>";
    CHECK_THROWS(tool::load_proto_file("x.x3d", "visual", twice));
}

TEST_CASE("bundling orders declarations before their uses") {
    std::vector<tool::ProtoFile> files;
    files.push_back(tool::load_proto_file("visual/B.x3d", "visual", proto_text("B", {"A"})));
    files.push_back(tool::load_proto_file("visual/A.x3d", "visual", proto_text("A", {})));
    tool::BundleResult result = tool::bundle(files);
    CHECK(result.report.order == std::vector<std::string>{"A", "B"});

    // no intra-bundle extern declarations survive
    std::string text = xml::serialize(result.document, xml::Layout::Minified);
    CHECK(text.find("ExternProtoDeclare") == std::string::npos);
    CHECK(result.report.input_bytes == files[0].source_bytes + files[1].source_bytes);
    CHECK(result.report.output_bytes == text.size());
}

TEST_CASE("a single file passes through the bundler") {
    std::vector<tool::ProtoFile> files{
        tool::load_proto_file("visual/A.x3d", "visual", proto_text("A", {}))};
    tool::BundleResult result = tool::bundle(files);
    CHECK(result.report.order == std::vector<std::string>{"A"});
}

TEST_CASE("ties in the dependency order resolve by name") {
    std::vector<tool::ProtoFile> files;
    files.push_back(tool::load_proto_file("visual/C.x3d", "visual", proto_text("C", {})));
    files.push_back(tool::load_proto_file("visual/A.x3d", "visual", proto_text("A", {})));
    files.push_back(tool::load_proto_file("visual/B.x3d", "visual", proto_text("B", {"C"})));
    tool::BundleResult result = tool::bundle(files);
    CHECK(result.report.order == std::vector<std::string>{"A", "C", "B"});
    // determinism under input permutation
    std::swap(files[0], files[1]);
    CHECK(tool::bundle(files).report.order == result.report.order);
}

TEST_CASE("bundle rejects duplicates, gaps and cycles") {
    std::vector<tool::ProtoFile> duplicate;
    duplicate.push_back(tool::load_proto_file("visual/A.x3d", "visual", proto_text("A", {})));
    duplicate.push_back(tool::load_proto_file("layout/A.x3d", "layout", proto_text("A", {})));
    CHECK_THROWS_WITH_AS(tool::bundle(duplicate),
                         doctest::Contains("visual/A.x3d"), std::exception);
    try {
        tool::bundle(duplicate);
    } catch (const std::exception& error) {
        CHECK(std::string(error.what()).find("layout/A.x3d") != std::string::npos);
    }

    std::vector<tool::ProtoFile> gap{
        tool::load_proto_file("visual/B.x3d", "visual", proto_text("B", {"Missing"}))};
    CHECK_THROWS_WITH_AS(tool::bundle(gap), doctest::Contains("Missing"), std::exception);

    std::vector<tool::ProtoFile> cycle;
    cycle.push_back(tool::load_proto_file("visual/A.x3d", "visual", proto_text("A", {"B"})));
    cycle.push_back(tool::load_proto_file("visual/B.x3d", "visual", proto_text("B", {"A"})));
    CHECK_THROWS_WITH_AS(tool::bundle(cycle), doctest::Contains("cycle"), std::exception);
}

TEST_CASE("the generated library bundles in a dependency-respecting order") {
    std::vector<tool::ProtoFile> files;
    for (const auto& entry : corpus::generate_corpus()) {
        if (entry.category == "images") continue;
        files.push_back(tool::load_proto_file(entry.relative_path, entry.category, entry.content));
    }
    REQUIRE(files.size() == 27);
    tool::BundleResult result = tool::bundle(files);
    REQUIRE(result.report.order.size() == 27);

    // independent check: every reference resolves to an earlier declaration
    std::map<std::string, const tool::ProtoFile*> by_name;
    for (const auto& file : files) by_name[file.declared] = &file;
    std::set<std::string> seen;
    for (const std::string& name : result.report.order) {
        for (const std::string& ref : by_name.at(name)->references)
            CHECK(seen.count(ref) == 1);
        seen.insert(name);
    }
    CHECK(result.report.reduction_percent >= 30.0);
}

TEST_CASE("doc comments attach to the declared prototype") {
    std::string extra = "<!-- @doc proto Button: A momentary push control. -->\n    "
                        "<!-- @doc field width: Extent along x. -->\n    "
                        "<!-- @doc method press: Fires the click pipeline. -->\n    ";
    std::vector<tool::ProtoFile> files{
        tool::load_proto_file("visual/Button.x3d", "visual", proto_text("Button", {}, extra))};
    tool::DocModel model = tool::extract_docs(files);
    REQUIRE(model.protos.size() == 1);
    CHECK(model.protos[0].summary == "A momentary push control.");
    REQUIRE(model.protos[0].fields.size() == 1);
    CHECK(model.protos[0].fields[0].name == "width");
    CHECK(model.protos[0].fields[0].text == "Extent along x.");
    REQUIRE(model.protos[0].methods.size() == 1);
    CHECK(model.protos[0].methods[0].name == "press");
    CHECK(model.entry_count() == 3);
    CHECK(model.warnings.empty());
}

TEST_CASE("doc names not matching a declared field raise warnings, not entries") {
    std::string extra = "<!-- @doc field bogus: Not a real field. -->\n    ";
    std::vector<tool::ProtoFile> files{
        tool::load_proto_file("visual/Button.x3d", "visual", proto_text("Button", {}, extra))};
    tool::DocModel model = tool::extract_docs(files);
    CHECK(model.entry_count() == 0);
    REQUIRE(model.warnings.size() == 1);
    CHECK(model.warnings[0].find("bogus") != std::string::npos);
}

TEST_CASE("malformed doc comments are ignored") {
    std::string extra = "<!-- @doc banana width: nope -->\n    <!-- plain note -->\n    ";
    std::vector<tool::ProtoFile> files{
        tool::load_proto_file("visual/Button.x3d", "visual", proto_text("Button", {}, extra))};
    CHECK(tool::extract_docs(files).entry_count() == 0);
}

TEST_CASE("rendering produces an index plus one page per prototype") {
    std::vector<tool::ProtoFile> files;
    files.push_back(tool::load_proto_file(
        "visual/Button.x3d", "visual",
        proto_text("Button", {}, "<!-- @doc proto Button: Push control. -->\n    ")));
    files.push_back(tool::load_proto_file(
        "visual/Label.x3d", "visual",
        proto_text("Label", {}, "<!-- @doc field width: Extent. -->\n    ")));
    tool::DocModel model = tool::extract_docs(files);
    auto pages = tool::render_docs(model);
    REQUIRE(pages.size() == 3);
    CHECK(pages.count("index.md") == 1);
    CHECK(pages.count("Button.md") == 1);
    CHECK(pages.count("Label.md") == 1);
    CHECK(pages["Button.md"].find("> Push control.") != std::string::npos);
    CHECK(pages["Label.md"].find("`width` : Extent.") != std::string::npos);

    CHECK(tool::render_docs(tool::DocModel{}).size() == 1);
}

TEST_CASE("rendered entries match the extracted count across the library") {
    std::vector<tool::ProtoFile> files;
    for (const auto& entry : corpus::generate_corpus()) {
        if (entry.category == "images") continue;
        files.push_back(tool::load_proto_file(entry.relative_path, entry.category, entry.content));
    }
    tool::DocModel model = tool::extract_docs(files);
    CHECK(model.warnings.empty());
    CHECK(model.entry_count() > 27);  // at least a summary each plus fields
    auto pages = tool::render_docs(model);
    CHECK(pages.size() == model.protos.size() + 1);
    std::size_t rendered = 0;
    for (const auto& [name, body] : pages) {
        if (name == "index.md") continue;
        std::size_t at = 0;
        while ((at = body.find("\n> ", at)) != std::string::npos) ++rendered, at += 3;
        at = 0;
        while ((at = body.find("\n- `", at)) != std::string::npos) ++rendered, at += 4;
    }
    CHECK(rendered == model.entry_count());
}
