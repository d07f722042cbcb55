#pragma once

#include <map>
#include <string>
#include <vector>

#include "x3dui/xml.hpp"

namespace x3dui::tool {

// minify drops indentation and inter-element whitespace; attribute values are
// never touched. Idempotent, and the canonical parse of the result equals the
// canonical parse of the input.
std::string minify(const std::string& text);

// (1 - after/before) * 100, one decimal, e.g. "34.9". before must be > 0.
double size_reduction_percent(std::size_t before, std::size_t after);
std::string format_reduction(std::size_t before, std::size_t after);

// One prototype library file: the category directory it came from, the
// prototype it declares and the prototypes it references.
struct ProtoFile {
    std::string path;
    std::string category;  // system | visual | group | layout
    std::size_t source_bytes = 0;
    xml::Document document;
    std::string declared;
    std::vector<std::string> references;
};

ProtoFile load_proto_file(const std::string& path, const std::string& category,
                          const std::string& text);

struct BundleReport {
    std::size_t input_bytes = 0;
    std::size_t output_bytes = 0;
    double reduction_percent = 0;
    std::vector<std::string> order;  // declaration order in the bundle
};

struct BundleResult {
    xml::Document document;
    BundleReport report;
};

// Merges the files into one document with declarations topologically ordered
// (declaration before use) and every intra-bundle ExternProtoDeclare removed.
// Throws on duplicate names, unresolved references, and reference cycles.
BundleResult bundle(const std::vector<ProtoFile>& files);

// Documentation extracted from `@doc kind name: text` comments.
struct DocEntry {
    std::string name;
    std::string text;
};

struct ProtoDoc {
    std::string name;
    std::string summary;
    std::vector<DocEntry> fields;
    std::vector<DocEntry> methods;
};

struct DocModel {
    std::vector<ProtoDoc> protos;  // prototype name order
    std::vector<std::string> warnings;

    std::size_t entry_count() const;
};

DocModel extract_docs(const std::vector<ProtoFile>& files);

// filename -> markdown body; always contains "index.md" plus one page per
// documented prototype.
std::map<std::string, std::string> render_docs(const DocModel& model);

}  // namespace x3dui::tool
