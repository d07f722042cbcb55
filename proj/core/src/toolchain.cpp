#include "x3dui/toolchain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace x3dui::tool {

std::string minify(const std::string& text) {
    xml::Document doc = xml::parse(text);
    return xml::serialize(doc, xml::Layout::Minified);
}

double size_reduction_percent(std::size_t before, std::size_t after) {
    if (before == 0) throw std::invalid_argument("size report needs a nonzero input size");
    double percent = (1.0 - static_cast<double>(after) / static_cast<double>(before)) * 100.0;
    return std::round(percent * 10.0) / 10.0;
}

std::string format_reduction(std::size_t before, std::size_t after) {
    double percent = size_reduction_percent(before, after);
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(1);
    out << percent;
    return out.str();
}

namespace {

void walk_elements(const xml::Node& node, const std::function<void(const xml::Node&)>& visit) {
    visit(node);
    for (const auto& child : node.children) walk_elements(child, visit);
}

}  // namespace

ProtoFile load_proto_file(const std::string& path, const std::string& category,
                          const std::string& text) {
    ProtoFile file;
    file.path = path;
    file.category = category;
    file.source_bytes = text.size();
    file.document = xml::parse(text);

    std::vector<std::string> declared;
    walk_elements(file.document.root, [&](const xml::Node& node) {
        if (node.type != xml::Node::Type::Element) return;
        if (node.name == "ProtoDeclare") {
            if (const std::string* name = node.attribute("name")) declared.push_back(*name);
        } else if (node.name == "ExternProtoDeclare") {
            if (const std::string* name = node.attribute("name"))
                file.references.push_back(*name);
        }
    });
    if (declared.size() != 1)
        throw std::runtime_error(path + ": expected exactly one ProtoDeclare, found " +
                                 std::to_string(declared.size()));
    file.declared = declared.front();
    return file;
}

BundleResult bundle(const std::vector<ProtoFile>& files) {
    std::map<std::string, const ProtoFile*> by_name;
    for (const ProtoFile& file : files) {
        auto [it, inserted] = by_name.emplace(file.declared, &file);
        if (!inserted)
            throw std::runtime_error("duplicate prototype '" + file.declared + "' declared in " +
                                     it->second->path + " and " + file.path);
    }
    for (const ProtoFile& file : files) {
        for (const std::string& ref : file.references) {
            if (!by_name.count(ref))
                throw std::runtime_error(file.path + ": unresolved prototype reference '" + ref +
                                         "'");
        }
    }

    // Kahn's algorithm; ties broken by prototype name for determinism
    std::map<std::string, int> pending;  // unresolved dependency count
    std::map<std::string, std::vector<std::string>> dependents;
    for (const ProtoFile& file : files) {
        std::set<std::string> deps(file.references.begin(), file.references.end());
        deps.erase(file.declared);
        pending[file.declared] = static_cast<int>(deps.size());
        for (const std::string& dep : deps) dependents[dep].push_back(file.declared);
    }
    std::set<std::string> ready;
    for (const auto& [name, count] : pending) {
        if (count == 0) ready.insert(name);
    }
    std::vector<std::string> order;
    while (!ready.empty()) {
        std::string name = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(name);
        for (const std::string& dependent : dependents[name]) {
            if (--pending[dependent] == 0) ready.insert(dependent);
        }
    }
    if (order.size() != files.size())
        throw std::runtime_error("prototype reference cycle detected");

    std::set<std::string> names;
    for (const auto& [name, file] : by_name) names.insert(name);

    xml::Document out;
    out.xml_decl = "version=\"1.0\" encoding=\"UTF-8\"";
    out.root = xml::Node::element("X3D");
    out.root.set_attribute("profile", "Immersive");
    out.root.set_attribute("version", "3.2");
    xml::Node scene = xml::Node::element("Scene");

    std::function<void(const xml::Node&, xml::Node&)> copy_content =
        [&](const xml::Node& from, xml::Node& to) {
            for (const xml::Node& child : from.children) {
                if (child.type == xml::Node::Type::Text && child.whitespace_only) continue;
                if (child.type == xml::Node::Type::Element &&
                    child.name == "ExternProtoDeclare") {
                    const std::string* name = child.attribute("name");
                    if (name && names.count(*name)) continue;  // resolved in-bundle
                }
                to.add_child(child);
            }
        };

    std::size_t input_bytes = 0;
    for (const std::string& name : order) {
        const ProtoFile& file = *by_name.at(name);
        input_bytes += file.source_bytes;
        const xml::Node* source_scene = file.document.root.first_child("Scene");
        copy_content(source_scene ? *source_scene : file.document.root, scene);
    }
    out.root.add_child(std::move(scene));

    BundleResult result;
    result.document = std::move(out);
    result.report.order = order;
    result.report.input_bytes = input_bytes;
    result.report.output_bytes = xml::serialize(result.document, xml::Layout::Minified).size();
    result.report.reduction_percent =
        input_bytes > 0 ? size_reduction_percent(input_bytes, result.report.output_bytes) : 0.0;
    return result;
}

std::size_t DocModel::entry_count() const {
    std::size_t count = 0;
    for (const ProtoDoc& proto : protos) {
        if (!proto.summary.empty()) ++count;
        count += proto.fields.size() + proto.methods.size();
    }
    return count;
}

namespace {

void collect_declared_names(const xml::Node& node, std::set<std::string>& names) {
    if (node.type == xml::Node::Type::Element && node.name == "field") {
        if (const std::string* name = node.attribute("name")) names.insert(*name);
    }
    for (const auto& child : node.children) collect_declared_names(child, names);
}

void collect_comments(const xml::Node& node, std::vector<std::string>& comments) {
    if (node.type == xml::Node::Type::Comment) comments.push_back(node.text);
    for (const auto& child : node.children) collect_comments(child, comments);
}

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

DocModel extract_docs(const std::vector<ProtoFile>& files) {
    DocModel model;
    static const std::regex grammar(R"(@doc\s+(proto|field|method)\s+(\S+)\s*:\s*(.+))");
    for (const ProtoFile& file : files) {
        ProtoDoc doc;
        doc.name = file.declared;
        std::set<std::string> declared;
        collect_declared_names(file.document.root, declared);
        std::vector<std::string> comments;
        collect_comments(file.document.root, comments);
        for (const std::string& comment : comments) {
            std::smatch match;
            std::string body = trim(comment);
            if (!std::regex_search(body, match, grammar)) continue;  // plain comment
            std::string kind = match[1];
            std::string name = match[2];
            std::string text = trim(match[3]);
            if (kind == "proto") {
                if (name != file.declared) {
                    model.warnings.push_back(file.path + ": @doc proto names '" + name +
                                             "' but the file declares '" + file.declared + "'");
                    continue;
                }
                doc.summary = text;
            } else if (!declared.count(name)) {
                model.warnings.push_back(file.path + ": @doc " + kind + " '" + name +
                                         "' does not match a declared field");
            } else if (kind == "field") {
                doc.fields.push_back({name, text});
            } else {
                doc.methods.push_back({name, text});
            }
        }
        model.protos.push_back(std::move(doc));
    }
    std::sort(model.protos.begin(), model.protos.end(),
              [](const ProtoDoc& a, const ProtoDoc& b) { return a.name < b.name; });
    return model;
}

std::map<std::string, std::string> render_docs(const DocModel& model) {
    std::map<std::string, std::string> pages;
    std::ostringstream index;
    index << "# Prototype reference\n\n";
    for (const ProtoDoc& proto : model.protos) {
        index << "- [" << proto.name << "](" << proto.name << ".md)";
        if (!proto.summary.empty()) index << " : " << proto.summary;
        index << "\n";

        std::ostringstream page;
        page << "# " << proto.name << "\n";
        if (!proto.summary.empty()) page << "\n> " << proto.summary << "\n";
        if (!proto.fields.empty()) {
            page << "\n## Fields\n\n";
            for (const DocEntry& entry : proto.fields)
                page << "- `" << entry.name << "` : " << entry.text << "\n";
        }
        if (!proto.methods.empty()) {
            page << "\n## Methods\n\n";
            for (const DocEntry& entry : proto.methods)
                page << "- `" << entry.name << "()` : " << entry.text << "\n";
        }
        pages[proto.name + ".md"] = page.str();
    }
    pages["index.md"] = index.str();
    return pages;
}

}  // namespace x3dui::tool
