// Command-line front door: validate, compile, simulate, bundle, minify, docs,
// plus a generator for the sample prototype library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "x3dui/corpus.hpp"
#include "x3dui/emitter.hpp"
#include "x3dui/runtime.hpp"
#include "x3dui/toolchain.hpp"
#include "x3dui/widget.hpp"
#include "x3dui/xml.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;  // parse/validation errors
constexpr int kExitIo = 3;     // environment and file-system errors

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

bool g_verbose = false;

void note(const std::string& message) {
    if (g_verbose) std::cerr << "x3dui: " << message << "\n";
}

x3dui::WidgetTree load_spec(const std::string& path, const std::string& theme_path) {
    x3dui::WidgetTree tree = x3dui::parse_ui_spec(read_file(path));
    if (!theme_path.empty()) x3dui::apply_theme(tree.settings, read_file(theme_path));
    x3dui::ValidationReport report = x3dui::validate_tree(tree);
    if (!report.ok()) {
        for (const auto& violation : report.violations) {
            std::cerr << path << ":" << violation.line << ":" << violation.column << ": "
                      << violation.message << "\n";
        }
        throw std::invalid_argument("validation failed with " +
                                    std::to_string(report.violations.size()) + " violation(s)");
    }
    return x3dui::assign_ids(std::move(tree));
}

std::vector<x3dui::tool::ProtoFile> load_library(const std::string& directory) {
    std::vector<x3dui::tool::ProtoFile> files;
    for (const char* category : {"system", "visual", "group", "layout"}) {
        fs::path dir = fs::path(directory) / category;
        if (!fs::is_directory(dir)) continue;
        std::vector<fs::path> paths;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".x3d") paths.push_back(entry.path());
        }
        std::sort(paths.begin(), paths.end());
        for (const fs::path& path : paths) {
            files.push_back(
                x3dui::tool::load_proto_file(path.string(), category, read_file(path.string())));
        }
    }
    if (files.empty()) throw IoError("no prototype files under " + directory);
    return files;
}

int cmd_validate(const std::string& spec_path) {
    load_spec(spec_path, "");
    std::cout << "ok\n";
    return kExitOk;
}

int cmd_compile(const std::string& spec_path, const std::string& out_path,
                const std::string& hud, double z_epsilon, const std::string& theme_path,
                bool strict, bool minified) {
    x3dui::WidgetTree tree = load_spec(spec_path, theme_path);
    x3dui::emit::EmitConfig config;
    config.hud = hud == "layer3d" ? x3dui::emit::HudStrategy::Layer3d
                                  : x3dui::emit::HudStrategy::ProximityRoute;
    config.z_epsilon = z_epsilon;
    config.strict_standard = strict;
    x3dui::emit::EmitResult result = x3dui::emit::emit_scene(tree, config);
    for (const std::string& warning : result.warnings) std::cerr << "warning: " << warning << "\n";
    write_file(out_path, x3dui::emit::serialize_xml(result.document, !minified));
    note("wrote " + out_path);
    return kExitOk;
}

int cmd_simulate(const std::string& spec_path, const std::string& events_path,
                 const std::string& out_path) {
    x3dui::WidgetTree tree = load_spec(spec_path, "");
    std::vector<x3dui::UiEvent> events = x3dui::parse_event_script(read_file(events_path));
    x3dui::Desktop desktop(std::move(tree));
    std::ostringstream trace;
    for (std::size_t i = 0; i < events.size(); ++i) {
        x3dui::Outputs outputs = desktop.dispatch(events[i]);
        nlohmann::json line;
        line["seq"] = i;
        line["event"] = nlohmann::json::parse(x3dui::event_to_json(events[i]));
        line["outputs"] = nlohmann::json::array();
        for (const auto& output : outputs)
            line["outputs"].push_back(nlohmann::json::parse(x3dui::output_to_json(output)));
        trace << line.dump() << "\n";
    }
    std::ostringstream digest;
    digest << std::hex << desktop.state_digest();
    nlohmann::json footer;
    footer["digest"] = digest.str();
    trace << footer.dump() << "\n";
    write_file(out_path, trace.str());
    note("wrote " + out_path);
    return kExitOk;
}

int cmd_bundle(const std::string& directory, const std::string& out_path, bool print_report) {
    auto files = load_library(directory);
    x3dui::tool::BundleResult result = x3dui::tool::bundle(files);
    write_file(out_path, x3dui::xml::serialize(result.document, x3dui::xml::Layout::Minified));
    if (print_report) {
        std::cout << "input: " << result.report.input_bytes << " bytes\n"
                  << "output: " << result.report.output_bytes << " bytes\n"
                  << "reduction: "
                  << x3dui::tool::format_reduction(result.report.input_bytes,
                                                   result.report.output_bytes)
                  << "%\n";
    }
    return kExitOk;
}

int cmd_minify(const std::string& in_path, const std::string& out_path) {
    std::string input = read_file(in_path);
    std::string output = x3dui::tool::minify(input);
    write_file(out_path, output);
    std::cout << "input: " << input.size() << " bytes\n"
              << "output: " << output.size() << " bytes\n"
              << "reduction: " << x3dui::tool::format_reduction(input.size(), output.size())
              << "%\n";
    return kExitOk;
}

int cmd_docs(const std::string& directory, const std::string& out_dir) {
    auto files = load_library(directory);
    x3dui::tool::DocModel model = x3dui::tool::extract_docs(files);
    for (const std::string& warning : model.warnings) std::cerr << "warning: " << warning << "\n";
    for (const auto& [name, body] : x3dui::tool::render_docs(model)) {
        write_file((fs::path(out_dir) / name).string(), body);
    }
    note("wrote documentation to " + out_dir);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compiler and tooling for the 2.5D widget library"};
    app.require_subcommand(1);
    app.add_flag("-v,--verbose", g_verbose, "diagnostic notes on stderr");

    std::string spec_path, out_path, events_path, theme_path, directory, in_path;
    std::string hud = "proximity";
    double z_epsilon = 0.001;
    bool strict = false, minified = false, print_report = false;

    auto* validate = app.add_subcommand("validate", "check a UI description");
    validate->add_option("spec", spec_path, "UI description file")->required();

    auto* compile = app.add_subcommand("compile", "compile a UI description to X3D");
    compile->add_option("spec", spec_path)->required();
    compile->add_option("-o,--output", out_path)->required();
    compile->add_option("--hud", hud)->check(CLI::IsMember({"proximity", "layer3d"}));
    compile->add_option("--z-epsilon", z_epsilon)->check(CLI::PositiveNumber);
    compile->add_option("--theme", theme_path);
    compile->add_flag("--strict-standard", strict, "suppress proprietary nodes");
    compile->add_flag("--minified", minified, "emit without indentation");

    auto* simulate = app.add_subcommand("simulate", "replay an event script headlessly");
    simulate->add_option("spec", spec_path)->required();
    simulate->add_option("--events", events_path)->required();
    simulate->add_option("-o,--output", out_path)->required();

    auto* bundle = app.add_subcommand("bundle", "merge a prototype library into one file");
    bundle->add_option("dir", directory)->required();
    bundle->add_option("-o,--output", out_path)->required();
    bundle->add_flag("--report", print_report, "print the size report");

    auto* minify = app.add_subcommand("minify", "strip redundant whitespace");
    minify->add_option("input", in_path)->required();
    minify->add_option("-o,--output", out_path)->required();

    auto* docs = app.add_subcommand("docs", "extract prototype documentation");
    docs->add_option("dir", directory)->required();
    docs->add_option("-o,--output", out_path)->required();

    auto* corpus = app.add_subcommand("corpus", "generate the sample prototype library");
    corpus->add_option("dir", directory)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(spec_path);
        if (compile->parsed())
            return cmd_compile(spec_path, out_path, hud, z_epsilon, theme_path, strict, minified);
        if (simulate->parsed()) return cmd_simulate(spec_path, events_path, out_path);
        if (bundle->parsed()) return cmd_bundle(directory, out_path, print_report);
        if (minify->parsed()) return cmd_minify(in_path, out_path);
        if (docs->parsed()) return cmd_docs(directory, out_path);
        if (corpus->parsed()) {
            x3dui::corpus::write_corpus(directory);
            return kExitOk;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
