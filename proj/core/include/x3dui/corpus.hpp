#pragma once

#include <string>
#include <vector>

#include "x3dui/widget.hpp"

namespace x3dui::corpus {

// Synthetic prototype library mirroring the four-directory layout used for
// bundling and documentation runs: one file per catalog prototype, written
// with hand-style indentation, doc comments, and extern references.
struct CorpusFile {
    std::string relative_path;  // e.g. "visual/TextButton.x3d"
    std::string category;       // system | visual | group | layout | images
    std::string content;
};

std::vector<CorpusFile> generate_corpus();

// Materializes the corpus under `directory`, creating the category
// subdirectories and an images directory.
void write_corpus(const std::string& directory);

}  // namespace x3dui::corpus
