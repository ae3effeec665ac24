#pragma once

#include <filesystem>
#include <vector>

#include "synthetic_face.hpp"

namespace sketchmatch::testing {

/// A rendered photo/sketch corpus on disk plus its evaluation manifest.
struct Corpus {
    std::filesystem::path root;
    std::filesystem::path photos_dir;
    std::filesystem::path sketches_dir;
    std::filesystem::path manifest;
    std::vector<std::string> identities;
    std::vector<SyntheticFace> faces;
};

/// Renders n random identities under root: photos/<id>.pgm,
/// sketches/<id>.pgm and manifest.txt with truth boxes for all six
/// components.
Corpus write_corpus(const std::filesystem::path& root, int n, unsigned seed);

/// Fresh scratch directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace sketchmatch::testing
