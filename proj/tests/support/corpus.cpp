#include "corpus.hpp"

#include <unistd.h>

#include <cstdio>
#include <fstream>

#include "sketchmatch/raster.hpp"

namespace sketchmatch::testing {

Corpus write_corpus(const std::filesystem::path& root, int n, unsigned seed) {
    Corpus corpus;
    corpus.root = root;
    corpus.photos_dir = root / "photos";
    corpus.sketches_dir = root / "sketches";
    corpus.manifest = root / "manifest.txt";
    std::filesystem::create_directories(corpus.photos_dir);
    std::filesystem::create_directories(corpus.sketches_dir);

    std::mt19937 rng(seed);
    std::ofstream manifest(corpus.manifest);
    for (int i = 0; i < n; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "p%02d", i);
        const SyntheticFace face = random_face(rng);
        const auto photo = corpus.photos_dir / (std::string(id) + ".pgm");
        const auto sketch = corpus.sketches_dir / (std::string(id) + ".pgm");
        save_pgm(photo, render_face(face, Modality::photo));
        save_pgm(sketch, render_face(face, Modality::sketch));

        manifest << id << "\t" << photo.string() << "\t" << sketch.string();
        for (const auto& [comp, r] : face.truth)
            manifest << "\t" << comp << "=" << r.x1 << "," << r.y1 << "," << r.x2 << ","
                     << r.y2;
        manifest << "\n";

        corpus.identities.push_back(id);
        corpus.faces.push_back(face);
    }
    return corpus;
}

std::filesystem::path scratch_dir(const std::string& tag) {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("sketchmatch_" + tag + "_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace sketchmatch::testing
