#pragma once

#include <filesystem>
#include <istream>

#include "sketchmatch/eval.hpp"

namespace sketchmatch {

/// Runtime settings, file-overridable. The file holds "key = value"
/// lines; '#' starts a comment; unknown keys are rejected.
struct Config {
    GeometricModel geom;
    CannyParams canny;
    BinarizeMode binarize;       // binarize.mode = otsu | fixed:<T>
    int median_window = 3;       // median.window
    bool raw_row_sums = false;   // geom.raw_row_sums
    CenteringMode centering = CenteringMode::per_vector;  // centering.mode
    double iou_tau = 0.3;        // eval.iou_tau
    Modality default_modality = Modality::photo;  // modality.default
    bool voting = false;         // matcher.voting

    ExtractionOptions extraction() const {
        return {binarize, canny, median_window, raw_row_sums};
    }
};

Config parse_config(std::istream& in, const std::string& name = "config");
Config load_config(const std::filesystem::path& path);

Modality parse_modality(const std::string& s);

}  // namespace sketchmatch
