#pragma once

#include "sketchmatch/raster.hpp"

namespace sketchmatch {

/// Input kind. Photos get a brightness lift before eyebrow edge
/// detection so dark brows separate from hair shadow; sketches are
/// already line art and skip it.
enum class Modality { photo, sketch };

/// True when the modality wants the +64 lift before eyebrow edges.
constexpr bool lift_before_brow_edges(Modality m) { return m == Modality::photo; }

/// Canny parameters. The thresholds are fractions of the image's maximum
/// gradient magnitude, so they adapt to contrast.
struct CannyParams {
    double sigma = 1.4;
    double low_ratio = 0.1;
    double high_ratio = 0.3;
    void validate() const;
};

/// Square median filter; window must be odd and >= 1. Borders are
/// handled by clamping coordinates to the image.
GrayImage median_filter(const GrayImage& img, int window = 3);

/// Canny edge map: Gaussian blur, Sobel gradients, non-maximum
/// suppression, double threshold with hysteresis (8-connected linking).
/// A constant image has no edges. Images smaller than 3x3 are rejected.
BinaryImage canny(const GrayImage& img, const CannyParams& params = {});

}  // namespace sketchmatch
