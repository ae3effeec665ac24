#pragma once

#include "sketchmatch/filters.hpp"
#include "sketchmatch/geometry.hpp"
#include "sketchmatch/morphology.hpp"

namespace sketchmatch {

/// Knobs shared by extraction and measurement.
struct ExtractionOptions {
    BinarizeMode binarize;   // threshold choice for masks
    CannyParams canny;       // edge detection parameters
    int median_window = 3;   // smoothing before edge detection
    bool raw_row_sums = false;  // row scoring mode for anchor searches
};

/// A located component: its box in image coordinates plus the pixels.
struct Component {
    Rect rect;
    GrayImage image;
};

/// Everything extract_all finds in one portrait.
struct ComponentSet {
    FaceRegion face;
    int eye_ball_row = 0;  // anchor rows, 1-based in the input image
    int mid_lip_row = 0;

    Component right_eye, left_eye;
    Component right_brow, left_brow;
    Component lips;
    Component nose;         // predicted box
    Component nose_actual;  // cut off just below the nostril line

    int nostril_row = 0;  // 1-based within the predicted nose box
    int u_lip_row = 0;    // 1-based within the lip box
    Modality modality = Modality::photo;

    int nostril_row_abs() const { return nose.rect.x1 - 1 + nostril_row; }
    int u_lip_row_abs() const { return lips.rect.x1 - 1 + u_lip_row; }
};

/// Darkest row of the lower half of the nose box (raw intensity sums);
/// the nostrils sit there. Ties resolve to the larger row, which is the
/// one nearer the mouth. Needs at least 4 rows. 1-based.
int find_nostril_row(const GrayImage& nose_sub);

/// Shrinks the predicted nose box so it ends two rows below the nostril
/// line.
Component refine_nose(const GrayImage& img, const Component& nose_predicted,
                      int nostril_row);

/// Median smoothing, +64 brightness lift, then Canny. Applied to the lip
/// box in both modalities.
BinaryImage lip_edge_image(const GrayImage& lip_sub, const ExtractionOptions& opts);

/// Topmost edge row of the lip edge map, 1-based within the box.
int find_upper_lip_row(const BinaryImage& lip_edges);

/// Runs the whole pipeline on a normalized portrait: face region, anchor
/// rows, the five component boxes, nose refinement and the upper lip
/// line. Failures surface as ExtractionError naming the component.
ComponentSet extract_all(const GrayImage& img, const GeometricModel& gm,
                         Modality modality, const ExtractionOptions& opts = {});

}  // namespace sketchmatch
