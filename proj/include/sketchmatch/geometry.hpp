#pragma once

#include "sketchmatch/morphology.hpp"
#include "sketchmatch/raster.hpp"

namespace sketchmatch {

/// Proportion model for a frontal 150x200 portrait. Component boxes are
/// placed relative to two anchor rows (eye-ball row, mid-lip row) using
/// these offsets; defaults match the reference layout and can be
/// overridden through configuration for other image geometries.
struct GeometricModel {
    int W = 150;  // image width (columns)
    int L = 200;  // image height (rows)

    int n = 17, m = 33;    // eye box: rows x cols
    int n1 = 25, m1 = 52;  // lip box: rows x cols

    int a = 30;  // left margin before the right eye box
    int b = 12;  // gap between face midline and the left eye box
    int c = 8;   // rows from the eye-ball row to the eye box top
    int d = 50;  // left margin before the lip box
    int e = 7;   // rows from the mid-lip row to the lip box top
    int f = 17;  // kept for completeness; unused by the predictions
    int g = 7;   // gap between face midline and an eyebrow box
    int x = 10;  // kept for completeness; unused by the predictions
    int y = 22;  // left margin before the right eyebrow box

    int brow_rows = 12, brow_cols = 46;  // eyebrow box: rows x cols
    int nose_rows = 55;                  // nose box rows

    static constexpr int initial_column = 1;

    int mid_col() const { return W / 2; }
    void validate() const;  // all dimensions/offsets must be positive
};

/// Row of the eye balls: the row whose face pixels are darkest on
/// average, searched over the upper half of the mask's bounding box.
/// With raw_sums, plain intensity sums replace the per-row averages.
/// Ties resolve to the smaller row. 1-based.
int eye_ball_row(const FaceRegion& face, bool raw_sums = false);

/// Row of the line between the lips: darkest row in the band
/// [ebr + round(0.35 L), ebr + round(0.60 L)], same scoring as
/// eye_ball_row. 1-based.
int mid_lip_row(const FaceRegion& face, const GeometricModel& gm, int ebr,
                bool raw_sums = false);

/// Component boxes anchored on the eye-ball row (ebr) or mid-lip row
/// (mlr). Results are clamped to the image bounds; a box that clamps to
/// nothing raises GeometryError.
Rect predict_right_eye(int ebr, const GeometricModel& gm);
Rect predict_left_eye(int ebr, const GeometricModel& gm);
Rect predict_right_eyebrow(int ebr, const GeometricModel& gm);
Rect predict_left_eyebrow(int ebr, const GeometricModel& gm);
Rect predict_lips(int mlr, const GeometricModel& gm);

/// Nose box: spans from the right eye box's top-left down nose_rows
/// rows, and from the right eye box's right edge to 10 columns short of
/// the lip box's right edge.
Rect predict_nose(const Rect& right_eye, const Rect& lips, const GeometricModel& gm);

}  // namespace sketchmatch
