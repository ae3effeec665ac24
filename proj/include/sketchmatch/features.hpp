#pragma once

#include <optional>
#include <vector>

#include "sketchmatch/extractors.hpp"

namespace sketchmatch {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using FeatureVector = Vec8;

/// Width of the span of foreground columns, 1-based inclusive.
/// Throws MeasureError when b has no foreground at all.
int horizontal_extent(const BinaryImage& b, bool foreground = true);

/// Height of the span of foreground rows.
int vertical_extent(const BinaryImage& b, bool foreground = true);

/// Eye length (columns) and width (rows) of the dark pixels in the box.
std::pair<int, int> measure_eye(const GrayImage& eye_sub, const ExtractionOptions& opts);

/// Eyebrow length: horizontal extent of the edge pixels after median
/// smoothing and, for photos, the +64 brightness lift.
int measure_brow(const GrayImage& brow_sub, Modality modality, const ExtractionOptions& opts);

struct LipMeasure {
    int length = 0;  // columns spanned by lip edges
    int width = 0;   // rows spanned by lip edges
    long area = 0;   // dark pixels inside the edge bounding box
};
LipMeasure measure_lip(const GrayImage& lip_sub, const ExtractionOptions& opts);

/// Raw geometric measurements of one portrait.
struct Measurements {
    long face_area = 0;
    int eye_len_r = 0, eye_len_l = 0;
    int eye_wid_r = 0, eye_wid_l = 0;
    int brow_len_r = 0, brow_len_l = 0;
    int nose_len = 0;           // rows of the refined nose box
    int lip_len = 0, lip_wid = 0;
    long lip_area = 0;
    int lip_nostril_dist = 0;   // upper lip row minus nostril row
};

Measurements measure_all(const ComponentSet& set, const ExtractionOptions& opts);

/// Ratio features:
///   f1 face_area/(W*L)        f2 eye_len_r/eye_len_l
///   f3 eye_wid_r/eye_wid_l    f4 brow_len_r/brow_len_l
///   f5 nose_len/L             f6 lip_len/lip_wid
///   f7 lip_area/(n1*m1)       f8 lip_nostril_dist/L
/// All components are finite; a zero denominator raises MeasureError.
FeatureVector assemble_vector(const Measurements& meas, const GeometricModel& gm);

enum class CenteringMode { per_vector, grand_mean };

/// A feature vector after mean subtraction, tagged with how it was
/// centered so incompatible vectors are never compared.
struct CenteredVector {
    Vec8 components = Vec8::Zero();
    CenteringMode mode = CenteringMode::per_vector;
    double mean_used = 0;  // scalar mean removed in per_vector mode
};

/// Per-vector centering: subtracts the vector's own component mean,
/// keeping the difference mean-minus-component.
CenteredVector center(const FeatureVector& v);

/// Componentwise mean of a set of vectors; empty input is an error.
Vec8 grand_mean(const std::vector<FeatureVector>& vs);

/// Centers a whole gallery under the chosen mode. In grand_mean mode the
/// shared mean is subtracted from each vector (again mean-minus-vector).
std::vector<CenteredVector> center_gallery(const std::vector<FeatureVector>& vs,
                                           CenteringMode mode);

/// Centers a probe compatibly with a gallery. grand_mean mode requires
/// the gallery's stored mean.
CenteredVector center_probe(const FeatureVector& v, CenteringMode mode,
                            const std::optional<Vec8>& gallery_mean);

}  // namespace sketchmatch
