#include "sketchmatch/extractors.hpp"

#include <limits>
#include <string>
#include <utility>

namespace sketchmatch {

int find_nostril_row(const GrayImage& nose_sub) {
    const int rows = static_cast<int>(nose_sub.rows());
    if (rows < 4) throw ParameterError("find_nostril_row: box shorter than 4 rows");
    const int first = rows / 2 + 1;  // search only the lower half
    int best_row = first;
    double best_sum = std::numeric_limits<double>::infinity();
    for (int row = first; row <= rows; ++row) {
        const double sum = nose_sub.row(row - 1).cast<double>().sum();
        if (sum <= best_sum) {  // ties toward the larger row
            best_sum = sum;
            best_row = row;
        }
    }
    return best_row;
}

Component refine_nose(const GrayImage& img, const Component& nose_predicted, int nostril_row) {
    Rect r = nose_predicted.rect;
    r.x2 = std::min(r.x2, r.x1 - 1 + nostril_row + 2);
    Component actual;
    actual.rect = clamp_rect(r, img.rows(), img.cols());
    actual.image = crop(img, actual.rect);
    return actual;
}

BinaryImage lip_edge_image(const GrayImage& lip_sub, const ExtractionOptions& opts) {
    return canny(saturating_add(median_filter(lip_sub, opts.median_window), 64), opts.canny);
}

int find_upper_lip_row(const BinaryImage& lip_edges) {
    for (Eigen::Index r = 0; r < lip_edges.rows(); ++r)
        if (lip_edges.row(r).any()) return static_cast<int>(r) + 1;
    throw MeasureError("no lip edge pixels");
}

namespace {

template <typename Fn>
auto stage(const char* component, Fn&& fn) {
    try {
        return fn();
    } catch (const ExtractionError&) {
        throw;
    } catch (const Error& e) {
        throw ExtractionError(component, e.what());
    }
}

}  // namespace

ComponentSet extract_all(const GrayImage& img, const GeometricModel& gm, Modality modality,
                         const ExtractionOptions& opts) {
    gm.validate();
    ComponentSet set;
    set.modality = modality;

    set.face = stage("face", [&] { return extract_face_region(img, opts.binarize); });
    set.eye_ball_row =
        stage("face", [&] { return eye_ball_row(set.face, opts.raw_row_sums); });

    set.right_eye.rect = stage("right_eye", [&] { return predict_right_eye(set.eye_ball_row, gm); });
    set.left_eye.rect = stage("left_eye", [&] { return predict_left_eye(set.eye_ball_row, gm); });
    set.right_brow.rect =
        stage("right_brow", [&] { return predict_right_eyebrow(set.eye_ball_row, gm); });
    set.left_brow.rect =
        stage("left_brow", [&] { return predict_left_eyebrow(set.eye_ball_row, gm); });

    set.mid_lip_row = stage("lips", [&] {
        return mid_lip_row(set.face, gm, set.eye_ball_row, opts.raw_row_sums);
    });
    set.lips.rect = stage("lips", [&] { return predict_lips(set.mid_lip_row, gm); });
    set.nose.rect =
        stage("nose", [&] { return predict_nose(set.right_eye.rect, set.lips.rect, gm); });

    for (Component* comp : {&set.right_eye, &set.left_eye, &set.right_brow, &set.left_brow,
                            &set.lips, &set.nose})
        comp->image = crop(img, comp->rect);

    set.nostril_row = stage("nose", [&] { return find_nostril_row(set.nose.image); });
    set.nose_actual =
        stage("nose", [&] { return refine_nose(img, set.nose, set.nostril_row); });

    const BinaryImage lip_edges =
        stage("lips", [&] { return lip_edge_image(set.lips.image, opts); });
    set.u_lip_row = stage("lips", [&] { return find_upper_lip_row(lip_edges); });

    return set;
}

}  // namespace sketchmatch
