#include "sketchmatch/features.hpp"

#include <cmath>
#include <string>
#include <tuple>
#include <utility>

namespace sketchmatch {

namespace {

struct Span {
    int first = -1, last = -1;
};

Span col_span(const BinaryImage& b, bool fg) {
    Span s;
    for (Eigen::Index c = 0; c < b.cols(); ++c)
        if ((b.col(c) == fg).any()) {
            if (s.first < 0) s.first = static_cast<int>(c);
            s.last = static_cast<int>(c);
        }
    return s;
}

Span row_span(const BinaryImage& b, bool fg) {
    Span s;
    for (Eigen::Index r = 0; r < b.rows(); ++r)
        if ((b.row(r) == fg).any()) {
            if (s.first < 0) s.first = static_cast<int>(r);
            s.last = static_cast<int>(r);
        }
    return s;
}

}  // namespace

int horizontal_extent(const BinaryImage& b, bool foreground) {
    const Span s = col_span(b, foreground);
    if (s.first < 0) throw MeasureError("horizontal_extent: no foreground pixels");
    return s.last - s.first + 1;
}

int vertical_extent(const BinaryImage& b, bool foreground) {
    const Span s = row_span(b, foreground);
    if (s.first < 0) throw MeasureError("vertical_extent: no foreground pixels");
    return s.last - s.first + 1;
}

std::pair<int, int> measure_eye(const GrayImage& eye_sub, const ExtractionOptions& opts) {
    const BinaryImage dark = binarize(eye_sub, opts.binarize);
    try {
        return {horizontal_extent(dark), vertical_extent(dark)};
    } catch (const MeasureError&) {
        throw MeasureError("eye: no dark pixels in box");
    }
}

int measure_brow(const GrayImage& brow_sub, Modality modality, const ExtractionOptions& opts) {
    GrayImage prepared = median_filter(brow_sub, opts.median_window);
    if (lift_before_brow_edges(modality)) prepared = saturating_add(prepared, 64);
    const BinaryImage edges = canny(prepared, opts.canny);
    try {
        return horizontal_extent(edges);
    } catch (const MeasureError&) {
        throw MeasureError("eyebrow: no edge pixels in box");
    }
}

LipMeasure measure_lip(const GrayImage& lip_sub, const ExtractionOptions& opts) {
    const BinaryImage edges = lip_edge_image(lip_sub, opts);
    const Span cols = col_span(edges, true);
    const Span rows = row_span(edges, true);
    if (cols.first < 0) throw MeasureError("lips: no edge pixels in box");

    LipMeasure lm;
    lm.length = cols.last - cols.first + 1;
    lm.width = rows.last - rows.first + 1;
    const BinaryImage dark = binarize(lip_sub, opts.binarize);
    lm.area = dark.block(rows.first, cols.first, rows.last - rows.first + 1,
                         cols.last - cols.first + 1)
                  .count();
    return lm;
}

Measurements measure_all(const ComponentSet& set, const ExtractionOptions& opts) {
    Measurements m;
    m.face_area = set.face.area;
    std::tie(m.eye_len_r, m.eye_wid_r) = measure_eye(set.right_eye.image, opts);
    std::tie(m.eye_len_l, m.eye_wid_l) = measure_eye(set.left_eye.image, opts);
    m.brow_len_r = measure_brow(set.right_brow.image, set.modality, opts);
    m.brow_len_l = measure_brow(set.left_brow.image, set.modality, opts);
    m.nose_len = set.nose_actual.rect.rows();

    const LipMeasure lm = measure_lip(set.lips.image, opts);
    m.lip_len = lm.length;
    m.lip_wid = lm.width;
    m.lip_area = lm.area;

    m.lip_nostril_dist = set.u_lip_row_abs() - set.nostril_row_abs();
    if (m.lip_nostril_dist <= 0)
        throw MeasureError("lip-nostril distance is not positive (" +
                           std::to_string(m.lip_nostril_dist) + ")");
    return m;
}

FeatureVector assemble_vector(const Measurements& meas, const GeometricModel& gm) {
    const auto ratio = [](double num, double den, const char* what) {
        if (den == 0) throw MeasureError(std::string("degenerate ratio: ") + what);
        return num / den;
    };
    FeatureVector v;
    v << ratio(static_cast<double>(meas.face_area), static_cast<double>(gm.W) * gm.L,
               "face area share"),
        ratio(meas.eye_len_r, meas.eye_len_l, "eye length ratio"),
        ratio(meas.eye_wid_r, meas.eye_wid_l, "eye width ratio"),
        ratio(meas.brow_len_r, meas.brow_len_l, "eyebrow length ratio"),
        ratio(meas.nose_len, gm.L, "nose length share"),
        ratio(meas.lip_len, meas.lip_wid, "lip aspect"),
        ratio(static_cast<double>(meas.lip_area), static_cast<double>(gm.n1) * gm.m1,
              "lip area share"),
        ratio(meas.lip_nostril_dist, gm.L, "lip-nostril share");
    if (!v.allFinite()) throw MeasureError("feature vector has non-finite components");
    return v;
}

CenteredVector center(const FeatureVector& v) {
    CenteredVector cv;
    cv.mode = CenteringMode::per_vector;
    cv.mean_used = v.mean();
    cv.components = Vec8::Constant(cv.mean_used) - v;
    return cv;
}

Vec8 grand_mean(const std::vector<FeatureVector>& vs) {
    if (vs.empty()) throw EmptyInputError("grand_mean: no vectors");
    Vec8 sum = Vec8::Zero();
    for (const auto& v : vs) sum += v;
    return sum / static_cast<double>(vs.size());
}

std::vector<CenteredVector> center_gallery(const std::vector<FeatureVector>& vs,
                                           CenteringMode mode) {
    std::vector<CenteredVector> out;
    out.reserve(vs.size());
    if (mode == CenteringMode::per_vector) {
        for (const auto& v : vs) out.push_back(center(v));
        return out;
    }
    const Vec8 mean = grand_mean(vs);
    for (const auto& v : vs) {
        CenteredVector cv;
        cv.mode = CenteringMode::grand_mean;
        cv.components = mean - v;
        out.push_back(cv);
    }
    return out;
}

CenteredVector center_probe(const FeatureVector& v, CenteringMode mode,
                            const std::optional<Vec8>& gallery_mean) {
    if (mode == CenteringMode::per_vector) return center(v);
    if (!gallery_mean) throw StateError("grand-mean centering requires the gallery mean");
    CenteredVector cv;
    cv.mode = CenteringMode::grand_mean;
    cv.components = *gallery_mean - v;
    return cv;
}

}  // namespace sketchmatch
