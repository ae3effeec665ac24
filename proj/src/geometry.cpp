#include "sketchmatch/geometry.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sketchmatch {

void GeometricModel::validate() const {
    const struct {
        const char* name;
        int value;
    } dims[] = {{"W", W}, {"L", L}, {"n", n}, {"m", m}, {"n1", n1}, {"m1", m1},
                {"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e},   {"f", f},
                {"g", g}, {"x", x}, {"y", y}, {"brow_rows", brow_rows},
                {"brow_cols", brow_cols}, {"nose_rows", nose_rows}};
    for (const auto& d : dims)
        if (d.value <= 0)
            throw ParameterError(std::string("geometry: ") + d.name + " must be positive");
}

namespace {

struct RowBand {
    int first = 0, last = 0;  // 1-based inclusive
};

// Darkest row of the face within the band: per row, the intensity sum of
// masked pixels, divided by the number of masked pixels unless raw_sums.
// Rows without face pixels are skipped. Ties go to the smaller row.
int darkest_row(const FaceRegion& face, const RowBand& band, bool raw_sums,
                const char* what) {
    int best_row = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (int row = band.first; row <= band.last; ++row) {
        long count = 0;
        double sum = 0;
        for (Eigen::Index c = 0; c < face.mask.cols(); ++c)
            if (face.mask(row - 1, c)) {
                ++count;
                sum += face.image(row - 1, c);
            }
        if (count == 0) continue;
        const double score = raw_sums ? sum : sum / static_cast<double>(count);
        if (score < best_score) {
            best_score = score;
            best_row = row;
        }
    }
    if (best_row == 0)
        throw GeometryError(std::string(what) + ": no face pixels in search band");
    return best_row;
}

}  // namespace

int eye_ball_row(const FaceRegion& face, bool raw_sums) {
    int top = 0, bottom = 0;
    for (Eigen::Index r = 0; r < face.mask.rows(); ++r)
        if (face.mask.row(r).any()) {
            if (top == 0) top = static_cast<int>(r) + 1;
            bottom = static_cast<int>(r) + 1;
        }
    if (top == 0) throw NoFaceError("eye_ball_row: empty face mask");
    const RowBand upper{top, top + (bottom - top) / 2};
    return darkest_row(face, upper, raw_sums, "eye_ball_row");
}

int mid_lip_row(const FaceRegion& face, const GeometricModel& gm, int ebr, bool raw_sums) {
    RowBand band;
    band.first = ebr + static_cast<int>(std::lround(0.35 * gm.L));
    band.last = ebr + static_cast<int>(std::lround(0.60 * gm.L));
    band.first = std::max(band.first, 1);
    band.last = static_cast<int>(std::min<long>(band.last, face.mask.rows()));
    if (band.first > band.last)
        throw GeometryError("mid_lip_row: search band falls outside the image");
    return darkest_row(face, band, raw_sums, "mid_lip_row");
}

Rect predict_right_eye(int ebr, const GeometricModel& gm) {
    const int x1 = ebr - gm.c;
    return clamp_rect({x1, gm.a + 1, x1 + gm.n - 1, gm.a + gm.m}, gm.L, gm.W);
}

Rect predict_left_eye(int ebr, const GeometricModel& gm) {
    const int x1 = ebr - gm.c;
    const int y1 = gm.mid_col() + gm.b;
    return clamp_rect({x1, y1, x1 + gm.n - 1, y1 + gm.m - 1}, gm.L, gm.W);
}

Rect predict_right_eyebrow(int ebr, const GeometricModel& gm) {
    const int x1 = ebr - 3 * gm.c;
    return clamp_rect({x1, GeometricModel::initial_column + gm.y, x1 + gm.brow_rows - 1,
                       gm.mid_col() - gm.g},
                      gm.L, gm.W);
}

Rect predict_left_eyebrow(int ebr, const GeometricModel& gm) {
    const int x1 = ebr - 3 * gm.c;
    const int y1 = gm.mid_col() + gm.g;
    return clamp_rect({x1, y1, x1 + gm.brow_rows - 1, y1 + gm.brow_cols - 1}, gm.L, gm.W);
}

Rect predict_lips(int mlr, const GeometricModel& gm) {
    const int x1 = mlr - gm.e;
    return clamp_rect({x1, gm.d + 1, x1 + gm.n1 - 1, gm.d + gm.m1}, gm.L, gm.W);
}

Rect predict_nose(const Rect& right_eye, const Rect& lips, const GeometricModel& gm) {
    return clamp_rect({right_eye.x1, right_eye.y2, right_eye.x1 + gm.nose_rows - 1,
                       lips.y2 - 10},
                      gm.L, gm.W);
}

}  // namespace sketchmatch
