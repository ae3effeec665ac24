#include "sketchmatch/morphology.hpp"

#include <queue>
#include <string>

namespace sketchmatch {

StructuringElement disk_se(int radius) {
    if (radius < 0) throw ParameterError("disk_se: negative radius");
    StructuringElement se;
    se.radius = radius;
    for (int dr = -radius; dr <= radius; ++dr)
        for (int dc = -radius; dc <= radius; ++dc)
            if (dr * dr + dc * dc <= radius * radius) se.offsets.push_back({dr, dc});
    return se;
}

BinaryImage dilate(const BinaryImage& img, const StructuringElement& se) {
    const Eigen::Index rows = img.rows(), cols = img.cols();
    BinaryImage out = BinaryImage::Constant(rows, cols, false);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!img(r, c)) continue;
            for (const auto& [dr, dc] : se.offsets) {
                const Eigen::Index rr = r + dr, cc = c + dc;
                if (rr >= 0 && rr < rows && cc >= 0 && cc < cols) out(rr, cc) = true;
            }
        }
    return out;
}

BinaryImage erode(const BinaryImage& img, const StructuringElement& se) {
    const Eigen::Index rows = img.rows(), cols = img.cols();
    BinaryImage out = BinaryImage::Constant(rows, cols, false);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            bool keep = true;
            for (const auto& [dr, dc] : se.offsets) {
                const Eigen::Index rr = r + dr, cc = c + dc;
                if (rr < 0 || rr >= rows || cc < 0 || cc >= cols || !img(rr, cc)) {
                    keep = false;
                    break;
                }
            }
            out(r, c) = keep;
        }
    return out;
}

namespace {

using LabelGrid = Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Flood fill over `img==value` starting at (r0,c0), writing `label` into
// `labels`. Returns the region size.
long flood(const BinaryImage& img, bool value, Eigen::Index r0, Eigen::Index c0,
           LabelGrid& labels, int label, bool diagonal) {
    const Eigen::Index rows = img.rows(), cols = img.cols();
    std::queue<std::pair<Eigen::Index, Eigen::Index>> q;
    q.push({r0, c0});
    labels(r0, c0) = label;
    long size = 0;
    static constexpr int kStep4[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    static constexpr int kStep8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                         {0, 1},   {1, -1}, {1, 0}, {1, 1}};
    while (!q.empty()) {
        auto [r, c] = q.front();
        q.pop();
        ++size;
        const auto* steps = diagonal ? kStep8 : kStep4;
        const int nsteps = diagonal ? 8 : 4;
        for (int i = 0; i < nsteps; ++i) {
            const Eigen::Index rr = r + steps[i][0], cc = c + steps[i][1];
            if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
            if (img(rr, cc) != value || labels(rr, cc) != 0) continue;
            labels(rr, cc) = label;
            q.push({rr, cc});
        }
    }
    return size;
}

}  // namespace

BinaryImage largest_component(const BinaryImage& img) {
    const Eigen::Index rows = img.rows(), cols = img.cols();
    LabelGrid labels = LabelGrid::Zero(rows, cols);
    int next = 0;
    int best_label = 0;
    long best_size = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!img(r, c) || labels(r, c) != 0) continue;
            ++next;
            const long size = flood(img, true, r, c, labels, next, /*diagonal=*/false);
            if (size > best_size) {
                best_size = size;
                best_label = next;
            }
        }
    if (best_label == 0) return BinaryImage::Constant(rows, cols, false);
    return labels == best_label;
}

BinaryImage fill_holes(const BinaryImage& img) {
    const Eigen::Index rows = img.rows(), cols = img.cols();
    LabelGrid reached = LabelGrid::Zero(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (r != 0 && r != rows - 1 && c != 0 && c != cols - 1) continue;
            if (!img(r, c) && reached(r, c) == 0)
                flood(img, false, r, c, reached, 1, /*diagonal=*/true);
        }
    return img || (reached == 0);
}

FaceRegion extract_face_region(const GrayImage& img, const BinarizeMode& mode) {
    const StructuringElement se = disk_se(2);
    BinaryImage mask = binarize(img, mode);
    mask = dilate(mask, se);   // close: bridge gaps in the silhouette
    mask = erode(mask, se);
    mask = erode(mask, se);    // open: drop thin clutter
    mask = dilate(mask, se);
    mask = largest_component(mask);
    mask = fill_holes(mask);

    FaceRegion face;
    face.area = mask.count();
    if (face.area == 0) throw NoFaceError("face mask is empty");
    face.mask = std::move(mask);
    face.image = face.mask.select(img, GrayImage::Zero(img.rows(), img.cols()));
    return face;
}

}  // namespace sketchmatch
