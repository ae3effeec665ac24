#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>

#include "sketchmatch/errors.hpp"

namespace sketchmatch {

/// 8-bit grayscale raster, row-major so scanline order matches file order.
using GrayImage = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Boolean mask with the same layout as GrayImage. true = foreground.
using BinaryImage = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Axis-aligned pixel rectangle in 1-based inclusive coordinates.
/// x indexes rows (top to bottom), y indexes columns (left to right),
/// so (x1,y1) is the top-left corner and (x2,y2) the bottom-right.
struct Rect {
    int x1 = 0;
    int y1 = 0;
    int x2 = 0;
    int y2 = 0;

    int rows() const { return x2 - x1 + 1; }
    int cols() const { return y2 - y1 + 1; }
    long area() const { return static_cast<long>(rows()) * cols(); }
    bool operator==(const Rect&) const = default;
};

/// Intersects r with the image bounds [1,rows] x [1,cols], truncating any
/// overhang. Throws GeometryError if the intersection is empty.
Rect clamp_rect(const Rect& r, Eigen::Index rows, Eigen::Index cols);

/// Copies the sub-image covered by r (clamped to bounds first).
template <typename Derived>
typename Derived::PlainObject crop(const Eigen::DenseBase<Derived>& img, const Rect& r) {
    const Rect c = clamp_rect(r, img.rows(), img.cols());
    return img.derived().block(c.x1 - 1, c.y1 - 1, c.rows(), c.cols());
}

/// Reads a PGM/PPM image (P2, P3, P5 or P6, maxval 255). Color input is
/// reduced to grayscale with the BT.601 weights, rounded to nearest.
GrayImage load_image(const std::filesystem::path& path);

/// Writes img as binary PGM (P5). Round-trips exactly through load_image.
void save_pgm(const std::filesystem::path& path, const GrayImage& img);

/// Writes a mask as PGM, foreground black (0) on white (255).
void save_pgm(const std::filesystem::path& path, const BinaryImage& mask);

/// Scales img to rows x cols with nearest-neighbor sampling. The scale
/// factor preserves aspect ratio (min of the two axis ratios) and the
/// sampled window is centered, so off-aspect inputs lose even margins
/// rather than being stretched. Idempotent on already-conforming images.
GrayImage normalize_size(const GrayImage& img, Eigen::Index rows = 200, Eigen::Index cols = 150);

/// Threshold selection: nullopt = automatic (Otsu), otherwise the fixed
/// value in [0,255].
struct BinarizeMode {
    std::optional<int> fixed;
};

/// Otsu's threshold: maximizes between-class variance over T in [0,255]
/// with classes {p < T} and {p >= T}; ties resolve to the smaller T.
int otsu_threshold(const GrayImage& img);

/// Foreground = pixels strictly below the threshold (dark-on-light).
BinaryImage binarize(const GrayImage& img, int threshold);
BinaryImage binarize(const GrayImage& img);  // threshold chosen by Otsu
BinaryImage binarize(const GrayImage& img, const BinarizeMode& mode);

/// Adds offset to every pixel, clamping the result to [0,255].
GrayImage saturating_add(const GrayImage& img, int offset);

}  // namespace sketchmatch
