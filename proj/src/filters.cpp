#include "sketchmatch/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <vector>

namespace sketchmatch {

void CannyParams::validate() const {
    if (!(sigma > 0)) throw ParameterError("canny: sigma must be positive");
    if (!(low_ratio >= 0 && low_ratio <= 1) || !(high_ratio >= 0 && high_ratio <= 1))
        throw ParameterError("canny: threshold ratios must lie in [0,1]");
    if (low_ratio > high_ratio) throw ParameterError("canny: low_ratio exceeds high_ratio");
}

GrayImage median_filter(const GrayImage& img, int window) {
    if (window < 1 || window % 2 == 0)
        throw ParameterError("median_filter: window must be odd and positive");
    if (window == 1) return img;
    const Eigen::Index rows = img.rows(), cols = img.cols();
    const int half = window / 2;
    GrayImage out(rows, cols);
    std::vector<std::uint8_t> buf(static_cast<size_t>(window) * window);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            size_t n = 0;
            for (int dr = -half; dr <= half; ++dr)
                for (int dc = -half; dc <= half; ++dc) {
                    const Eigen::Index rr = std::clamp<Eigen::Index>(r + dr, 0, rows - 1);
                    const Eigen::Index cc = std::clamp<Eigen::Index>(c + dc, 0, cols - 1);
                    buf[n++] = img(rr, cc);
                }
            auto mid = buf.begin() + static_cast<long>(n / 2);
            std::nth_element(buf.begin(), mid, buf.begin() + static_cast<long>(n));
            out(r, c) = *mid;
        }
    return out;
}

namespace {

using Grid = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Separable Gaussian with kernel half-width ceil(3*sigma); coordinates
// clamp to the image so borders are not darkened.
Grid gaussian_blur(const Grid& in, double sigma) {
    const int half = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> w(static_cast<size_t>(2 * half + 1));
    double sum = 0;
    for (int k = -half; k <= half; ++k) {
        w[static_cast<size_t>(k + half)] = std::exp(-(k * k) / (2.0 * sigma * sigma));
        sum += w[static_cast<size_t>(k + half)];
    }
    for (double& v : w) v /= sum;

    const Eigen::Index rows = in.rows(), cols = in.cols();
    Grid tmp(rows, cols), out(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            double acc = 0;
            for (int k = -half; k <= half; ++k)
                acc += w[static_cast<size_t>(k + half)] *
                       in(r, std::clamp<Eigen::Index>(c + k, 0, cols - 1));
            tmp(r, c) = acc;
        }
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            double acc = 0;
            for (int k = -half; k <= half; ++k)
                acc += w[static_cast<size_t>(k + half)] *
                       tmp(std::clamp<Eigen::Index>(r + k, 0, rows - 1), c);
            out(r, c) = acc;
        }
    return out;
}

}  // namespace

BinaryImage canny(const GrayImage& img, const CannyParams& params) {
    params.validate();
    const Eigen::Index rows = img.rows(), cols = img.cols();
    if (rows < 3 || cols < 3) throw ParameterError("canny: image smaller than 3x3");

    const Grid smooth = gaussian_blur(img.cast<double>(), params.sigma);

    // Sobel gradients; coordinates clamp to the image at the border.
    auto at = [&](Eigen::Index r, Eigen::Index c) {
        return smooth(std::clamp<Eigen::Index>(r, 0, rows - 1),
                      std::clamp<Eigen::Index>(c, 0, cols - 1));
    };
    Grid gx(rows, cols), gy(rows, cols), mag(rows, cols);
    double max_mag = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double dx = (at(r - 1, c + 1) + 2 * at(r, c + 1) + at(r + 1, c + 1)) -
                              (at(r - 1, c - 1) + 2 * at(r, c - 1) + at(r + 1, c - 1));
            const double dy = (at(r + 1, c - 1) + 2 * at(r + 1, c) + at(r + 1, c + 1)) -
                              (at(r - 1, c - 1) + 2 * at(r - 1, c) + at(r - 1, c + 1));
            gx(r, c) = dx;
            gy(r, c) = dy;
            mag(r, c) = std::hypot(dx, dy);
            max_mag = std::max(max_mag, mag(r, c));
        }
    if (max_mag == 0) return BinaryImage::Constant(rows, cols, false);

    // Non-maximum suppression along the gradient, quantized to 4
    // directions. On plateaus the tie breaks toward the upper/left pixel
    // (strict > against that side) so step edges thin to one pixel.
    auto mag_at = [&](Eigen::Index r, Eigen::Index c) -> double {
        if (r < 0 || r >= rows || c < 0 || c >= cols) return 0;
        return mag(r, c);
    };
    BinaryImage peak = BinaryImage::Constant(rows, cols, false);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double m = mag(r, c);
            if (m <= 0) continue;
            double deg = std::atan2(gy(r, c), gx(r, c)) * 180.0 / std::numbers::pi;
            if (deg < 0) deg += 180.0;
            if (deg >= 180.0) deg -= 180.0;
            double neg, pos;
            if (deg < 22.5 || deg >= 157.5) {        // horizontal gradient
                neg = mag_at(r, c - 1);
                pos = mag_at(r, c + 1);
            } else if (deg < 67.5) {                 // down-right gradient
                neg = mag_at(r - 1, c - 1);
                pos = mag_at(r + 1, c + 1);
            } else if (deg < 112.5) {                // vertical gradient
                neg = mag_at(r - 1, c);
                pos = mag_at(r + 1, c);
            } else {                                 // down-left gradient
                neg = mag_at(r - 1, c + 1);
                pos = mag_at(r + 1, c - 1);
            }
            peak(r, c) = (m > neg) && (m >= pos);
        }

    const double high = params.high_ratio * max_mag;
    const double low = params.low_ratio * max_mag;

    BinaryImage edges = BinaryImage::Constant(rows, cols, false);
    std::queue<std::pair<Eigen::Index, Eigen::Index>> q;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            if (peak(r, c) && mag(r, c) >= high) {
                edges(r, c) = true;
                q.push({r, c});
            }
    while (!q.empty()) {  // grow strong edges through connected weak pixels
        auto [r, c] = q.front();
        q.pop();
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                const Eigen::Index rr = r + dr, cc = c + dc;
                if (rr < 0 || rr >= rows || cc < 0 || cc >= cols) continue;
                if (edges(rr, cc) || !peak(rr, cc) || mag(rr, cc) < low) continue;
                edges(rr, cc) = true;
                q.push({rr, cc});
            }
    }
    return edges;
}

}  // namespace sketchmatch
