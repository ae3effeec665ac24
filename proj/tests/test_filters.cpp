#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "sketchmatch/filters.hpp"

using namespace sketchmatch;

namespace {

GrayImage random_gray(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols) {
    GrayImage img(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            img(r, c) = static_cast<std::uint8_t>(rng() % 256);
    return img;
}

// Median by full sort, the slow obvious way.
GrayImage median_ref(const GrayImage& img, int window) {
    const int half = window / 2;
    GrayImage out(img.rows(), img.cols());
    for (Eigen::Index r = 0; r < img.rows(); ++r)
        for (Eigen::Index c = 0; c < img.cols(); ++c) {
            std::vector<std::uint8_t> vals;
            for (int dr = -half; dr <= half; ++dr)
                for (int dc = -half; dc <= half; ++dc) {
                    const Eigen::Index rr =
                        std::clamp<Eigen::Index>(r + dr, 0, img.rows() - 1);
                    const Eigen::Index cc =
                        std::clamp<Eigen::Index>(c + dc, 0, img.cols() - 1);
                    vals.push_back(img(rr, cc));
                }
            std::sort(vals.begin(), vals.end());
            out(r, c) = vals[vals.size() / 2];
        }
    return out;
}

GrayImage vertical_step(int rows, int cols, int first_bright_col, int lo, int hi) {
    GrayImage img(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            img(r, c) = static_cast<std::uint8_t>(c < first_bright_col ? lo : hi);
    return img;
}

}  // namespace

TEST_CASE("median filter") {
    SUBCASE("window must be odd and positive") {
        const GrayImage img = GrayImage::Constant(4, 4, 10);
        CHECK_THROWS_AS(median_filter(img, 0), ParameterError);
        CHECK_THROWS_AS(median_filter(img, 2), ParameterError);
        CHECK_THROWS_AS(median_filter(img, -3), ParameterError);
        CHECK((median_filter(img, 1) == img).all());
    }

    SUBCASE("removes isolated salt") {
        GrayImage img = GrayImage::Constant(5, 5, 20);
        img(2, 2) = 255;
        CHECK((median_filter(img, 3) == 20).all());
    }

    SUBCASE("matches the sorting reference") {
        std::mt19937 rng(1234);
        for (const int window : {3, 5}) {
            for (int trial = 0; trial < 6; ++trial) {
                const GrayImage img = random_gray(rng, 14, 11);
                CHECK((median_filter(img, window) == median_ref(img, window)).all());
            }
        }
    }
}

TEST_CASE("canny parameter checks") {
    const GrayImage img = GrayImage::Constant(8, 8, 100);
    CHECK_THROWS_AS(canny(img, {0.0, 0.1, 0.3}), ParameterError);
    CHECK_THROWS_AS(canny(img, {1.4, -0.1, 0.3}), ParameterError);
    CHECK_THROWS_AS(canny(img, {1.4, 0.1, 1.5}), ParameterError);
    CHECK_THROWS_AS(canny(img, {1.4, 0.5, 0.2}), ParameterError);
    CHECK_THROWS_AS(canny(GrayImage::Constant(2, 8, 0)), ParameterError);
    CHECK_THROWS_AS(canny(GrayImage::Constant(8, 2, 0)), ParameterError);
}

TEST_CASE("canny on flat images") {
    CHECK(canny(GrayImage::Constant(10, 10, 0)).count() == 0);
    CHECK(canny(GrayImage::Constant(10, 10, 255)).count() == 0);
}

TEST_CASE("canny localizes step edges") {
    SUBCASE("vertical step: one column, within a pixel of the boundary") {
        const GrayImage img = vertical_step(16, 16, 8, 50, 100);
        const BinaryImage edges = canny(img);
        // The step sits between columns 8 and 9 (1-based).
        for (Eigen::Index r = 0; r < 16; ++r) {
            int count = 0, col = -1;
            for (Eigen::Index c = 0; c < 16; ++c)
                if (edges(r, c)) {
                    ++count;
                    col = static_cast<int>(c);
                }
            CHECK(count == 1);
            CHECK(col >= 6);
            CHECK(col <= 8);
        }
    }

    SUBCASE("horizontal step behaves the same, transposed") {
        GrayImage img(16, 16);
        for (Eigen::Index r = 0; r < 16; ++r)
            for (Eigen::Index c = 0; c < 16; ++c)
                img(r, c) = static_cast<std::uint8_t>(r < 8 ? 50 : 100);
        const BinaryImage edges = canny(img);
        for (Eigen::Index c = 0; c < 16; ++c) {
            int count = 0, row = -1;
            for (Eigen::Index r = 0; r < 16; ++r)
                if (edges(r, c)) {
                    ++count;
                    row = static_cast<int>(r);
                }
            CHECK(count == 1);
            CHECK(row >= 6);
            CHECK(row <= 8);
        }
    }
}

TEST_CASE("canny hysteresis links weak pixels only through strong ones") {
    // A strong vertical edge and, far from it, a faint one. The faint
    // edge's gradient falls under the low threshold scaled by the strong
    // edge's magnitude, so it must vanish.
    GrayImage img(20, 40);
    for (Eigen::Index r = 0; r < 20; ++r)
        for (Eigen::Index c = 0; c < 40; ++c) {
            int v = 100;
            if (c >= 10) v = 228;  // strong step at col 10
            if (c >= 30) v = 235;  // whisper of a step at col 30
            img(r, c) = static_cast<std::uint8_t>(v);
        }
    const BinaryImage edges = canny(img, {1.0, 0.2, 0.5});
    bool strong_found = false, faint_found = false;
    for (Eigen::Index r = 0; r < 20; ++r)
        for (Eigen::Index c = 0; c < 40; ++c)
            if (edges(r, c)) {
                if (c >= 7 && c <= 12) strong_found = true;
                if (c >= 27 && c <= 32) faint_found = true;
            }
    CHECK(strong_found);
    CHECK_FALSE(faint_found);
}

TEST_CASE("modality gates the eyebrow brightness lift") {
    CHECK(lift_before_brow_edges(Modality::photo));
    CHECK_FALSE(lift_before_brow_edges(Modality::sketch));
}
