#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "doctest.h"
#include "sketchmatch/features.hpp"

using namespace sketchmatch;

TEST_CASE("extent measures span the outermost foreground pixels") {
    BinaryImage b = BinaryImage::Constant(10, 20, false);
    b(3, 5) = true;
    b(7, 14) = true;
    CHECK(horizontal_extent(b) == 10);  // cols 6..15, 1-based inclusive
    CHECK(vertical_extent(b) == 5);     // rows 4..8

    SUBCASE("single pixel spans one") {
        BinaryImage one = BinaryImage::Constant(4, 4, false);
        one(2, 2) = true;
        CHECK(horizontal_extent(one) == 1);
        CHECK(vertical_extent(one) == 1);
    }

    SUBCASE("foreground flag flips the polarity") {
        BinaryImage all = BinaryImage::Constant(6, 8, true);
        all(0, 0) = false;
        CHECK(horizontal_extent(all, false) == 1);
        CHECK(vertical_extent(all, false) == 1);
    }

    SUBCASE("no foreground is an error") {
        const BinaryImage empty = BinaryImage::Constant(5, 5, false);
        CHECK_THROWS_AS(horizontal_extent(empty), MeasureError);
        CHECK_THROWS_AS(vertical_extent(empty), MeasureError);
    }
}

TEST_CASE("measure_eye thresholds the box and spans the dark blob") {
    GrayImage eye = GrayImage::Constant(17, 33, 200);
    eye.block(6, 10, 5, 13).setConstant(20);  // 13 wide, 5 tall
    const ExtractionOptions opts;
    const auto [len, wid] = measure_eye(eye, opts);
    CHECK(len == 13);
    CHECK(wid == 5);

    CHECK_THROWS_AS(measure_eye(GrayImage::Constant(17, 33, 200), opts), MeasureError);
}

TEST_CASE("measure_brow spans the edge pixels of the brow bar") {
    GrayImage brow = GrayImage::Constant(12, 46, 190);
    brow.block(3, 5, 5, 36).setConstant(90);  // bar cols 6..41, 1-based
    const ExtractionOptions opts;

    const int photo_len = measure_brow(brow, Modality::photo, opts);
    const int sketch_len = measure_brow(brow, Modality::sketch, opts);
    // Edges trace the bar outline, so the extent tracks the drawn length.
    CHECK(photo_len >= 34);
    CHECK(photo_len <= 38);
    CHECK(sketch_len >= 34);
    CHECK(sketch_len <= 38);

    CHECK_THROWS_AS(measure_brow(GrayImage::Constant(12, 46, 190), Modality::photo, opts),
                    MeasureError);
}

TEST_CASE("measure_lip reports edge spans and dark area") {
    GrayImage lip = GrayImage::Constant(25, 52, 210);
    lip.block(9, 8, 7, 38).setConstant(60);
    const ExtractionOptions opts;
    const LipMeasure m = measure_lip(lip, opts);
    CHECK(m.length >= 36);
    CHECK(m.length <= 40);
    CHECK(m.width >= 5);
    CHECK(m.width <= 9);
    // The dark bar dominates the edge bounding box.
    CHECK(m.area >= 7 * 38);
}

TEST_CASE("assemble_vector computes the eight ratios") {
    const GeometricModel gm;
    Measurements meas;
    meas.face_area = 15000;
    meas.eye_len_r = 26;
    meas.eye_len_l = 25;
    meas.eye_wid_r = 9;
    meas.eye_wid_l = 10;
    meas.brow_len_r = 36;
    meas.brow_len_l = 40;
    meas.nose_len = 45;
    meas.lip_len = 40;
    meas.lip_wid = 10;
    meas.lip_area = 325;
    meas.lip_nostril_dist = 40;  // e.g. rows 153 and 113

    const FeatureVector v = assemble_vector(meas, gm);
    CHECK(v(0) == doctest::Approx(0.5));        // 15000 / (150*200)
    CHECK(v(1) == doctest::Approx(1.04));
    CHECK(v(2) == doctest::Approx(0.9));
    CHECK(v(3) == doctest::Approx(0.9));
    CHECK(v(4) == doctest::Approx(0.225));      // 45 / 200
    CHECK(v(5) == doctest::Approx(4.0));
    CHECK(v(6) == doctest::Approx(0.25));       // 325 / (25*52)
    CHECK(v(7) == doctest::Approx(0.2));        // 40 / 200

    SUBCASE("zero denominators are rejected") {
        Measurements bad = meas;
        bad.eye_len_l = 0;
        CHECK_THROWS_AS(assemble_vector(bad, gm), MeasureError);
        bad = meas;
        bad.lip_wid = 0;
        CHECK_THROWS_AS(assemble_vector(bad, gm), MeasureError);
    }
}

TEST_CASE("per-vector centering removes the component mean") {
    FeatureVector v;
    v << 0.5, 1.04, 0.9, 0.9, 0.225, 4.0, 0.25, 0.2;
    const CenteredVector c = center(v);
    CHECK(c.mode == CenteringMode::per_vector);
    CHECK(c.mean_used == doctest::Approx(v.mean()));
    // components hold mean - v, so they sum to zero
    CHECK(std::abs(c.components.sum()) <= 1e-12);
    CHECK(c.components(5) == doctest::Approx(v.mean() - 4.0));
}

TEST_CASE("grand mean averages componentwise") {
    std::vector<FeatureVector> vs(3);
    vs[0] << 1, 2, 3, 4, 5, 6, 7, 8;
    vs[1] << 3, 2, 1, 0, 1, 2, 3, 4;
    vs[2] << 2, 2, 2, 2, 0, 1, 2, 0;
    const Vec8 mean = grand_mean(vs);
    CHECK(mean(0) == doctest::Approx(2.0));
    CHECK(mean(3) == doctest::Approx(2.0));
    CHECK(mean(7) == doctest::Approx(4.0));

    CHECK_THROWS_AS(grand_mean({}), EmptyInputError);

    SUBCASE("gallery centering subtracts the shared mean") {
        const auto centered = center_gallery(vs, CenteringMode::grand_mean);
        REQUIRE(centered.size() == 3);
        for (const auto& c : centered) CHECK(c.mode == CenteringMode::grand_mean);
        CHECK(centered[0].components(0) == doctest::Approx(2.0 - 1.0));
        CHECK(centered[1].components(7) == doctest::Approx(4.0 - 4.0));
        // Sum of centered vectors vanishes by construction.
        Vec8 total = Vec8::Zero();
        for (const auto& c : centered) total += c.components;
        CHECK(total.cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("centering preserves pairwise distances") {
    // mean - v negates and shifts every vector the same way within a
    // mode, so distances between same-mode vectors cannot change.
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> dist(0.0, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<FeatureVector> vs(4);
        for (auto& v : vs)
            for (int i = 0; i < 8; ++i) v(i) = dist(rng);

        const auto grand = center_gallery(vs, CenteringMode::grand_mean);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) {
                const double raw = (vs[a] - vs[b]).norm();
                const double cen = (grand[a].components - grand[b].components).norm();
                CHECK(cen == doctest::Approx(raw).epsilon(1e-12));
            }
    }
}

TEST_CASE("probe centering follows the gallery mode") {
    FeatureVector v;
    v << 1, 2, 3, 4, 5, 6, 7, 8;

    const CenteredVector pv = center_probe(v, CenteringMode::per_vector, std::nullopt);
    CHECK(pv.components(0) == doctest::Approx(4.5 - 1.0));

    Vec8 mean;
    mean << 2, 2, 2, 2, 2, 2, 2, 2;
    const CenteredVector gm = center_probe(v, CenteringMode::grand_mean, mean);
    CHECK(gm.components(0) == doctest::Approx(1.0));
    CHECK(gm.components(7) == doctest::Approx(-6.0));

    CHECK_THROWS_AS(center_probe(v, CenteringMode::grand_mean, std::nullopt), StateError);
}
