#include "doctest.h"
#include "sketchmatch/geometry.hpp"

using namespace sketchmatch;

namespace {

// Face region built directly from arrays, for anchor-search tests.
FaceRegion region_from(const GrayImage& image, const BinaryImage& mask) {
    FaceRegion f;
    f.mask = mask;
    f.image = mask.select(image, GrayImage::Zero(image.rows(), image.cols()));
    f.area = mask.count();
    return f;
}

}  // namespace

TEST_CASE("component boxes from the reference anchors") {
    const GeometricModel gm;
    const int ebr = 80, mlr = 160;

    const Rect re = predict_right_eye(ebr, gm);
    const Rect le = predict_left_eye(ebr, gm);
    const Rect rb = predict_right_eyebrow(ebr, gm);
    const Rect lb = predict_left_eyebrow(ebr, gm);
    const Rect lips = predict_lips(mlr, gm);
    const Rect nose = predict_nose(re, lips, gm);

    CHECK(re == Rect{72, 31, 88, 63});
    CHECK(le == Rect{72, 87, 88, 119});
    CHECK(rb == Rect{56, 23, 67, 68});
    CHECK(lb == Rect{56, 82, 67, 127});
    CHECK(lips == Rect{153, 51, 177, 102});
    CHECK(nose == Rect{72, 63, 126, 92});

    SUBCASE("boxes have the configured sizes") {
        CHECK(re.rows() == gm.n);
        CHECK(re.cols() == gm.m);
        CHECK(le.rows() == gm.n);
        CHECK(le.cols() == gm.m);
        CHECK(rb.rows() == gm.brow_rows);
        CHECK(rb.cols() == gm.brow_cols);
        CHECK(lb.cols() == gm.brow_cols);
        CHECK(lips.rows() == gm.n1);
        CHECK(lips.cols() == gm.m1);
        CHECK(nose.rows() == gm.nose_rows);
    }

    SUBCASE("nose spans eye-to-lip landmarks") {
        CHECK(nose.x1 == re.x1);
        CHECK(nose.y1 == re.y2);
        CHECK(nose.y2 == lips.y2 - 10);
    }
}

TEST_CASE("anchor near the border truncates the box") {
    const GeometricModel gm;
    CHECK(predict_right_eye(8, gm) == Rect{1, 31, 16, 63});
    CHECK(predict_left_eye(200, gm) == Rect{192, 87, 200, 119});
    CHECK(predict_right_eyebrow(25, gm) == Rect{1, 23, 12, 68});
    CHECK_THROWS_AS(predict_lips(250, gm), GeometryError);  // fully below the image
}

TEST_CASE("model validation") {
    GeometricModel gm;
    gm.n = 0;
    CHECK_THROWS_AS(gm.validate(), ParameterError);
    gm = GeometricModel{};
    gm.L = -5;
    CHECK_THROWS_AS(gm.validate(), ParameterError);
    CHECK_NOTHROW(GeometricModel{}.validate());
}

TEST_CASE("eye_ball_row picks the darkest normalized row of the upper half") {
    // Mask rows 11..110 (1-based), so the searched band is rows 11..60.
    GrayImage img = GrayImage::Constant(120, 30, 200);
    BinaryImage mask = BinaryImage::Constant(120, 30, false);
    mask.block(10, 0, 100, 30) = true;

    SUBCASE("single darkest row wins") {
        img.row(39).setConstant(50);
        CHECK(eye_ball_row(region_from(img, mask)) == 40);
    }

    SUBCASE("rows below the band midpoint are ignored") {
        img.row(79).setConstant(10);  // darker, but in the lower half
        img.row(39).setConstant(50);
        CHECK(eye_ball_row(region_from(img, mask)) == 40);
    }

    SUBCASE("ties resolve to the smaller row") {
        img.row(29).setConstant(50);
        img.row(49).setConstant(50);
        CHECK(eye_ball_row(region_from(img, mask)) == 30);
    }

    SUBCASE("normalization divides by the row's face pixels") {
        // Row 20 has only 3 face pixels, row 40 a full 30. With values
        // chosen so row 20 has the smaller sum but the larger mean, the
        // two scoring modes disagree.
        BinaryImage narrow = mask;
        narrow.row(19).setConstant(false);
        narrow.block(19, 0, 1, 3) = BinaryImage::Constant(1, 3, true);
        img.row(19).setConstant(30);
        img.row(39).setConstant(60);
        const FaceRegion region = region_from(img, narrow);
        CHECK(eye_ball_row(region) == 20);                      // mean 30 < 60
        CHECK(eye_ball_row(region, /*raw_sums=*/true) == 20);   // 90 < 1800
        // Make the narrow row's mean worse but its sum still smallest.
        GrayImage img2 = img;
        img2.row(19).setConstant(70);
        const FaceRegion region2 = region_from(img2, narrow);
        CHECK(eye_ball_row(region2) == 40);                     // mean 70 > 60
        CHECK(eye_ball_row(region2, /*raw_sums=*/true) == 20);  // 210 < 1800
    }

    SUBCASE("empty mask is an error") {
        CHECK_THROWS_AS(eye_ball_row(region_from(img, BinaryImage::Constant(120, 30, false))),
                        NoFaceError);
    }
}

TEST_CASE("mid_lip_row searches a band below the eye row") {
    const GeometricModel gm;  // L = 200: band is ebr+70 .. ebr+120
    GrayImage img = GrayImage::Constant(200, 50, 200);
    const BinaryImage mask = BinaryImage::Constant(200, 50, true);
    const int ebr = 60;

    SUBCASE("darkest row in the band wins") {
        img.row(149).setConstant(20);
        CHECK(mid_lip_row(region_from(img, mask), gm, ebr) == 150);
    }

    SUBCASE("rows just outside the band are invisible") {
        img.row(128).setConstant(5);   // row 129 < ebr+70
        img.row(181).setConstant(5);   // row 182 > ebr+120
        img.row(160).setConstant(100);
        CHECK(mid_lip_row(region_from(img, mask), gm, ebr) == 161);
    }

    SUBCASE("band clamps to the image") {
        // ebr high enough that the band would run past row 200.
        img.row(195).setConstant(10);
        CHECK(mid_lip_row(region_from(img, mask), gm, 90) == 196);
    }

    SUBCASE("band entirely off the image is an error") {
        CHECK_THROWS_AS(mid_lip_row(region_from(img, mask), gm, 250), GeometryError);
    }

    SUBCASE("band with no face pixels is an error") {
        BinaryImage top_only = BinaryImage::Constant(200, 50, false);
        top_only.block(0, 0, 100, 50) = true;
        CHECK_THROWS_AS(mid_lip_row(region_from(img, top_only), gm, 60), GeometryError);
    }
}
