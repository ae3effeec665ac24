#pragma once

#include <array>
#include <vector>

#include "sketchmatch/raster.hpp"

namespace sketchmatch {

/// Flat structuring element given as (row,col) offsets from the anchor.
struct StructuringElement {
    std::vector<std::array<int, 2>> offsets;
    int radius = 0;
};

/// Disk of the given radius: offsets with dr*dr + dc*dc <= radius*radius.
/// radius 2 yields the 13-pixel disk used by the face-region pipeline.
StructuringElement disk_se(int radius);

/// Binary dilation; pixels outside the image count as background.
BinaryImage dilate(const BinaryImage& img, const StructuringElement& se);

/// Binary erosion; pixels outside the image count as background, so
/// foreground touching the border erodes away.
BinaryImage erode(const BinaryImage& img, const StructuringElement& se);

/// Keeps only the largest 4-connected foreground component (first such
/// component in scan order when sizes tie). All-background input stays
/// all background.
BinaryImage largest_component(const BinaryImage& img);

/// Fills background regions not connected to the border (8-connectivity
/// for background, the dual of the 4-connected foreground).
BinaryImage fill_holes(const BinaryImage& img);

/// Face region of a grayscale portrait: mask, masked image, pixel count.
struct FaceRegion {
    BinaryImage mask;
    GrayImage image;  // original pixels inside the mask, 0 outside
    long area = 0;
};

/// Segments the face: binarize (dark = foreground), close then open with
/// a radius-2 disk, keep the largest component, fill holes, zero the
/// background. Throws NoFaceError if the mask comes out empty.
FaceRegion extract_face_region(const GrayImage& img, const BinarizeMode& mode = {});

}  // namespace sketchmatch
