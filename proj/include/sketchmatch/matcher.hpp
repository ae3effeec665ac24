#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sketchmatch/features.hpp"

namespace sketchmatch {

struct GalleryEntry {
    std::string identity;
    std::string photo_path;
    CenteredVector vector;
};

/// Enrolled photo vectors plus the settings fingerprint needed to refuse
/// probes that were produced under different parameters.
struct Gallery {
    std::vector<GalleryEntry> entries;
    CenteringMode mode = CenteringMode::per_vector;
    std::optional<Vec8> mean;  // present exactly in grand_mean mode
    std::string fingerprint;   // see model_fingerprint
};

/// Euclidean distance; the operands must have equal dimension.
double euclidean(const Eigen::Ref<const Eigen::VectorXd>& a,
                 const Eigen::Ref<const Eigen::VectorXd>& b);

struct Match {
    std::string identity;
    std::string photo_path;
    double distance = 0;
};

/// The k nearest gallery entries by Euclidean distance, closest first.
/// Exact ties keep enrollment order. Pass the probe's model fingerprint
/// to reject galleries built under different parameters; empty skips the
/// check. The probe must be centered the same way as the gallery.
std::vector<Match> knn_query(const Gallery& gallery, const CenteredVector& probe, int k = 5,
                             const std::string& probe_fingerprint = {});

/// Identity of the best match; with majority_vote, the most frequent
/// identity among the matches (ties go to the one ranked best).
std::string classify(const std::vector<Match>& matches, bool majority_vote = false);

/// Stable 64-bit FNV-1a digest of every parameter that shapes feature
/// values: the geometric model, Canny and median settings, threshold
/// mode and row scoring mode. 16 hex characters.
std::string model_fingerprint(const GeometricModel& gm, const ExtractionOptions& opts);

/// Text format, one entry per line, sorted by identity so identical
/// inputs serialize byte-identically.
void save_gallery(const std::filesystem::path& path, const Gallery& gallery);
Gallery load_gallery(const std::filesystem::path& path);

}  // namespace sketchmatch
