#pragma once

#include <iosfwd>

#include "sketchmatch/config.hpp"

namespace sketchmatch {

// Process exit codes. Every failure maps into this closed set.
inline constexpr int kExitOk = 0;         // success
inline constexpr int kExitUsage = 1;      // bad flags, config or manifest
inline constexpr int kExitPipeline = 2;   // extraction or measurement failed
inline constexpr int kExitIo = 3;         // missing/unreadable/malformed files
inline constexpr int kExitGallery = 4;    // gallery/probe fingerprint mismatch

/// Exit code for a library error that was not handled more specifically.
int exit_code_for(const Error& e);

struct ExtractArgs {
    std::filesystem::path image;
    std::filesystem::path out_dir = ".";
    std::optional<Modality> modality;  // default: config's modality
    bool dump_mask = false;
};

struct EnrollArgs {
    std::filesystem::path photo_dir;
    std::filesystem::path gallery;
};

struct QueryArgs {
    std::filesystem::path sketch;
    std::filesystem::path gallery;
    int k = 5;
    std::optional<Modality> modality;  // default: sketch
};

struct EvaluateArgs {
    std::filesystem::path manifest;
    int k = 5;  // ranks reported in the match curve
};

/// One photo/sketch pair of the evaluation manifest, with optional
/// ground-truth boxes (component=x1,y1,x2,y2 fields).
struct ManifestEntry {
    std::string identity;
    std::filesystem::path photo;
    std::filesystem::path sketch;
    std::vector<std::pair<std::string, Rect>> truths;
};

/// Tab-separated manifest: identity, photo path, sketch path, then any
/// number of truth boxes. Relative paths resolve against the manifest's
/// directory. Throws FormatError on malformed lines.
std::vector<ManifestEntry> parse_manifest(const std::filesystem::path& path);

int run_extract(const ExtractArgs& args, const Config& cfg, std::ostream& out,
                std::ostream& err);
int run_enroll(const EnrollArgs& args, const Config& cfg, std::ostream& out,
               std::ostream& err);
int run_query(const QueryArgs& args, const Config& cfg, std::ostream& out,
              std::ostream& err);
int run_evaluate(const EvaluateArgs& args, const Config& cfg, std::ostream& out,
                 std::ostream& err);

}  // namespace sketchmatch
