#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sketchmatch/matcher.hpp"

namespace sketchmatch {

/// Intersection over union of two boxes; 0 when they do not overlap.
double iou(const Rect& a, const Rect& b);

/// One component of one image, judged against its annotated box.
/// predicted is empty when extraction failed for that image.
struct ExtractionOutcome {
    std::string image_id;
    std::string component;
    std::optional<Rect> predicted;
    Rect truth;
    bool success = false;
};

ExtractionOutcome judge_extraction(std::string image_id, std::string component,
                                   const std::optional<Rect>& predicted, const Rect& truth,
                                   double tau);

/// Success percentage for one component, counted over the images that
/// carry truth for it; nullopt when there are none.
std::optional<double> component_rate(const std::vector<ExtractionOutcome>& outcomes,
                                     const std::string& component);

/// Success percentage pooled over every annotated component instance.
std::optional<double> pooled_rate(const std::vector<ExtractionOutcome>& outcomes);

/// One probe's ranked matches plus who it really is.
struct QueryOutcome {
    std::string probe_id;
    std::string true_identity;
    std::vector<Match> matches;
};

/// Fraction (as a percentage) of probes whose true identity appears in
/// the first k matches.
double rank_k_accuracy(const std::vector<QueryOutcome>& outcomes, int k);

/// Cumulative match curve for ranks 1..max_rank; non-decreasing.
struct CmcCurve {
    std::vector<double> percent_at_rank;
};
CmcCurve cmc(const std::vector<QueryOutcome>& outcomes, int max_rank);

/// Percentages print with one decimal place ("82.1").
std::string format_percent(double percent);
double parse_percent(const std::string& text);

struct EvalReport {
    std::vector<ExtractionOutcome> photo_outcomes;
    std::vector<ExtractionOutcome> sketch_outcomes;
    std::optional<CmcCurve> curve;
    double tau = 0.3;
    int probes = 0;
};

/// Plain-text report: per-component extraction table (photos and
/// sketches side by side, "n/a" where no truth exists) and the match
/// curve.
std::string render_report(const EvalReport& report);

}  // namespace sketchmatch
