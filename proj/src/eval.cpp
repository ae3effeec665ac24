#include "sketchmatch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace sketchmatch {

double iou(const Rect& a, const Rect& b) {
    if (a.x1 > a.x2 || a.y1 > a.y2 || b.x1 > b.x2 || b.y1 > b.y2)
        throw ParameterError("iou: malformed rect");
    const int ix1 = std::max(a.x1, b.x1), iy1 = std::max(a.y1, b.y1);
    const int ix2 = std::min(a.x2, b.x2), iy2 = std::min(a.y2, b.y2);
    if (ix1 > ix2 || iy1 > iy2) return 0.0;
    const double inter = static_cast<double>(ix2 - ix1 + 1) * (iy2 - iy1 + 1);
    const double uni = static_cast<double>(a.area()) + static_cast<double>(b.area()) - inter;
    return inter / uni;
}

ExtractionOutcome judge_extraction(std::string image_id, std::string component,
                                   const std::optional<Rect>& predicted, const Rect& truth,
                                   double tau) {
    ExtractionOutcome o;
    o.image_id = std::move(image_id);
    o.component = std::move(component);
    o.predicted = predicted;
    o.truth = truth;
    o.success = predicted && iou(*predicted, truth) >= tau;
    return o;
}

std::optional<double> component_rate(const std::vector<ExtractionOutcome>& outcomes,
                                     const std::string& component) {
    long total = 0, hits = 0;
    for (const auto& o : outcomes)
        if (o.component == component) {
            ++total;
            hits += o.success ? 1 : 0;
        }
    if (total == 0) return std::nullopt;
    return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

std::optional<double> pooled_rate(const std::vector<ExtractionOutcome>& outcomes) {
    if (outcomes.empty()) return std::nullopt;
    const long hits = std::count_if(outcomes.begin(), outcomes.end(),
                                    [](const ExtractionOutcome& o) { return o.success; });
    return 100.0 * static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

double rank_k_accuracy(const std::vector<QueryOutcome>& outcomes, int k) {
    if (k < 1) throw ParameterError("rank_k_accuracy: k must be at least 1");
    if (outcomes.empty()) throw EmptyInputError("rank_k_accuracy: no query outcomes");
    long hits = 0;
    for (const auto& q : outcomes) {
        const size_t limit = std::min<size_t>(static_cast<size_t>(k), q.matches.size());
        for (size_t i = 0; i < limit; ++i)
            if (q.matches[i].identity == q.true_identity) {
                ++hits;
                break;
            }
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(outcomes.size());
}

CmcCurve cmc(const std::vector<QueryOutcome>& outcomes, int max_rank) {
    if (max_rank < 1) throw ParameterError("cmc: max_rank must be at least 1");
    CmcCurve curve;
    curve.percent_at_rank.reserve(static_cast<size_t>(max_rank));
    for (int k = 1; k <= max_rank; ++k)
        curve.percent_at_rank.push_back(rank_k_accuracy(outcomes, k));
    return curve;
}

std::string format_percent(double percent) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", percent);
    return buf;
}

double parse_percent(const std::string& text) {
    try {
        size_t pos = 0;
        const double v = std::stod(text, &pos);
        if (pos != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw FormatError("bad percentage '" + text + "'");
    }
}

std::string render_report(const EvalReport& report) {
    static const char* kComponents[] = {"right_eye", "left_eye",  "right_brow",
                                        "left_brow", "nose",      "lips"};
    std::ostringstream out;
    char line[128];

    std::snprintf(line, sizeof line, "Component extraction success (IoU >= %.2f)\n",
                  report.tau);
    out << line;
    std::snprintf(line, sizeof line, "%-12s %8s %8s\n", "component", "photos", "sketches");
    out << line;
    const auto cell = [](const std::optional<double>& rate) {
        return rate ? format_percent(*rate) : std::string("n/a");
    };
    for (const char* comp : kComponents) {
        std::snprintf(line, sizeof line, "%-12s %8s %8s\n", comp,
                      cell(component_rate(report.photo_outcomes, comp)).c_str(),
                      cell(component_rate(report.sketch_outcomes, comp)).c_str());
        out << line;
    }
    std::snprintf(line, sizeof line, "%-12s %8s %8s\n", "overall",
                  cell(pooled_rate(report.photo_outcomes)).c_str(),
                  cell(pooled_rate(report.sketch_outcomes)).c_str());
    out << line;

    out << "\nRecognition over " << report.probes << " probe(s)\n";
    if (report.curve) {
        for (size_t i = 0; i < report.curve->percent_at_rank.size(); ++i) {
            std::snprintf(line, sizeof line, "rank %zu: %s%%\n", i + 1,
                          format_percent(report.curve->percent_at_rank[i]).c_str());
            out << line;
        }
    } else {
        out << "no queries ran\n";
    }
    return out.str();
}

}  // namespace sketchmatch
