#include "sketchmatch/matcher.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace sketchmatch {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

std::string mode_name(CenteringMode m) {
    return m == CenteringMode::per_vector ? "per-vector" : "grand-mean";
}

CenteringMode parse_mode(const std::string& s, const std::string& where) {
    if (s == "per-vector") return CenteringMode::per_vector;
    if (s == "grand-mean") return CenteringMode::grand_mean;
    throw FormatError(where + ": unknown centering mode '" + s + "'");
}

double parse_double(const std::string& tok, const std::string& where) {
    try {
        size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size() || !std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(where + ": bad number '" + tok + "'");
    }
}

constexpr char kMagic[] = "SKETCHMATCH-GALLERY v1";

}  // namespace

double euclidean(const Eigen::Ref<const Eigen::VectorXd>& a,
                 const Eigen::Ref<const Eigen::VectorXd>& b) {
    if (a.size() != b.size())
        throw ContractError("euclidean: dimension mismatch (" + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()) + ")");
    return (a - b).norm();
}

std::vector<Match> knn_query(const Gallery& gallery, const CenteredVector& probe, int k,
                             const std::string& probe_fingerprint) {
    if (k < 1) throw ParameterError("knn_query: k must be at least 1");
    if (gallery.entries.empty()) throw StateError("knn_query: gallery is empty");
    if (!probe_fingerprint.empty() && probe_fingerprint != gallery.fingerprint)
        throw IncompatibleGalleryError("gallery fingerprint " + gallery.fingerprint +
                                       " does not match probe fingerprint " +
                                       probe_fingerprint);
    if (probe.mode != gallery.mode)
        throw StateError("probe centered as " + mode_name(probe.mode) + " but gallery is " +
                         mode_name(gallery.mode));

    std::vector<std::pair<double, size_t>> scored;
    scored.reserve(gallery.entries.size());
    for (size_t i = 0; i < gallery.entries.size(); ++i)
        scored.emplace_back(euclidean(gallery.entries[i].vector.components,
                                      probe.components),
                            i);
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    const size_t take = std::min<size_t>(static_cast<size_t>(k), scored.size());
    std::vector<Match> out;
    out.reserve(take);
    for (size_t i = 0; i < take; ++i) {
        const GalleryEntry& e = gallery.entries[scored[i].second];
        out.push_back({e.identity, e.photo_path, scored[i].first});
    }
    return out;
}

std::string classify(const std::vector<Match>& matches, bool majority_vote) {
    if (matches.empty()) throw StateError("classify: no matches");
    if (!majority_vote) return matches.front().identity;

    std::map<std::string, std::pair<int, size_t>> votes;  // identity -> (count, best rank)
    for (size_t i = 0; i < matches.size(); ++i) {
        auto [it, fresh] = votes.try_emplace(matches[i].identity, 0, i);
        ++it->second.first;
        if (fresh) it->second.second = i;
    }
    const std::string* best = nullptr;
    int best_count = 0;
    size_t best_rank = 0;
    for (const auto& [id, cr] : votes) {
        const auto [count, rank] = cr;
        if (count > best_count || (count == best_count && rank < best_rank)) {
            best = &id;
            best_count = count;
            best_rank = rank;
        }
    }
    return *best;
}

std::string model_fingerprint(const GeometricModel& gm, const ExtractionOptions& opts) {
    std::ostringstream canon;
    canon << "W=" << gm.W << "|L=" << gm.L << "|n=" << gm.n << "|m=" << gm.m
          << "|n1=" << gm.n1 << "|m1=" << gm.m1 << "|a=" << gm.a << "|b=" << gm.b
          << "|c=" << gm.c << "|d=" << gm.d << "|e=" << gm.e << "|f=" << gm.f
          << "|g=" << gm.g << "|x=" << gm.x << "|y=" << gm.y
          << "|brow_rows=" << gm.brow_rows << "|brow_cols=" << gm.brow_cols
          << "|nose_rows=" << gm.nose_rows << "|sigma=" << fmt("%.17g", opts.canny.sigma)
          << "|low=" << fmt("%.17g", opts.canny.low_ratio)
          << "|high=" << fmt("%.17g", opts.canny.high_ratio)
          << "|median=" << opts.median_window << "|binarize="
          << (opts.binarize.fixed ? "fixed:" + std::to_string(*opts.binarize.fixed) : "otsu")
          << "|raw=" << (opts.raw_row_sums ? 1 : 0);

    std::uint64_t h = 14695981039346656037ull;
    for (const char ch : canon.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

void save_gallery(const std::filesystem::path& path, const Gallery& gallery) {
    if (gallery.mode == CenteringMode::grand_mean && !gallery.mean)
        throw StateError("save_gallery: grand-mean gallery lacks its mean");

    std::vector<size_t> order(gallery.entries.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return gallery.entries[a].identity < gallery.entries[b].identity;
    });
    std::set<std::string> seen;
    for (const auto& e : gallery.entries)
        if (!seen.insert(e.identity).second)
            throw StateError("save_gallery: duplicate identity '" + e.identity + "'");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << kMagic << "\n";
    out << "mode=" << mode_name(gallery.mode) << " dim=8 fingerprint=" << gallery.fingerprint
        << "\n";
    if (gallery.mode == CenteringMode::grand_mean) {
        out << "mean=";
        for (int i = 0; i < 8; ++i) out << (i ? " " : "") << fmt("%.17g", (*gallery.mean)(i));
        out << "\n";
    }
    for (const size_t idx : order) {
        const GalleryEntry& e = gallery.entries[idx];
        out << e.identity << "\t" << e.photo_path << "\t";
        for (int i = 0; i < 8; ++i)
            out << (i ? " " : "") << fmt("%.9g", e.vector.components(i));
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

Gallery load_gallery(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    const std::string name = path.string();

    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw FormatError(name + ": missing gallery header");

    if (!std::getline(in, line)) throw FormatError(name + ": missing mode line");
    Gallery g;
    {
        std::istringstream fields(line);
        std::string field;
        bool have_mode = false, have_dim = false, have_fp = false;
        while (fields >> field) {
            const auto eq = field.find('=');
            if (eq == std::string::npos)
                throw FormatError(name + ": bad field '" + field + "'");
            const std::string key = field.substr(0, eq), val = field.substr(eq + 1);
            if (key == "mode") {
                g.mode = parse_mode(val, name);
                have_mode = true;
            } else if (key == "dim") {
                if (val != "8") throw FormatError(name + ": unsupported dim " + val);
                have_dim = true;
            } else if (key == "fingerprint") {
                g.fingerprint = val;
                have_fp = true;
            } else {
                throw FormatError(name + ": unknown field '" + key + "'");
            }
        }
        if (!have_mode || !have_dim || !have_fp)
            throw FormatError(name + ": incomplete mode line");
    }

    if (g.mode == CenteringMode::grand_mean) {
        if (!std::getline(in, line) || line.rfind("mean=", 0) != 0)
            throw FormatError(name + ": grand-mean gallery lacks a mean line");
        std::istringstream vals(line.substr(5));
        Vec8 mean;
        std::string tok;
        for (int i = 0; i < 8; ++i) {
            if (!(vals >> tok)) throw FormatError(name + ": mean line has too few values");
            mean(i) = parse_double(tok, name);
        }
        if (vals >> tok) throw FormatError(name + ": mean line has too many values");
        g.mean = mean;
    }

    std::set<std::string> seen;
    for (int line_no = 3; std::getline(in, line); ++line_no) {
        if (line.empty()) continue;
        const std::string where = name + " line " + std::to_string(line_no);
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                    : line.find('\t', tab1 + 1);
        if (tab2 == std::string::npos)
            throw FormatError(where + ": expected identity, path and values");
        GalleryEntry e;
        e.identity = line.substr(0, tab1);
        e.photo_path = line.substr(tab1 + 1, tab2 - tab1 - 1);
        if (e.identity.empty()) throw FormatError(where + ": empty identity");
        if (!seen.insert(e.identity).second)
            throw FormatError(where + ": duplicate identity '" + e.identity + "'");

        std::istringstream vals(line.substr(tab2 + 1));
        std::string tok;
        for (int i = 0; i < 8; ++i) {
            if (!(vals >> tok)) throw FormatError(where + ": expected 8 values");
            e.vector.components(i) = parse_double(tok, where);
        }
        if (vals >> tok) throw FormatError(where + ": trailing values");
        e.vector.mode = g.mode;
        g.entries.push_back(std::move(e));
    }
    return g;
}

}  // namespace sketchmatch
