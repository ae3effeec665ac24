#include "sketchmatch/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace sketchmatch {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

int to_int(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const int n = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an integer, got '" + v + "'");
    }
}

double to_double(const std::string& v, const std::string& where) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, const std::string& where) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError(where + ": expected true or false, got '" + v + "'");
}

}  // namespace

Modality parse_modality(const std::string& s) {
    if (s == "photo") return Modality::photo;
    if (s == "sketch") return Modality::sketch;
    throw ConfigError("unknown modality '" + s + "'");
}

Config parse_config(std::istream& in, const std::string& name) {
    Config cfg;

    const std::map<std::string, std::function<void(const std::string&, const std::string&)>>
        setters = {
            {"geom.W", [&](const std::string& v, const std::string& w) { cfg.geom.W = to_int(v, w); }},
            {"geom.L", [&](const std::string& v, const std::string& w) { cfg.geom.L = to_int(v, w); }},
            {"geom.n", [&](const std::string& v, const std::string& w) { cfg.geom.n = to_int(v, w); }},
            {"geom.m", [&](const std::string& v, const std::string& w) { cfg.geom.m = to_int(v, w); }},
            {"geom.n1", [&](const std::string& v, const std::string& w) { cfg.geom.n1 = to_int(v, w); }},
            {"geom.m1", [&](const std::string& v, const std::string& w) { cfg.geom.m1 = to_int(v, w); }},
            {"geom.a", [&](const std::string& v, const std::string& w) { cfg.geom.a = to_int(v, w); }},
            {"geom.b", [&](const std::string& v, const std::string& w) { cfg.geom.b = to_int(v, w); }},
            {"geom.c", [&](const std::string& v, const std::string& w) { cfg.geom.c = to_int(v, w); }},
            {"geom.d", [&](const std::string& v, const std::string& w) { cfg.geom.d = to_int(v, w); }},
            {"geom.e", [&](const std::string& v, const std::string& w) { cfg.geom.e = to_int(v, w); }},
            {"geom.f", [&](const std::string& v, const std::string& w) { cfg.geom.f = to_int(v, w); }},
            {"geom.g", [&](const std::string& v, const std::string& w) { cfg.geom.g = to_int(v, w); }},
            {"geom.x", [&](const std::string& v, const std::string& w) { cfg.geom.x = to_int(v, w); }},
            {"geom.y", [&](const std::string& v, const std::string& w) { cfg.geom.y = to_int(v, w); }},
            {"geom.brow_rows", [&](const std::string& v, const std::string& w) { cfg.geom.brow_rows = to_int(v, w); }},
            {"geom.brow_cols", [&](const std::string& v, const std::string& w) { cfg.geom.brow_cols = to_int(v, w); }},
            {"geom.nose_rows", [&](const std::string& v, const std::string& w) { cfg.geom.nose_rows = to_int(v, w); }},
            {"geom.raw_row_sums", [&](const std::string& v, const std::string& w) { cfg.raw_row_sums = to_bool(v, w); }},
            {"canny.sigma", [&](const std::string& v, const std::string& w) { cfg.canny.sigma = to_double(v, w); }},
            {"canny.low_ratio", [&](const std::string& v, const std::string& w) { cfg.canny.low_ratio = to_double(v, w); }},
            {"canny.high_ratio", [&](const std::string& v, const std::string& w) { cfg.canny.high_ratio = to_double(v, w); }},
            {"median.window", [&](const std::string& v, const std::string& w) { cfg.median_window = to_int(v, w); }},
            {"binarize.mode",
             [&](const std::string& v, const std::string& w) {
                 if (v == "otsu") {
                     cfg.binarize.fixed.reset();
                 } else if (v.rfind("fixed:", 0) == 0) {
                     const int t = to_int(v.substr(6), w);
                     if (t < 0 || t > 255) throw ConfigError(w + ": threshold outside [0,255]");
                     cfg.binarize.fixed = t;
                 } else {
                     throw ConfigError(w + ": expected otsu or fixed:<T>, got '" + v + "'");
                 }
             }},
            {"centering.mode",
             [&](const std::string& v, const std::string& w) {
                 if (v == "per-vector") cfg.centering = CenteringMode::per_vector;
                 else if (v == "grand-mean") cfg.centering = CenteringMode::grand_mean;
                 else throw ConfigError(w + ": expected per-vector or grand-mean, got '" + v + "'");
             }},
            {"eval.iou_tau",
             [&](const std::string& v, const std::string& w) {
                 cfg.iou_tau = to_double(v, w);
                 if (cfg.iou_tau < 0 || cfg.iou_tau > 1)
                     throw ConfigError(w + ": iou_tau outside [0,1]");
             }},
            {"modality.default",
             [&](const std::string& v, const std::string& w) {
                 try {
                     cfg.default_modality = parse_modality(v);
                 } catch (const ConfigError&) {
                     throw ConfigError(w + ": expected photo or sketch, got '" + v + "'");
                 }
             }},
            {"matcher.voting", [&](const std::string& v, const std::string& w) { cfg.voting = to_bool(v, w); }},
        };

    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = name + " line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");

        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(where + ": unknown key '" + key + "'");
        it->second(value, where);
    }

    try {
        cfg.geom.validate();
        cfg.canny.validate();
        if (cfg.median_window < 1 || cfg.median_window % 2 == 0)
            throw ParameterError("median.window must be odd and positive");
    } catch (const ParameterError& e) {
        throw ConfigError(name + ": " + e.what());
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return parse_config(in, path.string());
}

}  // namespace sketchmatch
