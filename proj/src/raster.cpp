#include "sketchmatch/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

namespace sketchmatch {

namespace {

// Reads whitespace/comment-separated header tokens of a PNM file.
// '#' starts a comment running to end of line.
std::string next_token(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        }
        c = in.get();
    }
    if (c == EOF) throw FormatError(path + ": truncated header");
    std::string tok;
    while (c != EOF && !std::isspace(c) && c != '#') {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    if (c == '#') in.unget();
    return tok;
}

long parse_dim(const std::string& tok, const std::string& path, const char* what) {
    try {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v <= 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(path + ": bad " + what + " '" + tok + "'");
    }
}

int parse_ascii_sample(std::istream& in, const std::string& path) {
    std::string tok = next_token(in, path);
    try {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0 || v > 255) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw FormatError(path + ": bad sample '" + tok + "'");
    }
}

std::uint8_t luma(int r, int g, int b) {
    return static_cast<std::uint8_t>(std::lround(0.299 * r + 0.587 * g + 0.114 * b));
}

}  // namespace

Rect clamp_rect(const Rect& r, Eigen::Index rows, Eigen::Index cols) {
    Rect c;
    c.x1 = std::max(r.x1, 1);
    c.y1 = std::max(r.y1, 1);
    c.x2 = std::min<long>(r.x2, rows);
    c.y2 = std::min<long>(r.y2, cols);
    if (c.x1 > c.x2 || c.y1 > c.y2)
        throw GeometryError("empty region after clamping rect (" + std::to_string(r.x1) + "," +
                            std::to_string(r.y1) + "," + std::to_string(r.x2) + "," +
                            std::to_string(r.y2) + ") to " + std::to_string(rows) + "x" +
                            std::to_string(cols));
    return c;
}

GrayImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    const std::string name = path.string();

    std::string magic = next_token(in, name);
    if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6")
        throw FormatError(name + ": unsupported magic '" + magic + "'");
    const bool color = (magic == "P3" || magic == "P6");
    const bool raw = (magic == "P5" || magic == "P6");

    const long cols = parse_dim(next_token(in, name), name, "width");
    const long rows = parse_dim(next_token(in, name), name, "height");
    const std::string maxval = next_token(in, name);
    if (maxval != "255") throw FormatError(name + ": unsupported maxval '" + maxval + "'");

    GrayImage img(rows, cols);
    if (raw) {
        // exactly one whitespace byte separates the header from the samples
        const long n = rows * cols * (color ? 3 : 1);
        std::string buf(static_cast<size_t>(n), '\0');
        in.read(buf.data(), n);
        if (in.gcount() != n) throw FormatError(name + ": truncated pixel data");
        const auto* p = reinterpret_cast<const unsigned char*>(buf.data());
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) {
                if (color) {
                    img(i, j) = luma(p[0], p[1], p[2]);
                    p += 3;
                } else {
                    img(i, j) = *p++;
                }
            }
    } else {
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j) {
                if (color) {
                    int r = parse_ascii_sample(in, name);
                    int g = parse_ascii_sample(in, name);
                    int b = parse_ascii_sample(in, name);
                    img(i, j) = luma(r, g, b);
                } else {
                    img(i, j) = static_cast<std::uint8_t>(parse_ascii_sample(in, name));
                }
            }
    }
    return img;
}

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.data()),
              static_cast<std::streamsize>(img.size()));
    if (!out) throw IoError("write failed: " + path.string());
}

void save_pgm(const std::filesystem::path& path, const BinaryImage& mask) {
    GrayImage img = mask.select(GrayImage::Zero(mask.rows(), mask.cols()),
                                GrayImage::Constant(mask.rows(), mask.cols(), 255));
    save_pgm(path, img);
}

GrayImage normalize_size(const GrayImage& img, Eigen::Index rows, Eigen::Index cols) {
    if (img.rows() == 0 || img.cols() == 0) throw ParameterError("normalize_size: empty image");
    if (rows <= 0 || cols <= 0) throw ParameterError("normalize_size: bad target size");
    if (img.rows() == rows && img.cols() == cols) return img;

    const double scale = std::min(static_cast<double>(img.rows()) / rows,
                                  static_cast<double>(img.cols()) / cols);
    const Eigen::Index sub_rows =
        std::clamp<Eigen::Index>(std::lround(rows * scale), 1, img.rows());
    const Eigen::Index sub_cols =
        std::clamp<Eigen::Index>(std::lround(cols * scale), 1, img.cols());
    const Eigen::Index r0 = (img.rows() - sub_rows) / 2;
    const Eigen::Index c0 = (img.cols() - sub_cols) / 2;

    GrayImage out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index si = std::min<Eigen::Index>(
            sub_rows - 1, static_cast<Eigen::Index>((i + 0.5) * sub_rows / rows));
        for (Eigen::Index j = 0; j < cols; ++j) {
            const Eigen::Index sj = std::min<Eigen::Index>(
                sub_cols - 1, static_cast<Eigen::Index>((j + 0.5) * sub_cols / cols));
            out(i, j) = img(r0 + si, c0 + sj);
        }
    }
    return out;
}

int otsu_threshold(const GrayImage& img) {
    if (img.size() == 0) throw ParameterError("otsu_threshold: empty image");
    long hist[256] = {0};
    for (Eigen::Index i = 0; i < img.size(); ++i) ++hist[*(img.data() + i)];

    const double total = static_cast<double>(img.size());
    double sum_all = 0;
    for (int v = 0; v < 256; ++v) sum_all += static_cast<double>(v) * hist[v];

    int best_t = 0;
    double best_bcv = -1.0;
    long n0 = 0;       // pixels strictly below T
    double sum0 = 0;   // intensity sum of those pixels
    for (int t = 0; t <= 255; ++t) {
        if (t > 0) {
            n0 += hist[t - 1];
            sum0 += static_cast<double>(t - 1) * hist[t - 1];
        }
        const long n1 = img.size() - n0;
        if (n0 == 0 || n1 == 0) {
            if (best_bcv < 0) {
                best_bcv = 0;
                best_t = t;
            }
            continue;
        }
        const double w0 = n0 / total;
        const double w1 = n1 / total;
        const double mu0 = sum0 / n0;
        const double mu1 = (sum_all - sum0) / n1;
        const double bcv = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if (bcv > best_bcv) {
            best_bcv = bcv;
            best_t = t;
        }
    }
    return best_t;
}

BinaryImage binarize(const GrayImage& img, int threshold) {
    if (threshold < 0 || threshold > 255)
        throw ParameterError("binarize: threshold " + std::to_string(threshold) +
                             " outside [0,255]");
    return img.cast<int>() < threshold;
}

BinaryImage binarize(const GrayImage& img) { return binarize(img, otsu_threshold(img)); }

BinaryImage binarize(const GrayImage& img, const BinarizeMode& mode) {
    return mode.fixed ? binarize(img, *mode.fixed) : binarize(img);
}

GrayImage saturating_add(const GrayImage& img, int offset) {
    return (img.cast<int>() + offset).cwiseMax(0).cwiseMin(255).cast<std::uint8_t>();
}

}  // namespace sketchmatch
