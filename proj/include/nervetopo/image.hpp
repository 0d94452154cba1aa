#ifndef NERVETOPO_IMAGE_HPP
#define NERVETOPO_IMAGE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <png.h>

#include <nervetopo/geometry.hpp>

namespace nervetopo {

/** Grayscale raster, row-major, intensities in [0, 1]. */
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> intensity;

    GrayImage() = default;
    GrayImage(int w, int h, std::vector<double> values)
        : width(w), height(h), intensity(std::move(values)) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("image dimensions must be positive");
        if (intensity.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h))
            throw std::invalid_argument("intensity size does not match width x height");
        for (double v : intensity)
            if (!(v >= 0.0 && v <= 1.0))
                throw std::invalid_argument("intensity values must lie in [0, 1]");
    }

    double at(int x, int y) const { return intensity[static_cast<std::size_t>(y) * width + x]; }
};

/** Image keypoint: pixel position, edge strength, gradient angle in [0, 2pi). */
struct Keypoint {
    Point2 position;
    double magnitude = 0.0;
    double orientation = 0.0;
};

/** Per-pixel gradient magnitude and orientation; border ring forced to zero. */
struct GradientField {
    int width = 0;
    int height = 0;
    std::vector<double> magnitude;
    std::vector<double> orientation;

    double mag_at(int x, int y) const {
        return magnitude[static_cast<std::size_t>(y) * width + x];
    }
    double ori_at(int x, int y) const {
        return orientation[static_cast<std::size_t>(y) * width + x];
    }
};

namespace detail {

struct FileCloser {
    std::FILE* f = nullptr;
    ~FileCloser() {
        if (f) std::fclose(f);
    }
};

}  // namespace detail

/**
 * Loads a PNG as grayscale. Color inputs convert by
 * luma = 0.299 R + 0.587 G + 0.114 B; all values scale to [0, 1].
 */
inline GrayImage load_grayscale(const std::string& path) {
    detail::FileCloser file{std::fopen(path.c_str(), "rb")};
    if (!file.f) throw std::runtime_error("cannot open image file: " + path);

    png_byte sig[8];
    if (std::fread(sig, 1, 8, file.f) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw std::runtime_error("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("cannot initialize PNG reader");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw std::runtime_error("cannot initialize PNG reader");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw std::runtime_error("corrupt PNG file: " + path);
    }

    png_init_io(png, file.f);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const png_byte color_type = png_get_color_type(png, info);
    const png_byte bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    const bool gray_source =
        color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA;
    if (gray_source) {
        if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    } else {
        if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    }
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const std::size_t rowbytes = png_get_rowbytes(png, info);
    std::vector<png_byte> data(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    std::vector<double> values(static_cast<std::size_t>(w) * h);
    const int channels = static_cast<int>(rowbytes / w);
    for (png_uint_32 y = 0; y < h; ++y) {
        const png_bytep row = data.data() + y * rowbytes;
        for (png_uint_32 x = 0; x < w; ++x) {
            double v;
            if (channels == 1) {
                v = row[x] / 255.0;
            } else {
                const double r = row[x * channels + 0] / 255.0;
                const double g = row[x * channels + 1] / 255.0;
                const double b = row[x * channels + 2] / 255.0;
                v = 0.299 * r + 0.587 * g + 0.114 * b;
            }
            values[static_cast<std::size_t>(y) * w + x] = std::clamp(v, 0.0, 1.0);
        }
    }
    return GrayImage(static_cast<int>(w), static_cast<int>(h), std::move(values));
}

/** Writes an 8-bit grayscale PNG. */
inline void save_grayscale(const GrayImage& img, const std::string& path) {
    detail::FileCloser file{std::fopen(path.c_str(), "wb")};
    if (!file.f) throw std::runtime_error("cannot open image file for writing: " + path);

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw std::runtime_error("cannot initialize PNG writer");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw std::runtime_error("cannot initialize PNG writer");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw std::runtime_error("PNG write failed: " + path);
    }

    png_init_io(png, file.f);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(img.width);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            row[x] = static_cast<png_byte>(std::lround(std::clamp(img.at(x, y), 0.0, 1.0) * 255.0));
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

/**
 * Sobel 3x3 gradient field. Magnitude is sqrt(gx^2 + gy^2); orientation is
 * atan2(gy, gx) mapped into [0, 2pi), with y pointing down the image rows.
 * The one-pixel border ring gets zero magnitude.
 */
inline GradientField gradient_field(const GrayImage& img) {
    if (img.width < 3 || img.height < 3)
        throw std::invalid_argument("image too small for gradients (need at least 3x3)");
    GradientField field;
    field.width = img.width;
    field.height = img.height;
    field.magnitude.assign(img.intensity.size(), 0.0);
    field.orientation.assign(img.intensity.size(), 0.0);

    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int y = 1; y + 1 < img.height; ++y) {
        for (int x = 1; x + 1 < img.width; ++x) {
            // Grouped as column/row sums so constant regions cancel exactly.
            const double right =
                img.at(x + 1, y - 1) + 2.0 * img.at(x + 1, y) + img.at(x + 1, y + 1);
            const double left =
                img.at(x - 1, y - 1) + 2.0 * img.at(x - 1, y) + img.at(x - 1, y + 1);
            const double below =
                img.at(x - 1, y + 1) + 2.0 * img.at(x, y + 1) + img.at(x + 1, y + 1);
            const double above =
                img.at(x - 1, y - 1) + 2.0 * img.at(x, y - 1) + img.at(x + 1, y - 1);
            const double gx = right - left;
            const double gy = below - above;
            const double mag = std::hypot(gx, gy);
            double ori = 0.0;
            if (mag > 0.0) {
                ori = std::atan2(gy, gx);
                if (ori < 0.0) ori += two_pi;
                if (ori >= two_pi) ori = 0.0;
            }
            const std::size_t idx = static_cast<std::size_t>(y) * img.width + x;
            field.magnitude[idx] = mag;
            field.orientation[idx] = ori;
        }
    }
    return field;
}

/**
 * Selects up to k keypoints, strongest gradient first. A pixel is accepted
 * when its magnitude is positive, it keeps Euclidean distance
 * d_min = max(2, floor(sqrt(W*H / (4k)))) from all accepted keypoints, and
 * its (orientation, magnitude) pair, quantized to 36 x 32 bins, is unused.
 * The quantized-bin rule realizes "all keypoints have different gradient
 * orientations and edge strengths" over real-valued fields.
 */
inline std::vector<Keypoint> select_keypoints(const GrayImage& img, std::size_t k) {
    if (k < 1) throw std::invalid_argument("keypoint count must be at least 1");
    const GradientField field = gradient_field(img);

    double max_mag = 0.0;
    for (double m : field.magnitude) max_mag = std::max(max_mag, m);
    if (max_mag == 0.0) return {};

    std::vector<std::uint32_t> order;
    order.reserve(field.magnitude.size());
    for (std::uint32_t i = 0; i < field.magnitude.size(); ++i)
        if (field.magnitude[i] > 0.0) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (field.magnitude[a] != field.magnitude[b])
            return field.magnitude[a] > field.magnitude[b];
        return a < b;
    });

    const double d_min = std::max(
        2.0, std::floor(std::sqrt(static_cast<double>(img.width) * img.height / (4.0 * k))));
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<Keypoint> accepted;
    std::set<std::pair<int, int>> used_bins;
    for (std::uint32_t idx : order) {
        if (accepted.size() >= k) break;
        const int x = static_cast<int>(idx % img.width);
        const int y = static_cast<int>(idx / img.width);
        const double mag = field.magnitude[idx];
        const double ori = field.orientation[idx];

        const int ori_bin = std::min(35, static_cast<int>(ori / two_pi * 36.0));
        const int mag_bin = std::min(31, static_cast<int>(mag / max_mag * 32.0));
        if (used_bins.count({ori_bin, mag_bin})) continue;

        bool spaced = true;
        for (const Keypoint& kp : accepted) {
            const double dx = kp.position.x - x, dy = kp.position.y - y;
            if (dx * dx + dy * dy < d_min * d_min) {
                spaced = false;
                break;
            }
        }
        if (!spaced) continue;

        accepted.push_back(Keypoint{Point2(x, y), mag, ori});
        used_bins.insert({ori_bin, mag_bin});
    }
    return accepted;
}

}  // namespace nervetopo

#endif  // NERVETOPO_IMAGE_HPP
