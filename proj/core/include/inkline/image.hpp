#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "inkline/vec.hpp"

namespace ink {

// Single-channel float raster. Luminance images live in [0,1]; depth images
// hold positive camera-space depths with +infinity for uncovered pixels.
struct ScalarImage {
    int width = 0;
    int height = 0;
    std::vector<double> data; // row-major, data[y * width + x]

    ScalarImage() = default;
    ScalarImage(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    // Clamped integer lookup.
    double at_clamped(int x, int y) const {
        x = x < 0 ? 0 : (x >= width ? width - 1 : x);
        y = y < 0 ? 0 : (y >= height ? height - 1 : y);
        return at(x, y);
    }

    // Bilinear sample; (x, y) in pixel space where pixel (i, j) has center
    // (i + 0.5, j + 0.5). Coordinates clamped to the image.
    double sample(double x, double y) const;

    void clamp01_inplace();
};

inline double depth_infinity() { return std::numeric_limits<double>::infinity(); }

// 8-bit interleaved raster used for photo input (trace path).
struct ColorImage {
    int width = 0;
    int height = 0;
    int channels = 0; // 1 (gray) or 3 (rgb)
    int bit_depth = 8;
    std::vector<uint8_t> data;
};

// --- PGM (P5, 8- or 16-bit) ---------------------------------------------
// Luminance values are clamped to [0,1] and quantized with rounding.
void write_pgm(const std::string& path, const ScalarImage& img, int maxval = 255);
ScalarImage read_pgm(const std::string& path);

// --- PNG (via libpng) -----------------------------------------------------
// Writes 8-bit grayscale. Deterministic across runs.
void write_png_gray(const std::string& path, const ScalarImage& img);
// Reads gray/palette/RGB/RGBA PNG. 16-bit files are reported as such in
// ColorImage::bit_depth (the luminance op rejects them).
ColorImage read_png(const std::string& path);

// --- PPM (P6, 8-bit RGB) --------------------------------------------------
ColorImage read_ppm(const std::string& path);

// Reads PGM/PPM/PNG by extension into a ColorImage.
ColorImage read_image_any(const std::string& path);

// Exact Euclidean distance transform (Felzenszwalb & Huttenlocher): output
// pixel value = distance in px to the nearest set pixel of `mask`
// (mask nonzero = feature). Unset everywhere -> all +infinity.
ScalarImage distance_transform(const std::vector<uint8_t>& mask, int width, int height);

// FNV-1a 64-bit over a file's bytes, as 16 hex digits. Used by run manifests.
std::string fnv1a64_file(const std::string& path);
std::string fnv1a64_bytes(const void* data, size_t n);

} // namespace ink
