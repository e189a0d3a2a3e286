#include "inkline/image.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace ink {

double ScalarImage::sample(double x, double y) const {
    // Bilinear over pixel centers; clamp outside.
    double fx = x - 0.5, fy = y - 0.5;
    int x0 = static_cast<int>(std::floor(fx));
    int y0 = static_cast<int>(std::floor(fy));
    double tx = fx - x0, ty = fy - y0;
    double v00 = at_clamped(x0, y0);
    double v10 = at_clamped(x0 + 1, y0);
    double v01 = at_clamped(x0, y0 + 1);
    double v11 = at_clamped(x0 + 1, y0 + 1);
    return (v00 * (1 - tx) + v10 * tx) * (1 - ty) + (v01 * (1 - tx) + v11 * tx) * ty;
}

void ScalarImage::clamp01_inplace() {
    for (double& v : data) v = clamp01(v);
}

// --- PGM -------------------------------------------------------------------

void write_pgm(const std::string& path, const ScalarImage& img, int maxval) {
    if (maxval != 255 && maxval != 65535)
        throw Error("write_pgm: maxval must be 255 or 65535");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_pgm: cannot open " + path);
    out << "P5\n" << img.width << " " << img.height << "\n" << maxval << "\n";
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            double v = clamp01(img.at(x, y));
            long q = std::lround(v * maxval);
            if (maxval == 255) {
                unsigned char b = static_cast<unsigned char>(q);
                out.write(reinterpret_cast<char*>(&b), 1);
            } else {
                unsigned char b[2] = {static_cast<unsigned char>(q >> 8),
                                      static_cast<unsigned char>(q & 0xff)};
                out.write(reinterpret_cast<char*>(b), 2);
            }
        }
    }
}

namespace {

// Reads one PNM header token, skipping whitespace and # comments.
std::string pnm_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
        } else if (!std::isspace(c)) {
            tok.push_back(static_cast<char>(c));
            while ((c = in.peek()) != EOF && !std::isspace(c)) tok.push_back(static_cast<char>(in.get()));
            return tok;
        }
    }
    throw Error("pnm: truncated header");
}

int pnm_int(std::istream& in) {
    std::string tok = pnm_token(in);
    try {
        return std::stoi(tok);
    } catch (...) {
        throw Error("pnm: bad header token '" + tok + "'");
    }
}

} // namespace

ScalarImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_pgm: cannot open " + path);
    std::string magic = pnm_token(in);
    if (magic != "P5") throw Error("read_pgm: not a P5 PGM: " + path);
    int w = pnm_int(in), h = pnm_int(in), maxval = pnm_int(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw Error("read_pgm: bad dimensions/maxval in " + path);
    in.get(); // single whitespace after maxval
    ScalarImage img(w, h);
    int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> row(static_cast<size_t>(w) * bytes);
    for (int y = 0; y < h; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), row.size());
        if (!in) throw Error("read_pgm: truncated pixel data in " + path);
        for (int x = 0; x < w; ++x) {
            int v = bytes == 1 ? row[x] : (row[2 * x] << 8) | row[2 * x + 1];
            img.at(x, y) = static_cast<double>(v) / maxval;
        }
    }
    return img;
}

ColorImage read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_ppm: cannot open " + path);
    std::string magic = pnm_token(in);
    if (magic != "P6") throw Error("read_ppm: not a P6 PPM: " + path);
    int w = pnm_int(in), h = pnm_int(in), maxval = pnm_int(in);
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw Error("read_ppm: bad dimensions/maxval in " + path);
    in.get();
    ColorImage img;
    img.width = w;
    img.height = h;
    img.channels = 3;
    img.bit_depth = maxval > 255 ? 16 : 8;
    if (img.bit_depth != 8) throw Error("read_ppm: only 8-bit P6 supported: " + path);
    img.data.resize(static_cast<size_t>(w) * h * 3);
    in.read(reinterpret_cast<char*>(img.data.data()), img.data.size());
    if (!in) throw Error("read_ppm: truncated pixel data in " + path);
    return img;
}

// --- PNG -------------------------------------------------------------------

void write_png_gray(const std::string& path, const ScalarImage& img) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw Error("write_png: cannot open " + path);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw Error("write_png: libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw Error("write_png: libpng error writing " + path);
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<unsigned char> row(img.width);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x)
            row[x] = static_cast<unsigned char>(std::lround(clamp01(img.at(x, y)) * 255.0));
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

ColorImage read_png(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw Error("read_png: cannot open " + path);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw Error("read_png: libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw Error("read_png: libpng error reading " + path);
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    int bit_depth = png_get_bit_depth(png, info);
    int color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    ColorImage img;
    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.bit_depth = png_get_bit_depth(png, info);
    int channels = png_get_channels(png, info);
    img.channels = channels;
    size_t rowbytes = png_get_rowbytes(png, info);
    img.data.resize(rowbytes * img.height);
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y) rows[y] = img.data.data() + rowbytes * y;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return img;
}

ColorImage read_image_any(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "png") return read_png(path);
    if (ext == "ppm") return read_ppm(path);
    if (ext == "pgm") {
        ScalarImage g = read_pgm(path);
        ColorImage img;
        img.width = g.width;
        img.height = g.height;
        img.channels = 1;
        img.bit_depth = 8;
        img.data.resize(static_cast<size_t>(g.width) * g.height);
        for (size_t i = 0; i < g.data.size(); ++i)
            img.data[i] = static_cast<uint8_t>(std::lround(clamp01(g.data[i]) * 255.0));
        return img;
    }
    throw Error("read_image_any: unsupported image extension '" + ext + "' for " + path);
}

// --- distance transform ----------------------------------------------------

namespace {

// 1D squared distance transform (Felzenszwalb & Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n,
            std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + q * (double)q) - (f[v[k]] + v[k] * (double)v[k])) / (2.0 * q - 2.0 * v[k]);
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        double dq = q - (double)v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

} // namespace

ScalarImage distance_transform(const std::vector<uint8_t>& mask, int width, int height) {
    const double inf = std::numeric_limits<double>::infinity();
    ScalarImage sq(width, height, inf);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (mask[static_cast<size_t>(y) * width + x]) sq.at(x, y) = 0.0;

    int n = std::max(width, height);
    std::vector<double> f(n), d(n);
    std::vector<int> v(n);
    std::vector<double> z(n + 1);

    for (int x = 0; x < width; ++x) { // columns
        for (int y = 0; y < height; ++y) f[y] = sq.at(x, y);
        edt_1d(f, d, height, v, z);
        for (int y = 0; y < height; ++y) sq.at(x, y) = d[y];
    }
    for (int y = 0; y < height; ++y) { // rows
        for (int x = 0; x < width; ++x) f[x] = sq.at(x, y);
        edt_1d(f, d, width, v, z);
        for (int x = 0; x < width; ++x) sq.at(x, y) = d[x];
    }
    for (double& val : sq.data) val = std::sqrt(val);
    return sq;
}

// --- hashing ---------------------------------------------------------------

std::string fnv1a64_bytes(const void* data, size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("fnv1a64: cannot open " + path);
    uint64_t h = 0xcbf29ce484222325ull;
    char buf[65536];
    while (in) {
        in.read(buf, sizeof buf);
        std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ull;
        }
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

} // namespace ink
