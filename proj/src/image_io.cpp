#include "fracsr/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace fracsr {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

uint32_t quantize(double v, uint32_t maxval) {
    v = std::clamp(v, 0.0, 1.0);
    return static_cast<uint32_t>(std::floor(v * maxval + 0.5));
}

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return "";
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext;
}

// ---- PNG ----------------------------------------------------------------

Image load_png(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) throw io_error("cannot open " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("libpng init failed for " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw io_error("libpng init failed for " + path);
    }
    std::vector<png_byte> raw;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error("failed to decode PNG " + path);
    }
    png_init_io(png, fp.get());
    png_read_info(png, info);

    const png_byte color_type = png_get_color_type(png, info);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type & PNG_COLOR_MASK_ALPHA ||
        png_get_valid(png, info, PNG_INFO_tRNS))
        png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const int depth = png_get_bit_depth(png, info);
    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error("unsupported PNG channel layout in " + path);
    }

    const size_t rowbytes = png_get_rowbytes(png, info);
    raw.resize(rowbytes * height);
    rows.resize(height);
    for (int r = 0; r < height; ++r) rows[r] = raw.data() + r * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    Image img(width, height, channels);
    const double maxval = depth == 16 ? 65535.0 : 255.0;
    for (int r = 0; r < height; ++r) {
        const png_byte* p = raw.data() + r * rowbytes;
        for (int c = 0; c < width; ++c)
            for (int k = 0; k < channels; ++k) {
                uint32_t v;
                if (depth == 16) {
                    v = (static_cast<uint32_t>(p[0]) << 8) | p[1];  // network order
                    p += 2;
                } else {
                    v = *p++;
                }
                img.at(r, c, k) = v / maxval;
            }
    }
    return img;
}

void save_png(const Image& img, const std::string& path, int bit_depth) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) throw io_error("cannot open " + path + " for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw io_error("libpng init failed for " + path);
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw io_error("libpng init failed for " + path);
    }
    std::vector<png_byte> raw;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error("failed to encode PNG " + path);
    }
    png_init_io(png, fp.get());

    const int color = img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, img.width(), img.height(), bit_depth, color,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    const uint32_t maxval = bit_depth == 16 ? 65535u : 255u;
    const size_t rowbytes = static_cast<size_t>(img.width()) * img.channels() * (bit_depth / 8);
    raw.resize(rowbytes * img.height());
    rows.resize(img.height());
    for (int r = 0; r < img.height(); ++r) {
        png_byte* p = raw.data() + r * rowbytes;
        rows[r] = p;
        for (int c = 0; c < img.width(); ++c)
            for (int k = 0; k < img.channels(); ++k) {
                const uint32_t v = quantize(img.at(r, c, k), maxval);
                if (bit_depth == 16) {
                    *p++ = static_cast<png_byte>(v >> 8);
                    *p++ = static_cast<png_byte>(v & 0xff);
                } else {
                    *p++ = static_cast<png_byte>(v);
                }
            }
    }
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---- PNM (binary PGM/PPM) ------------------------------------------------

int pnm_token(std::istream& in) {
    // skips whitespace and '#' comments
    while (in) {
        int ch = in.peek();
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    in >> value;
    return value;
}

Image load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    const int channels = (magic[1] == '6') ? 3 : 1;
    if (magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        throw io_error("unsupported PNM magic in " + path);

    const int width = pnm_token(in);
    const int height = pnm_token(in);
    const int maxval = pnm_token(in);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        throw io_error("bad PNM header in " + path);
    in.get();  // single whitespace before raster

    const int bytes = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> raw(static_cast<size_t>(width) * height * channels * bytes);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw io_error("truncated PNM raster in " + path);

    Image img(width, height, channels);
    const unsigned char* p = raw.data();
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c)
            for (int k = 0; k < channels; ++k) {
                uint32_t v;
                if (bytes == 2) {
                    v = (static_cast<uint32_t>(p[0]) << 8) | p[1];  // big-endian per Netpbm
                    p += 2;
                } else {
                    v = *p++;
                }
                img.at(r, c, k) = static_cast<double>(v) / maxval;
            }
    return img;
}

void save_pnm(const Image& img, const std::string& path, int bit_depth) {
    const bool color = img.channels() == 3;
    const std::string ext = lower_ext(path);
    if (color && ext == "pgm")
        throw io_error("cannot write 3-channel image as PGM: " + path);
    if (!color && ext == "ppm")
        throw io_error("cannot write single-channel image as PPM: " + path);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open " + path + " for writing");
    const uint32_t maxval = bit_depth == 16 ? 65535u : 255u;
    out << (color ? "P6" : "P5") << "\n"
        << img.width() << " " << img.height() << "\n"
        << maxval << "\n";
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            for (int k = 0; k < img.channels(); ++k) {
                const uint32_t v = quantize(img.at(r, c, k), maxval);
                if (bit_depth == 16) {
                    out.put(static_cast<char>(v >> 8));
                    out.put(static_cast<char>(v & 0xff));
                } else {
                    out.put(static_cast<char>(v));
                }
            }
    if (!out) throw io_error("short write to " + path);
}

}  // namespace

Image load_image(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw io_error("cannot open " + path);
    unsigned char magic[8] = {0};
    probe.read(reinterpret_cast<char*>(magic), 8);
    probe.close();

    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (std::equal(png_sig, png_sig + 8, magic)) return load_png(path);
    if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) return load_pnm(path);
    throw io_error("unsupported image format: " + path);
}

void save_image(const Image& img, const std::string& path, int bit_depth) {
    if (img.empty()) throw io_error("refusing to save empty image to " + path);
    if (bit_depth != 8 && bit_depth != 16)
        throw io_error("unsupported bit depth " + std::to_string(bit_depth) + " for " + path);
    const std::string ext = lower_ext(path);
    if (ext == "png")
        save_png(img, path, bit_depth);
    else if (ext == "pgm" || ext == "ppm" || ext == "pnm")
        save_pnm(img, path, bit_depth);
    else
        throw io_error("unsupported output extension ." + ext + " for " + path);
}

}  // namespace fracsr
