#pragma once

#include <stdexcept>
#include <string>

#include "fracsr/image.hpp"

namespace fracsr {

/// File access or format failure; the message carries the path.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Reads a PNG, PGM or PPM file (sniffed by magic bytes) into [0,1]
/// samples. 8- and 16-bit depths are supported; palette and low-bit-depth
/// PNGs are expanded, alpha is dropped.
Image load_image(const std::string& path);

/// Writes PNG (.png), PGM (.pgm) or PPM (.ppm) chosen by extension.
/// Samples are clamped to [0,1] and quantized by rounding half away from
/// zero at the requested depth.
void save_image(const Image& img, const std::string& path, int bit_depth = 8);

}  // namespace fracsr
