#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracsr {

/// Dense raster of double samples, row-major, channels interleaved.
/// Pixel values are nominally in [0,1]; intermediate results of the
/// pipeline may leave that range and are clamped only on save.
class Image {
public:
    Image() = default;

    Image(int width, int height, int channels = 1, double fill = 0.0)
        : width_(width), height_(height), channels_(channels),
          samples_(static_cast<size_t>(width) * height * channels, fill) {
        if (width <= 0 || height <= 0 || (channels != 1 && channels != 3))
            throw std::invalid_argument("Image: bad dimensions " +
                                        std::to_string(width) + "x" + std::to_string(height) +
                                        "x" + std::to_string(channels));
    }

    int width() const { return width_; }
    int height() const { return height_; }
    int channels() const { return channels_; }
    bool empty() const { return samples_.empty(); }
    size_t size() const { return samples_.size(); }

    double& at(int row, int col, int ch = 0) {
        return samples_[(static_cast<size_t>(row) * width_ + col) * channels_ + ch];
    }
    double at(int row, int col, int ch = 0) const {
        return samples_[(static_cast<size_t>(row) * width_ + col) * channels_ + ch];
    }

    /// Replicate-edge read: out-of-range coordinates clamp to the border.
    double at_clamped(int row, int col, int ch = 0) const {
        row = std::clamp(row, 0, height_ - 1);
        col = std::clamp(col, 0, width_ - 1);
        return at(row, col, ch);
    }

    std::span<double> samples() { return samples_; }
    std::span<const double> samples() const { return samples_; }

    bool same_shape(const Image& o) const {
        return width_ == o.width_ && height_ == o.height_ && channels_ == o.channels_;
    }

    Image channel(int ch) const {
        Image plane(width_, height_, 1);
        for (int r = 0; r < height_; ++r)
            for (int c = 0; c < width_; ++c)
                plane.at(r, c) = at(r, c, ch);
        return plane;
    }

    void set_channel(int ch, const Image& plane) {
        if (plane.width_ != width_ || plane.height_ != height_ || plane.channels_ != 1)
            throw std::invalid_argument("set_channel: plane shape mismatch");
        for (int r = 0; r < height_; ++r)
            for (int c = 0; c < width_; ++c)
                at(r, c, ch) = plane.at(r, c);
    }

private:
    int width_ = 0;
    int height_ = 0;
    int channels_ = 1;
    std::vector<double> samples_;
};

/// Per-pixel 2-vector grid (x = column direction, y = row direction).
struct GradientField {
    Image gx;
    Image gy;

    GradientField() = default;
    GradientField(int width, int height)
        : gx(width, height, 1), gy(width, height, 1) {}
};

}  // namespace fracsr
