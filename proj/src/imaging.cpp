#include "fracsr/imaging.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fracsr {

ScaleFactor make_scale(int s) {
    if (s < 2 || (s & (s - 1)) != 0)
        throw std::domain_error("scale factor must be a power of two >= 2, got " +
                                std::to_string(s));
    ScaleFactor sf;
    sf.s = s;
    sf.levels = 0;
    for (int v = s; v > 1; v >>= 1) ++sf.levels;
    return sf;
}

GaussianKernel gaussian_kernel(double sigma) {
    if (!(sigma > 0.0))
        throw std::domain_error("gaussian_kernel: sigma must be > 0");
    GaussianKernel k;
    k.sigma = sigma;
    k.radius = static_cast<int>(std::ceil(3.0 * sigma));
    k.taps_1d.resize(2 * k.radius + 1);
    double sum = 0.0;
    for (int i = -k.radius; i <= k.radius; ++i) {
        const double v = std::exp(-0.5 * (i * i) / (sigma * sigma));
        k.taps_1d[i + k.radius] = v;
        sum += v;
    }
    for (double& v : k.taps_1d) v /= sum;
    return k;
}

namespace {

void require_single_channel(const Image& img, const char* op) {
    if (img.channels() != 1)
        throw std::invalid_argument(std::string(op) + ": expects a single-channel image");
}

// Separable replicate-padded convolution. Per-axis clamping is equivalent
// to clamping the full 2-D stencil because the pad extends rows and
// columns independently.
Image convolve_separable(const Image& img, const std::vector<double>& taps, int radius) {
    const int w = img.width(), h = img.height();
    Image tmp(w, h, 1);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += taps[i + radius] * img.at_clamped(r, c - i);
            tmp.at(r, c) = acc;
        }
    Image out(w, h, 1);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i)
                acc += taps[i + radius] * tmp.at_clamped(r - i, c);
            out.at(r, c) = acc;
        }
    return out;
}

}  // namespace

Image convolve(const Image& img, const GaussianKernel& kernel) {
    require_single_channel(img, "convolve");
    return convolve_separable(img, kernel.taps_1d, kernel.radius);
}

Image convolve_adjoint(const Image& img, const GaussianKernel& kernel) {
    require_single_channel(img, "convolve_adjoint");
    // Adjoint of clamped convolution is correlation with scatter at the
    // borders; implemented as an explicit scatter to stay exact.
    const int w = img.width(), h = img.height(), radius = kernel.radius;
    Image tmp(w, h, 1, 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double v = img.at(r, c);
            if (v == 0.0) continue;
            for (int i = -radius; i <= radius; ++i) {
                const int cc = std::clamp(c - i, 0, w - 1);
                tmp.at(r, cc) += kernel.taps_1d[i + radius] * v;
            }
        }
    Image out(w, h, 1, 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double v = tmp.at(r, c);
            if (v == 0.0) continue;
            for (int i = -radius; i <= radius; ++i) {
                const int rr = std::clamp(r - i, 0, h - 1);
                out.at(rr, c) += kernel.taps_1d[i + radius] * v;
            }
        }
    return out;
}

Image downsample(const Image& img, int s) {
    require_single_channel(img, "downsample");
    if (img.width() % s != 0 || img.height() % s != 0)
        throw std::invalid_argument("downsample: dimensions " + std::to_string(img.width()) +
                                    "x" + std::to_string(img.height()) +
                                    " not divisible by " + std::to_string(s));
    Image out(img.width() / s, img.height() / s, 1);
    for (int r = 0; r < out.height(); ++r)
        for (int c = 0; c < out.width(); ++c)
            out.at(r, c) = img.at(r * s, c * s);
    return out;
}

Image upsample_zerofill(const Image& img, int s) {
    require_single_channel(img, "upsample_zerofill");
    Image out(img.width() * s, img.height() * s, 1, 0.0);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            out.at(r * s, c * s) = img.at(r, c);
    return out;
}

Image blur_decimate(const Image& img, const GaussianKernel& kernel, int s) {
    return downsample(convolve(img, kernel), s);
}

Image blur_decimate_adjoint(const Image& img, const GaussianKernel& kernel, int s) {
    return convolve_adjoint(upsample_zerofill(img, s), kernel);
}

namespace {

// Catmull-Rom weight (bicubic with a = -0.5).
double catmull_rom(double t) {
    t = std::fabs(t);
    if (t <= 1.0) return ((1.5 * t - 2.5) * t) * t + 1.0;
    if (t < 2.0) return (((-0.5 * t) + 2.5) * t - 4.0) * t + 2.0;
    return 0.0;
}

}  // namespace

Image bicubic_resize(const Image& img, int s) {
    if (s < 1) throw std::domain_error("bicubic_resize: scale must be >= 1");
    const int w = img.width(), h = img.height(), ch = img.channels();
    Image out(w * s, h * s, ch);

    // Output x samples the source at x/s, so there are s fractional phases.
    std::vector<std::array<double, 4>> phase(s);
    for (int p = 0; p < s; ++p) {
        const double f = static_cast<double>(p) / s;
        phase[p] = {catmull_rom(f + 1.0), catmull_rom(f), catmull_rom(1.0 - f),
                    catmull_rom(2.0 - f)};
    }

    // horizontal pass
    Image tmp(w * s, h, ch);
    for (int r = 0; r < h; ++r)
        for (int x = 0; x < w * s; ++x) {
            const int base = x / s;
            const auto& wt = phase[x % s];
            for (int k = 0; k < ch; ++k) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i)
                    acc += wt[i] * img.at(r, std::clamp(base - 1 + i, 0, w - 1), k);
                tmp.at(r, x, k) = acc;
            }
        }
    // vertical pass
    for (int y = 0; y < h * s; ++y) {
        const int base = y / s;
        const auto& wt = phase[y % s];
        for (int x = 0; x < w * s; ++x)
            for (int k = 0; k < ch; ++k) {
                double acc = 0.0;
                for (int i = 0; i < 4; ++i)
                    acc += wt[i] * tmp.at(std::clamp(base - 1 + i, 0, h - 1), x, k);
                out.at(y, x, k) = acc;
            }
    }
    return out;
}

Image rgb_to_yuv(const Image& img) {
    if (img.channels() != 3)
        throw std::invalid_argument("rgb_to_yuv: expects a 3-channel image");
    Image out(img.width(), img.height(), 3);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const double R = img.at(r, c, 0), G = img.at(r, c, 1), B = img.at(r, c, 2);
            const double Y = 0.299 * R + 0.587 * G + 0.114 * B;
            out.at(r, c, 0) = Y;
            out.at(r, c, 1) = 0.492111 * (B - Y);
            out.at(r, c, 2) = 0.877283 * (R - Y);
        }
    return out;
}

Image yuv_to_rgb(const Image& img) {
    if (img.channels() != 3)
        throw std::invalid_argument("yuv_to_rgb: expects a 3-channel image");
    Image out(img.width(), img.height(), 3);
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const double Y = img.at(r, c, 0), U = img.at(r, c, 1), V = img.at(r, c, 2);
            const double R = Y + V / 0.877283;
            const double B = Y + U / 0.492111;
            const double G = (Y - 0.299 * R - 0.114 * B) / 0.587;
            out.at(r, c, 0) = R;
            out.at(r, c, 1) = G;
            out.at(r, c, 2) = B;
        }
    return out;
}

}  // namespace fracsr
