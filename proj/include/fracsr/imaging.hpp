#pragma once

#include <vector>

#include "fracsr/image.hpp"

namespace fracsr {

/// Integer power-of-two upscaling factor; s = 2^levels, levels >= 1.
struct ScaleFactor {
    int s = 2;
    int levels = 1;
};

/// Validates and decomposes a scale factor. Throws std::domain_error when
/// `s` is not a power of two >= 2.
ScaleFactor make_scale(int s);

/// Sampled, unit-sum, separable Gaussian. `taps_1d` holds 2*radius+1
/// weights; the 2-D kernel is their outer product.
struct GaussianKernel {
    double sigma = 0.0;
    int radius = 0;
    std::vector<double> taps_1d;

    double tap2d(int dr, int dc) const { return taps_1d[dr + radius] * taps_1d[dc + radius]; }
};

GaussianKernel gaussian_kernel(double sigma);

/// Replicate-padded 2-D convolution of a single-channel image.
Image convolve(const Image& img, const GaussianKernel& kernel);

/// Convolution with the reflected kernel: the exact adjoint of convolve.
/// Gaussians are symmetric so the result coincides with convolve, but the
/// adjoint is kept as its own operation.
Image convolve_adjoint(const Image& img, const GaussianKernel& kernel);

/// Decimation keeping samples at indices = 0 (mod s), top-left aligned.
/// Dimensions must be divisible by s.
Image downsample(const Image& img, int s);

/// Inserts s-1 zeros between samples along each axis; the exact adjoint
/// of downsample.
Image upsample_zerofill(const Image& img, int s);

/// Blur-then-decimate forward operator of the observation model, and its
/// adjoint (zero-fill upsample then adjoint blur).
Image blur_decimate(const Image& img, const GaussianKernel& kernel, int s);
Image blur_decimate_adjoint(const Image& img, const GaussianKernel& kernel, int s);

/// Catmull-Rom bicubic upscaling by an integer factor, source-grid aligned
/// so that output (s*r, s*c) reproduces input (r, c). Works per channel.
Image bicubic_resize(const Image& img, int s);

/// BT.601 full-range conversions. U and V are signed chroma offsets around
/// zero; round trip is exact to floating-point precision.
Image rgb_to_yuv(const Image& img);
Image yuv_to_rgb(const Image& img);

}  // namespace fracsr
