#pragma once

#include "fracsr/image.hpp"

namespace fracsr {

/// Root-mean-square error on the 8-bit scale (samples in [0,1] are
/// multiplied by 255 before differencing).
double rmse(const Image& a, const Image& b);

/// Mean local structural similarity over valid 11x11 windows with the
/// canonical Gaussian weighting (sigma 1.5) and stabilizers
/// C1=(0.01*255)^2, C2=(0.03*255)^2.
double ssim(const Image& a, const Image& b);

/// GLCM texture triple from a symmetric, normalized co-occurrence matrix.
struct TextureFeatures {
    double energy = 0.0;       ///< sum of squared entries, in (0,1]
    double homogeneity = 0.0;  ///< sum of P/(1+|i-j|), in (0,1]
    double entropy = 0.0;      ///< -sum P log2 P, normalized by log2(levels^2)
};

TextureFeatures glcm_features(const Image& img, int levels = 8, int offset_dr = 0,
                              int offset_dc = 1);

/// Mean absolute relative error of the three texture features of `test`
/// against those of `ref`.
double texture_similarity(const Image& ref, const Image& test);

/// Everything the CLI reports for one reference/test pair.
struct QualityReport {
    double rmse = 0.0;
    double ssim = 0.0;
    TextureFeatures ref_texture;
    TextureFeatures test_texture;
    double texture_error = 0.0;
};

QualityReport compare_images(const Image& ref, const Image& test);

}  // namespace fracsr
