#pragma once

#include <span>
#include <utility>
#include <vector>

#include "fracsr/config.hpp"
#include "fracsr/fracgrad.hpp"
#include "fracsr/image.hpp"
#include "fracsr/imaging.hpp"

namespace fracsr {

/// One rung of the x2 pyramid: the image known so far on the 2^index
/// lattice. Sites with both coordinates even carry samples of the previous
/// level and are never rewritten by interpolation.
struct PyramidLevel {
    int index = 0;
    Image known;

    static bool original_site(int r, int c) { return (r % 2 == 0) && (c % 2 == 0); }
};

/// Output of one x2 interpolation pass: the filled fine image and the
/// directional fractional gradient at inserted sites (zero at originals,
/// stored as per-pixel vectors along each site's mask direction).
struct InterpolationResult {
    Image image;
    GradientField grad;
};

/// Fills the x2 grid in two passes. Pass one fills center sites (both
/// coordinates odd) from the diagonal known lattice with the 6-mask bank;
/// pass two fills between sites (exactly one odd coordinate) from the
/// augmented quincunx lattice with the 9-mask bank. Inserted values are
/// the midpoint of the two anchor samples plus a signed fractional
/// correction; original samples pass through untouched.
InterpolationResult interpolate_level(const Image& known, double alpha, const MaskBanks& banks);

inline InterpolationResult interpolate_level(const PyramidLevel& level, double alpha,
                                             const MaskBanks& banks) {
    return interpolate_level(level.known, alpha, banks);
}

/// Gradient target for reconstruction: mask-derived vectors at inserted
/// sites, central differences of the interpolated image at original sites.
GradientField complete_gradient(const InterpolationResult& res);

/// Grid search over alpha for one x2 step.
struct AlphaSearchResult {
    double alpha_star = 1.0;
    double criterion = 0.0;
    std::vector<std::pair<double, double>> trace;  ///< (alpha, J) over the grid
    InterpolationResult winner;
    GradientField winner_gradU;
};

/// J(alpha) = ||u*h down - f||_2 + ||grad u*h down - grad f||_2 evaluated
/// per grid point; the minimizer wins, ties going to the larger alpha.
AlphaSearchResult optimize_alpha(const Image& f, std::span<const double> grid,
                                 const GaussianKernel& h, int support);

/// Per-level diagnostics of a full run.
struct LevelTrace {
    double alpha_star = 1.0;
    std::vector<std::pair<double, double>> alpha_trace;
    std::vector<double> energy_trace;
    int iterations = 0;
};

struct SuperResolveReport {
    std::vector<LevelTrace> levels;
};

/// Full pipeline on a single-channel image: per x2 level, pick alpha,
/// interpolate, then descend the reconstruction energy. Output is exactly
/// s times the input in each dimension.
Image super_resolve(const Image& f, ScaleFactor scale, const PipelineConfig& cfg,
                    SuperResolveReport* report = nullptr);

/// Color-aware entry point: 3-channel input is processed on the luma
/// channel with chroma upscaled bicubically, per the configured color mode.
Image upscale(const Image& input, ScaleFactor scale, const PipelineConfig& cfg,
              SuperResolveReport* report = nullptr);

}  // namespace fracsr
