#pragma once

#include <span>
#include <vector>

#include "fracsr/image.hpp"

namespace fracsr {

/// Grunwald-Letnikov coefficients omega_j for order alpha in (0,1]:
///   omega_0 = 1,  omega_j = (1 - (alpha+1)/j) * omega_{j-1}.
/// For alpha = 1 the sequence is [1, -1, 0, 0, ...] (plain backward
/// difference); for alpha < 1 all trailing taps are negative with
/// non-increasing magnitude.
struct FracCoeffs {
    double alpha = 1.0;
    std::vector<double> taps;

    int length() const { return static_cast<int>(taps.size()); }
};

/// n+1 recurrence taps. Throws std::domain_error unless 0 < alpha <= 1.
FracCoeffs gl_coefficients(double alpha, int n);

/// Backward fractional difference of a 1-D signal with replicate-edge
/// padding: out[t] = sum_j omega_j * signal[max(t-j, 0)].
std::vector<double> frac_derivative_1d(std::span<const double> signal, double alpha, int n);

/// Edge orientation in degrees, folded into [0,180). `flat` marks a
/// numerically zero gradient, where orientation is undefined and callers
/// fall back to the isotropic mask pair.
struct EdgeDirection {
    double theta_deg = 0.0;
    bool flat = false;
};

/// theta = 90 + atan2(gy, gx), folded modulo 180. Gradient components are
/// in per-pixel units, x along columns and y along rows.
EdgeDirection edge_direction_from_gradient(double gx, double gy, double flat_eps = 1e-9);

/// Edge direction at the middle of a patch of known samples (at least 3x3)
/// from central differences. The pipeline uses site-specific stencils on
/// the known sublattices; this is the plain full-lattice form.
EdgeDirection estimate_edge_direction(const Image& patch, double flat_eps = 1e-9);

/// Direction-labelled fractional difference stencil.
///
/// The two inserted-pixel classes of a x2 lattice refinement see different
/// known sublattices, so masks come in two kinds:
///   - center:  site has both coordinates odd, known pixels at both-odd offsets
///   - between: site has exactly one odd coordinate, known pixels at odd-sum offsets
/// Each mask walks a straight line through the site: the anchor offset `a`
/// is the nearest known pixel whose direction best matches the label, and
/// tap j carries omega_j at offset (1-2j)*a. The site sits midway between
/// the j=0 and j=1 taps.
enum class MaskKind { center, between };

struct MaskTap {
    int dr = 0;
    int dc = 0;
    double coeff = 0.0;
};

struct FracMask {
    double alpha = 1.0;
    double direction_deg = 0.0;  ///< quantized label, [0,180)
    MaskKind kind = MaskKind::center;
    std::vector<MaskTap> stencil;
    int support_radius = 0;      ///< max |offset| component over all taps
    int anchor_dr = 0;           ///< j=0 tap offset (nearest known along +label)
    int anchor_dc = 0;
    double deriv_scale = 1.0;    ///< converts raw response to per-pixel derivative
};

struct MaskBank {
    MaskKind kind = MaskKind::center;
    std::vector<FracMask> masks;
};

struct MaskBanks {
    MaskBank center;   ///< 6 masks, labels 0,30,...,150
    MaskBank between;  ///< 9 masks, labels 0,20,...,160
};

/// Builds both direction banks for one alpha. `support` is the tap count
/// per mask (>= 2); `anchor_radius` bounds the lattice search for anchors.
MaskBanks build_mask_banks(double alpha, int support, int anchor_radius = 1);

/// Angular distance between two orientations, folded to [0,90].
double orientation_distance_deg(double a_deg, double b_deg);

/// Bank mask whose label is nearest to theta modulo 180; ties go to the
/// smaller label. Throws std::runtime_error on an empty bank.
const FracMask& select_mask(const EdgeDirection& theta, const MaskBank& bank);

}  // namespace fracsr
