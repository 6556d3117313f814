#include "fracsr/fracgrad.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracsr {

FracCoeffs gl_coefficients(double alpha, int n) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw std::domain_error("gl_coefficients: alpha must be in (0,1], got " +
                                std::to_string(alpha));
    if (n < 0)
        throw std::domain_error("gl_coefficients: n must be >= 0");

    FracCoeffs out;
    out.alpha = alpha;
    out.taps.resize(static_cast<size_t>(n) + 1);
    out.taps[0] = 1.0;
    for (int j = 1; j <= n; ++j)
        out.taps[j] = (1.0 - (alpha + 1.0) / j) * out.taps[j - 1];
    return out;
}

std::vector<double> frac_derivative_1d(std::span<const double> signal, double alpha, int n) {
    const FracCoeffs w = gl_coefficients(alpha, n);
    const int len = static_cast<int>(signal.size());
    std::vector<double> out(signal.size(), 0.0);
    for (int t = 0; t < len; ++t) {
        double acc = 0.0;
        for (int j = 0; j <= n; ++j)
            acc += w.taps[j] * signal[static_cast<size_t>(std::max(t - j, 0))];
        out[t] = acc;
    }
    return out;
}

EdgeDirection edge_direction_from_gradient(double gx, double gy, double flat_eps) {
    EdgeDirection dir;
    if (std::hypot(gx, gy) < flat_eps) {
        dir.theta_deg = 0.0;
        dir.flat = true;
        return dir;
    }
    const double grad_deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
    double theta = 90.0 + grad_deg;
    theta = std::fmod(theta, 180.0);
    if (theta < 0.0) theta += 180.0;
    dir.theta_deg = theta;
    return dir;
}

EdgeDirection estimate_edge_direction(const Image& patch, double flat_eps) {
    if (patch.channels() != 1 || patch.width() < 3 || patch.height() < 3)
        throw std::invalid_argument("estimate_edge_direction: needs a single-channel patch "
                                    "of at least 3x3 samples");
    const int r = patch.height() / 2, c = patch.width() / 2;
    const double gx = 0.5 * (patch.at(r, c + 1) - patch.at(r, c - 1));
    const double gy = 0.5 * (patch.at(r + 1, c) - patch.at(r - 1, c));
    return edge_direction_from_gradient(gx, gy, flat_eps);
}

double orientation_distance_deg(double a_deg, double b_deg) {
    double d = std::fmod(std::fabs(a_deg - b_deg), 180.0);
    return std::min(d, 180.0 - d);
}

namespace {

bool valid_anchor_parity(MaskKind kind, int dr, int dc) {
    if (kind == MaskKind::center)
        return (dr & 1) && (dc & 1);
    return ((dr + dc) & 1) != 0;
}

// Nearest-direction anchor on the kind's known sublattice. Candidates are
// scanned within max(|dr|,|dc|) <= radius and ranked by angular distance to
// the label, then squared length; exact ties go to the counterclockwise
// side so that symmetric label pairs (0 and 90) land on distinct anchors.
// The lattice cannot represent every label exactly, so adjacent labels may
// share an anchor.
void pick_anchor(MaskKind kind, double label_deg, int radius, int& adr, int& adc) {
    double best_dist = std::numeric_limits<double>::infinity();
    double best_len2 = std::numeric_limits<double>::infinity();
    double best_ccw = 360.0;
    adr = 0;
    adc = 0;
    for (int dr = -radius; dr <= radius; ++dr) {
        for (int dc = -radius; dc <= radius; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (!valid_anchor_parity(kind, dr, dc)) continue;
            // canonical orientation representative: dr > 0, or dr == 0 with dc > 0
            int cdr = dr, cdc = dc;
            if (cdr < 0 || (cdr == 0 && cdc < 0)) {
                cdr = -cdr;
                cdc = -cdc;
            }
            double ang = std::atan2(static_cast<double>(cdr), static_cast<double>(cdc)) *
                         180.0 / std::numbers::pi;
            if (ang >= 180.0) ang -= 180.0;
            const double dist = orientation_distance_deg(ang, label_deg);
            const double len2 = static_cast<double>(dr) * dr + static_cast<double>(dc) * dc;
            const double ccw = std::fmod(ang - label_deg + 360.0, 180.0);
            if (dist < best_dist - 1e-12 ||
                (std::fabs(dist - best_dist) <= 1e-12 && len2 < best_len2 - 1e-12) ||
                (std::fabs(dist - best_dist) <= 1e-12 && std::fabs(len2 - best_len2) <= 1e-12 &&
                 ccw < best_ccw - 1e-12)) {
                best_dist = dist;
                best_len2 = len2;
                best_ccw = ccw;
                adr = cdr;
                adc = cdc;
            }
        }
    }
}

FracMask build_mask(double alpha, int support, int anchor_radius, MaskKind kind,
                    double label_deg) {
    FracMask mask;
    mask.alpha = alpha;
    mask.direction_deg = label_deg;
    mask.kind = kind;

    pick_anchor(kind, label_deg, anchor_radius, mask.anchor_dr, mask.anchor_dc);

    const FracCoeffs w = gl_coefficients(alpha, support - 1);
    mask.stencil.reserve(w.taps.size());
    int max_comp = 0;
    for (int j = 0; j < w.length(); ++j) {
        MaskTap tap;
        tap.dr = (1 - 2 * j) * mask.anchor_dr;
        tap.dc = (1 - 2 * j) * mask.anchor_dc;
        tap.coeff = w.taps[j];
        max_comp = std::max({max_comp, std::abs(tap.dr), std::abs(tap.dc)});
        mask.stencil.push_back(tap);
    }
    mask.support_radius = max_comp;
    mask.deriv_scale =
        0.5 / std::hypot(static_cast<double>(mask.anchor_dr), static_cast<double>(mask.anchor_dc));
    return mask;
}

}  // namespace

MaskBanks build_mask_banks(double alpha, int support, int anchor_radius) {
    if (support < 2)
        throw std::domain_error("build_mask_banks: support must be >= 2");
    MaskBanks banks;
    banks.center.kind = MaskKind::center;
    banks.between.kind = MaskKind::between;
    for (int k = 0; k < 6; ++k)
        banks.center.masks.push_back(
            build_mask(alpha, support, anchor_radius, MaskKind::center, 30.0 * k));
    for (int k = 0; k < 9; ++k)
        banks.between.masks.push_back(
            build_mask(alpha, support, anchor_radius, MaskKind::between, 20.0 * k));
    return banks;
}

const FracMask& select_mask(const EdgeDirection& theta, const MaskBank& bank) {
    if (bank.masks.empty())
        throw std::runtime_error("select_mask: empty mask bank");
    const FracMask* best = &bank.masks.front();
    double best_dist = std::numeric_limits<double>::infinity();
    for (const FracMask& m : bank.masks) {
        const double d = orientation_distance_deg(theta.theta_deg, m.direction_deg);
        if (d < best_dist - 1e-12 ||
            (std::fabs(d - best_dist) <= 1e-12 && m.direction_deg < best->direction_deg)) {
            best = &m;
            best_dist = d;
        }
    }
    return *best;
}

}  // namespace fracsr
