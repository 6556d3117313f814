#include "fracsr/pyramid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracsr/reconstruct.hpp"

namespace fracsr {

namespace {

constexpr double kFlatEps = 1e-9;

// Clamped read restricted to the even-even (original) lattice.
double sample_center_known(const Image& fine, int r, int c) {
    r = std::clamp(r, 0, fine.height() - 1);
    c = std::clamp(c, 0, fine.width() - 1);
    r -= r & 1;
    c -= c & 1;
    return fine.at(r, c);
}

// Clamped read restricted to the stage-two known lattice (even coordinate
// sum: originals plus filled centers).
double sample_between_known(const Image& fine, int r, int c) {
    r = std::clamp(r, 0, fine.height() - 1);
    c = std::clamp(c, 0, fine.width() - 1);
    if ((r + c) & 1) c = (c >= 1) ? c - 1 : c + 1;
    return fine.at(r, c);
}

using Sampler = double (*)(const Image&, int, int);

struct SiteValue {
    double value = 0.0;
    double gx = 0.0;
    double gy = 0.0;
};

// Applies one directional mask at an inserted site. The value is the
// midpoint of the two anchor samples plus the fractional enrichment (the
// mask response minus its first-order counterpart on the same line), with
// the sign that keeps the result nearest the local mean. The reported
// gradient carries the fractional directional derivative along the mask
// line and keeps the stencil gradient's component across it.
SiteValue apply_mask(const Image& fine, int r, int c, const FracMask& mask, Sampler sample,
                     double site_gx, double site_gy, double local_mean) {
    const double fwd = sample(fine, r + mask.anchor_dr, c + mask.anchor_dc);
    const double bwd = sample(fine, r - mask.anchor_dr, c - mask.anchor_dc);
    const double base = 0.5 * (fwd + bwd);

    double raw = 0.0;
    for (const MaskTap& tap : mask.stencil)
        raw += tap.coeff * sample(fine, r + tap.dr, c + tap.dc);
    const double first_order = fwd - bwd;
    const double correction = raw - first_order;

    const double up = base + correction;
    const double dn = base - correction;
    SiteValue out;
    out.value = (std::fabs(up - local_mean) <= std::fabs(dn - local_mean)) ? up : dn;

    const double d = raw * mask.deriv_scale;
    const double len = std::hypot(static_cast<double>(mask.anchor_dr),
                                  static_cast<double>(mask.anchor_dc));
    const double tx = mask.anchor_dc / len, ty = mask.anchor_dr / len;
    const double nx = -ty, ny = tx;
    const double normal = site_gx * nx + site_gy * ny;
    out.gx = d * tx + normal * nx;
    out.gy = d * ty + normal * ny;
    return out;
}

SiteValue interpolate_site(const Image& fine, int r, int c, const MaskBank& bank,
                           Sampler sample, double gx, double gy, double local_mean) {
    const EdgeDirection dir = edge_direction_from_gradient(gx, gy, kFlatEps);
    if (!dir.flat)
        return apply_mask(fine, r, c, select_mask(dir, bank), sample, gx, gy, local_mean);

    // flat patch: orientation undefined, average the two axis-labelled masks
    const SiteValue a = apply_mask(fine, r, c, select_mask(EdgeDirection{0.0, false}, bank),
                                   sample, gx, gy, local_mean);
    const SiteValue b = apply_mask(fine, r, c, select_mask(EdgeDirection{90.0, false}, bank),
                                   sample, gx, gy, local_mean);
    return SiteValue{0.5 * (a.value + b.value), 0.5 * (a.gx + b.gx), 0.5 * (a.gy + b.gy)};
}

}  // namespace

InterpolationResult interpolate_level(const Image& known, double alpha, const MaskBanks& banks) {
    if (known.channels() != 1)
        throw std::invalid_argument("interpolate_level: expects a single-channel image");
    if (banks.center.masks.empty() || banks.center.masks.front().alpha != alpha)
        throw std::invalid_argument("interpolate_level: mask banks were built for a "
                                    "different alpha");
    const int fw = known.width() * 2, fh = known.height() * 2;

    InterpolationResult res;
    res.image = Image(fw, fh, 1, 0.0);
    res.grad = GradientField(fw, fh);
    Image& fine = res.image;

    for (int r = 0; r < known.height(); ++r)
        for (int c = 0; c < known.width(); ++c)
            fine.at(2 * r, 2 * c) = known.at(r, c);

    // pass one: center sites, diagonal known neighborhood
    for (int r = 1; r < fh; r += 2)
        for (int c = 1; c < fw; c += 2) {
            const double tl = sample_center_known(fine, r - 1, c - 1);
            const double tr = sample_center_known(fine, r - 1, c + 1);
            const double bl = sample_center_known(fine, r + 1, c - 1);
            const double br = sample_center_known(fine, r + 1, c + 1);
            const double gx = 0.25 * ((tr + br) - (tl + bl));
            const double gy = 0.25 * ((bl + br) - (tl + tr));
            const double mean = 0.25 * (tl + tr + bl + br);
            const SiteValue site = interpolate_site(fine, r, c, banks.center,
                                                    &sample_center_known, gx, gy, mean);
            fine.at(r, c) = site.value;
            res.grad.gx.at(r, c) = site.gx;
            res.grad.gy.at(r, c) = site.gy;
        }

    // pass two: between sites, axial neighbors on the augmented lattice
    for (int r = 0; r < fh; ++r)
        for (int c = (r % 2 == 0) ? 1 : 0; c < fw; c += 2) {
            const double left = sample_between_known(fine, r, c - 1);
            const double right = sample_between_known(fine, r, c + 1);
            const double up = sample_between_known(fine, r - 1, c);
            const double down = sample_between_known(fine, r + 1, c);
            const double gx = 0.5 * (right - left);
            const double gy = 0.5 * (down - up);
            const double mean = 0.25 * (left + right + up + down);
            const SiteValue site = interpolate_site(fine, r, c, banks.between,
                                                    &sample_between_known, gx, gy, mean);
            fine.at(r, c) = site.value;
            res.grad.gx.at(r, c) = site.gx;
            res.grad.gy.at(r, c) = site.gy;
        }

    return res;
}

GradientField complete_gradient(const InterpolationResult& res) {
    GradientField out = res.grad;
    const GradientField central = central_gradient(res.image);
    for (int r = 0; r < res.image.height(); r += 2)
        for (int c = 0; c < res.image.width(); c += 2) {
            out.gx.at(r, c) = central.gx.at(r, c);
            out.gy.at(r, c) = central.gy.at(r, c);
        }
    return out;
}

namespace {

double l2_norm_diff(const Image& a, const Image& b) {
    double acc = 0.0;
    auto sa = a.samples(), sb = b.samples();
    for (size_t i = 0; i < sa.size(); ++i) {
        const double d = sa[i] - sb[i];
        acc += d * d;
    }
    return acc;
}

}  // namespace

AlphaSearchResult optimize_alpha(const Image& f, std::span<const double> grid,
                                 const GaussianKernel& h, int support) {
    if (grid.empty())
        throw std::invalid_argument("optimize_alpha: empty alpha grid");
    for (double a : grid)
        if (!(a > 0.0) || a > 1.0)
            throw std::invalid_argument("optimize_alpha: alpha " + std::to_string(a) +
                                        " outside (0,1]");

    const GradientField grad_f = central_gradient(f);

    AlphaSearchResult out;
    bool have_best = false;
    for (double alpha : grid) {
        const MaskBanks banks = build_mask_banks(alpha, support);
        InterpolationResult res = interpolate_level(f, alpha, banks);
        GradientField gradU = complete_gradient(res);

        const double fid = std::sqrt(l2_norm_diff(blur_decimate(res.image, h, 2), f));
        const double grad_term =
            std::sqrt(l2_norm_diff(blur_decimate(gradU.gx, h, 2), grad_f.gx) +
                      l2_norm_diff(blur_decimate(gradU.gy, h, 2), grad_f.gy));
        const double J = fid + grad_term;
        out.trace.emplace_back(alpha, J);

        // ascending grids break ties toward the larger alpha
        if (!have_best || J <= out.criterion) {
            have_best = true;
            out.criterion = J;
            out.alpha_star = alpha;
            out.winner = std::move(res);
            out.winner_gradU = std::move(gradU);
        }
    }
    return out;
}

Image super_resolve(const Image& f, ScaleFactor scale, const PipelineConfig& cfg,
                    SuperResolveReport* report) {
    if (f.channels() != 1)
        throw std::invalid_argument("super_resolve: expects a single-channel image");
    cfg.validate();
    const GaussianKernel h = gaussian_kernel(cfg.sigma);

    Image current = f;
    for (int level = 0; level < scale.levels; ++level) {
        LevelTrace trace;
        InterpolationResult interp;
        GradientField gradU;
        if (cfg.alpha_mode == AlphaMode::fixed) {
            const MaskBanks banks = build_mask_banks(cfg.alpha_value, cfg.support);
            interp = interpolate_level(current, cfg.alpha_value, banks);
            gradU = complete_gradient(interp);
            trace.alpha_star = cfg.alpha_value;
        } else {
            AlphaSearchResult asr = optimize_alpha(current, cfg.alpha_grid, h, cfg.support);
            trace.alpha_star = asr.alpha_star;
            trace.alpha_trace = std::move(asr.trace);
            interp = std::move(asr.winner);
            gradU = std::move(asr.winner_gradU);
        }

        ReconstructResult rec =
            reconstruct(interp.image, current, gradU, cfg.reconstruction, h, 2);
        trace.energy_trace = std::move(rec.energy_trace);
        trace.iterations = rec.iterations;
        current = std::move(rec.image);
        if (report) report->levels.push_back(std::move(trace));
    }
    return current;
}

Image upscale(const Image& input, ScaleFactor scale, const PipelineConfig& cfg,
              SuperResolveReport* report) {
    if (input.channels() == 1) return super_resolve(input, scale, cfg, report);

    if (cfg.color_mode == ColorMode::grayscale) {
        const Image y = rgb_to_yuv(input).channel(0);
        return super_resolve(y, scale, cfg, report);
    }

    // luma path: sharpen Y, carry chroma with bicubic
    const Image yuv = rgb_to_yuv(input);
    const Image y_hr = super_resolve(yuv.channel(0), scale, cfg, report);
    const Image u_hr = bicubic_resize(yuv.channel(1), scale.s);
    const Image v_hr = bicubic_resize(yuv.channel(2), scale.s);
    Image merged(y_hr.width(), y_hr.height(), 3);
    merged.set_channel(0, y_hr);
    merged.set_channel(1, u_hr);
    merged.set_channel(2, v_hr);
    return yuv_to_rgb(merged);
}

}  // namespace fracsr
