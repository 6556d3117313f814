#include "fracsr/reconstruct.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracsr {

void ReconstructionConfig::validate() const {
    if (!(lambda > 0.0)) throw std::domain_error("reconstruct: lambda must be > 0");
    if (!(eta > 0.0)) throw std::domain_error("reconstruct: eta must be > 0");
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("reconstruct: beta must be in (0,1)");
    if (!(gamma > 0.0)) throw std::domain_error("reconstruct: gamma must be > 0");
    if (!(eps > 0.0)) throw std::domain_error("reconstruct: eps must be > 0");
    if (max_iters < 1) throw std::domain_error("reconstruct: max_iters must be >= 1");
}

GradientField central_gradient(const Image& u) {
    const int w = u.width(), h = u.height();
    GradientField g(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            g.gx.at(r, c) = 0.5 * (u.at_clamped(r, c + 1) - u.at_clamped(r, c - 1));
            g.gy.at(r, c) = 0.5 * (u.at_clamped(r + 1, c) - u.at_clamped(r - 1, c));
        }
    return g;
}

Image central_gradient_adjoint(const GradientField& g) {
    const int w = g.gx.width(), h = g.gx.height();
    Image out(w, h, 1, 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double vx = 0.5 * g.gx.at(r, c);
            out.at(r, std::clamp(c + 1, 0, w - 1)) += vx;
            out.at(r, std::clamp(c - 1, 0, w - 1)) -= vx;
            const double vy = 0.5 * g.gy.at(r, c);
            out.at(std::clamp(r + 1, 0, h - 1), c) += vy;
            out.at(std::clamp(r - 1, 0, h - 1), c) -= vy;
        }
    return out;
}

namespace {

void check_dims(const Image& u, const Image& f, const GradientField& gradU, int s,
                const char* op) {
    if (u.width() != f.width() * s || u.height() != f.height() * s)
        throw std::invalid_argument(std::string(op) + ": u is " + std::to_string(u.width()) +
                                    "x" + std::to_string(u.height()) + ", expected " +
                                    std::to_string(f.width() * s) + "x" +
                                    std::to_string(f.height() * s));
    if (!gradU.gx.same_shape(u) || !gradU.gy.same_shape(u))
        throw std::invalid_argument(std::string(op) + ": gradient field shape mismatch");
}

bool all_finite(const Image& img) {
    for (double v : img.samples())
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace

double energy(const Image& u, const Image& f, const GradientField& gradU,
              const GaussianKernel& h, int s, double lambda) {
    check_dims(u, f, gradU, s, "energy");
    const Image down = blur_decimate(u, h, s);
    double fid = 0.0;
    for (int r = 0; r < f.height(); ++r)
        for (int c = 0; c < f.width(); ++c) {
            const double d = down.at(r, c) - f.at(r, c);
            fid += d * d;
        }
    const GradientField g = central_gradient(u);
    double sim = 0.0;
    for (int r = 0; r < u.height(); ++r)
        for (int c = 0; c < u.width(); ++c) {
            const double dx = g.gx.at(r, c) - gradU.gx.at(r, c);
            const double dy = g.gy.at(r, c) - gradU.gy.at(r, c);
            sim += dx * dx + dy * dy;
        }
    return 0.5 * fid + 0.5 * lambda * sim;
}

Image energy_gradient(const Image& u, const Image& f, const GradientField& gradU,
                      const GaussianKernel& h, int s, double lambda) {
    check_dims(u, f, gradU, s, "energy_gradient");
    Image residual = blur_decimate(u, h, s);
    for (int r = 0; r < f.height(); ++r)
        for (int c = 0; c < f.width(); ++c) residual.at(r, c) -= f.at(r, c);
    Image grad = blur_decimate_adjoint(residual, h, s);

    GradientField gdiff = central_gradient(u);
    for (int r = 0; r < u.height(); ++r)
        for (int c = 0; c < u.width(); ++c) {
            gdiff.gx.at(r, c) -= gradU.gx.at(r, c);
            gdiff.gy.at(r, c) -= gradU.gy.at(r, c);
        }
    const Image div = central_gradient_adjoint(gdiff);
    for (int r = 0; r < u.height(); ++r)
        for (int c = 0; c < u.width(); ++c) grad.at(r, c) += lambda * div.at(r, c);
    return grad;
}

void accumulated_gradient_step(OptimizerState& state, const Image& g,
                               const ReconstructionConfig& cfg, Image& u) {
    const int w = u.width(), h = u.height();
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double gv = g.at(r, c);
            const double sg2 = cfg.beta * state.sum_g2.at(r, c) + cfg.gamma * gv * gv;
            const double mean_g = std::sqrt(sg2 + cfg.eps);
            const double mean_du = std::sqrt(state.sum_dx2.at(r, c) + cfg.eps);
            const double delta = -cfg.eta * (mean_du / mean_g) * gv;
            state.sum_g2.at(r, c) = sg2;
            state.sum_dx2.at(r, c) =
                cfg.beta * state.sum_dx2.at(r, c) + cfg.gamma * delta * delta;
            state.last_delta.at(r, c) = delta;
            u.at(r, c) += delta;
        }
    ++state.iter;
}

ReconstructResult reconstruct(const Image& u0, const Image& f, const GradientField& gradU,
                              const ReconstructionConfig& cfg, const GaussianKernel& h, int s) {
    cfg.validate();
    check_dims(u0, f, gradU, s, "reconstruct");

    Image u = u0;
    OptimizerState state(u.width(), u.height());

    ReconstructResult out;
    out.image = u0;
    double prev_energy = energy(u, f, gradU, h, s, cfg.lambda);
    double best_energy = prev_energy;
    out.energy_trace.push_back(prev_energy);

    for (int t = 1; t <= cfg.max_iters; ++t) {
        const Image g = energy_gradient(u, f, gradU, h, s, cfg.lambda);
        if (!all_finite(g))
            throw std::runtime_error("reconstruct: non-finite gradient at iteration " +
                                     std::to_string(t));
        accumulated_gradient_step(state, g, cfg, u);

        const double e = energy(u, f, gradU, h, s, cfg.lambda);
        if (!std::isfinite(e))
            throw std::runtime_error("reconstruct: non-finite energy at iteration " +
                                     std::to_string(t));
        out.energy_trace.push_back(e);
        out.iterations = t;
        if (e < best_energy) {
            best_energy = e;
            out.image = u;
        }
        if (std::fabs(e - prev_energy) / std::max(prev_energy, cfg.eps) < cfg.rel_tol)
            break;
        prev_energy = e;
    }
    return out;
}

}  // namespace fracsr
