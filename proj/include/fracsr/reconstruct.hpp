#pragma once

#include <vector>

#include "fracsr/image.hpp"
#include "fracsr/imaging.hpp"

namespace fracsr {

/// Parameters of the energy functional and its accumulated-gradient
/// descent. Defaults follow the published operating point.
struct ReconstructionConfig {
    double lambda = 0.05;   ///< gradient-similarity weight
    double eta = 1.5;       ///< step scaler
    double beta = 0.9;      ///< accumulator decay
    double gamma = 0.01;    ///< accumulator mix-in
    double eps = 1e-8;      ///< numerical floor inside the square roots
    int max_iters = 100;
    double rel_tol = 1e-4;  ///< early stop on relative energy change

    void validate() const;
    bool operator==(const ReconstructionConfig&) const = default;
};

/// Central-difference gradient with replicate-clamped reads, in per-pixel
/// units, and its exact adjoint (negative divergence with border scatter).
GradientField central_gradient(const Image& u);
Image central_gradient_adjoint(const GradientField& g);

/// C(u) = 1/2 ||h*u downsampled - f||^2 + lambda/2 ||grad u - gradU||^2.
/// The fidelity residual lives on the coarse grid.
double energy(const Image& u, const Image& f, const GradientField& gradU,
              const GaussianKernel& h, int s, double lambda);

/// dC/du via the exact adjoints of both residual operators.
Image energy_gradient(const Image& u, const Image& f, const GradientField& gradU,
                      const GaussianKernel& h, int s, double lambda);

/// Running accumulators of the descent: decayed sums of squared gradients
/// and squared updates, both per-pixel grids.
struct OptimizerState {
    Image sum_g2;
    Image sum_dx2;
    Image last_delta;
    int iter = 0;

    OptimizerState() = default;
    OptimizerState(int width, int height)
        : sum_g2(width, height, 1, 0.0),
          sum_dx2(width, height, 1, 0.0),
          last_delta(width, height, 1, 0.0) {}
};

/// One accumulated-gradient update in place:
///   sum[g^2]  <- beta sum[g^2] + gamma g^2
///   delta     <- -eta * sqrt(sum[dx^2]+e) / sqrt(sum[g^2]+e) * g
///   sum[dx^2] <- beta sum[dx^2] + gamma delta^2
///   u         <- u + delta
void accumulated_gradient_step(OptimizerState& state, const Image& g,
                               const ReconstructionConfig& cfg, Image& u);

struct ReconstructResult {
    Image image;                       ///< lowest-energy iterate
    std::vector<double> energy_trace;  ///< C(u_0), C(u_1), ...
    int iterations = 0;
};

/// Runs the descent from u0 and returns the best iterate seen. Throws
/// std::runtime_error naming the iteration if the energy or gradient
/// stops being finite.
ReconstructResult reconstruct(const Image& u0, const Image& f, const GradientField& gradU,
                              const ReconstructionConfig& cfg, const GaussianKernel& h, int s);

}  // namespace fracsr
