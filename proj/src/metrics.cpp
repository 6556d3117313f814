#include "fracsr/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracsr {

namespace {

void check_pair(const Image& a, const Image& b, const char* op) {
    if (a.channels() != 1 || b.channels() != 1)
        throw std::invalid_argument(std::string(op) + ": expects single-channel images");
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument(std::string(op) + ": dimension mismatch " +
                                    std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                                    " vs " + std::to_string(b.width()) + "x" +
                                    std::to_string(b.height()));
}

}  // namespace

double rmse(const Image& a, const Image& b) {
    check_pair(a, b, "rmse");
    double acc = 0.0;
    auto sa = a.samples(), sb = b.samples();
    for (size_t i = 0; i < sa.size(); ++i) {
        const double d = (sa[i] - sb[i]) * 255.0;
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(sa.size()));
}

double ssim(const Image& a, const Image& b) {
    check_pair(a, b, "ssim");
    constexpr int kWindow = 11;
    constexpr int kRadius = kWindow / 2;
    constexpr double kSigma = 1.5;
    if (a.width() < kWindow || a.height() < kWindow)
        throw std::domain_error("ssim: images smaller than the 11x11 window");

    // normalized 11x11 Gaussian weights
    static const std::vector<double> weights = [] {
        std::vector<double> w(kWindow * kWindow);
        double sum = 0.0;
        for (int r = 0; r < kWindow; ++r)
            for (int c = 0; c < kWindow; ++c) {
                const double dr = r - kRadius, dc = c - kRadius;
                const double v = std::exp(-(dr * dr + dc * dc) / (2.0 * kSigma * kSigma));
                w[r * kWindow + c] = v;
                sum += v;
            }
        for (double& v : w) v /= sum;
        return w;
    }();

    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double c2 = (0.03 * 255.0) * (0.03 * 255.0);

    double total = 0.0;
    long count = 0;
    for (int r = kRadius; r < a.height() - kRadius; ++r)
        for (int c = kRadius; c < a.width() - kRadius; ++c) {
            double mx = 0.0, my = 0.0, mxx = 0.0, myy = 0.0, mxy = 0.0;
            for (int i = -kRadius; i <= kRadius; ++i)
                for (int j = -kRadius; j <= kRadius; ++j) {
                    const double w = weights[(i + kRadius) * kWindow + (j + kRadius)];
                    const double x = a.at(r + i, c + j) * 255.0;
                    const double y = b.at(r + i, c + j) * 255.0;
                    mx += w * x;
                    my += w * y;
                    mxx += w * x * x;
                    myy += w * y * y;
                    mxy += w * x * y;
                }
            const double vx = mxx - mx * mx;
            const double vy = myy - my * my;
            const double vxy = mxy - mx * my;
            const double num = (2.0 * mx * my + c1) * (2.0 * vxy + c2);
            const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
            total += num / den;
            ++count;
        }
    return total / static_cast<double>(count);
}

TextureFeatures glcm_features(const Image& img, int levels, int offset_dr, int offset_dc) {
    if (img.channels() != 1)
        throw std::invalid_argument("glcm_features: expects a single-channel image");
    if (levels < 2) throw std::domain_error("glcm_features: levels must be >= 2");

    auto quantize = [&](double v) {
        v = std::clamp(v, 0.0, 1.0);
        return std::min(levels - 1, static_cast<int>(std::floor(v * levels)));
    };

    std::vector<double> p(static_cast<size_t>(levels) * levels, 0.0);
    double total = 0.0;
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            const int rr = r + offset_dr, cc = c + offset_dc;
            if (rr < 0 || rr >= img.height() || cc < 0 || cc >= img.width()) continue;
            const int i = quantize(img.at(r, c));
            const int j = quantize(img.at(rr, cc));
            p[static_cast<size_t>(i) * levels + j] += 1.0;  // symmetric counting
            p[static_cast<size_t>(j) * levels + i] += 1.0;
            total += 2.0;
        }
    if (total == 0.0) throw std::domain_error("glcm_features: image too small for the offset");
    for (double& v : p) v /= total;

    TextureFeatures out;
    for (int i = 0; i < levels; ++i)
        for (int j = 0; j < levels; ++j) {
            const double v = p[static_cast<size_t>(i) * levels + j];
            out.energy += v * v;
            out.homogeneity += v / (1.0 + std::abs(i - j));
            if (v > 0.0) out.entropy -= v * std::log2(v);
        }
    out.entropy /= std::log2(static_cast<double>(levels) * levels);
    return out;
}

double texture_similarity(const Image& ref, const Image& test) {
    check_pair(ref, test, "texture_similarity");
    const TextureFeatures fr = glcm_features(ref);
    const TextureFeatures ft = glcm_features(test);
    auto rel = [](double t, double r) { return std::fabs(t - r) / std::max(std::fabs(r), 1e-9); };
    return (rel(ft.energy, fr.energy) + rel(ft.homogeneity, fr.homogeneity) +
            rel(ft.entropy, fr.entropy)) /
           3.0;
}

QualityReport compare_images(const Image& ref, const Image& test) {
    QualityReport q;
    q.rmse = rmse(ref, test);
    q.ssim = ssim(ref, test);
    q.ref_texture = glcm_features(ref);
    q.test_texture = glcm_features(test);
    q.texture_error = texture_similarity(ref, test);
    return q;
}

}  // namespace fracsr
