#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracsr/imaging.hpp"
#include "fracsr/metrics.hpp"
#include "support/synthetic.hpp"

using namespace fracsr;
using testsupport::constant_image;
using testsupport::natural_like;
using testsupport::uniform_noise;

TEST_CASE("rmse") {
    const Image x = natural_like(24, 24, 1);
    SUBCASE("identity and symmetry") {
        CHECK(rmse(x, x) == 0.0);
        const Image y = natural_like(24, 24, 2);
        CHECK(rmse(x, y) == doctest::Approx(rmse(y, x)).epsilon(1e-15));
    }
    SUBCASE("constant offset on the 8-bit scale") {
        Image y = x;
        for (double& v : y.samples()) v += 5.0 / 255.0;
        CHECK(rmse(x, y) == doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(rmse(x, Image(8, 8, 1)), std::invalid_argument);
    }
}

TEST_CASE("ssim") {
    const Image x = natural_like(32, 32, 3);
    SUBCASE("self similarity is one") {
        CHECK(ssim(x, x) == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("symmetry") {
        const Image y = natural_like(32, 32, 4);
        CHECK(ssim(x, y) == doctest::Approx(ssim(y, x)).epsilon(1e-12));
    }
    SUBCASE("inverted mid-contrast image scores poorly") {
        Image inv = x;
        for (double& v : inv.samples()) v = 1.0 - v;
        CHECK(ssim(x, inv) < 0.5);
    }
    SUBCASE("images smaller than the window are rejected") {
        CHECK_THROWS_AS(ssim(Image(8, 8, 1), Image(8, 8, 1)), std::domain_error);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(ssim(x, Image(16, 16, 1)), std::invalid_argument);
    }
}

TEST_CASE("glcm_features") {
    SUBCASE("constant image concentrates the matrix in one cell") {
        const TextureFeatures t = glcm_features(constant_image(12, 12, 0.6));
        CHECK(t.energy == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.homogeneity == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.entropy == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("two-level checkerboard with horizontal offset") {
        Image board(8, 8, 1);
        for (int r = 0; r < 8; ++r)
            for (int c = 0; c < 8; ++c) board.at(r, c) = ((r + c) % 2 == 0) ? 0.0 : 1.0;
        const TextureFeatures t = glcm_features(board, 2, 0, 1);
        CHECK(t.energy == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(t.homogeneity == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(t.entropy == doctest::Approx(0.5).epsilon(1e-12));  // 1 bit of log2(4)
    }
    SUBCASE("matrix properties on a random image") {
        const Image img = uniform_noise(20, 20, 9);
        const TextureFeatures t = glcm_features(img);
        CHECK(t.energy > 0.0);
        CHECK(t.energy <= 1.0);
        CHECK(t.homogeneity > 0.0);
        CHECK(t.homogeneity <= 1.0);
        CHECK(t.entropy >= 0.0);
        CHECK(t.entropy <= 1.0);
    }
    SUBCASE("levels below two are a domain error") {
        CHECK_THROWS_AS(glcm_features(constant_image(4, 4, 0.5), 1), std::domain_error);
    }
}

TEST_CASE("texture_similarity") {
    const Image x = natural_like(48, 48, 5);
    SUBCASE("identity") { CHECK(texture_similarity(x, x) == 0.0); }
    SUBCASE("relative-error formula on a synthetic pair") {
        // degrade so that features differ, then check the formula directly
        const Image y = convolve(x, gaussian_kernel(1.2));
        const TextureFeatures fx = glcm_features(x);
        const TextureFeatures fy = glcm_features(y);
        const double want = (std::fabs(fy.energy - fx.energy) / std::max(fx.energy, 1e-9) +
                             std::fabs(fy.homogeneity - fx.homogeneity) /
                                 std::max(fx.homogeneity, 1e-9) +
                             std::fabs(fy.entropy - fx.entropy) / std::max(fx.entropy, 1e-9)) /
                            3.0;
        CHECK(texture_similarity(x, y) == doctest::Approx(want).epsilon(1e-12));
    }
    SUBCASE("similarity error grows with blur radius") {
        const double e1 = texture_similarity(x, convolve(x, gaussian_kernel(0.6)));
        const double e2 = texture_similarity(x, convolve(x, gaussian_kernel(1.5)));
        const double e3 = texture_similarity(x, convolve(x, gaussian_kernel(3.0)));
        CHECK(e1 < e2);
        CHECK(e2 < e3);
    }
}

TEST_CASE("compare_images bundles all metrics") {
    const Image ref = natural_like(32, 32, 6);
    const Image test = convolve(ref, gaussian_kernel(0.8));
    const QualityReport q = compare_images(ref, test);
    CHECK(q.rmse == doctest::Approx(rmse(ref, test)));
    CHECK(q.ssim == doctest::Approx(ssim(ref, test)));
    CHECK(q.texture_error == doctest::Approx(texture_similarity(ref, test)));
    CHECK(q.ref_texture.energy == doctest::Approx(glcm_features(ref).energy));
}
