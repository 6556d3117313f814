#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <stdexcept>
#include <vector>

#include "fracsr/config.hpp"
#include "fracsr/fracgrad.hpp"
#include "fracsr/imaging.hpp"
#include "fracsr/metrics.hpp"
#include "fracsr/pyramid.hpp"

namespace py = pybind11;
using namespace fracsr;

namespace {

Image array_to_image(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() == 2) {
        Image img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)), 1);
        auto r = arr.unchecked<2>();
        for (py::ssize_t y = 0; y < arr.shape(0); ++y)
            for (py::ssize_t x = 0; x < arr.shape(1); ++x)
                img.at(static_cast<int>(y), static_cast<int>(x)) = r(y, x);
        return img;
    }
    if (arr.ndim() == 3 && arr.shape(2) == 3) {
        Image img(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)), 3);
        auto r = arr.unchecked<3>();
        for (py::ssize_t y = 0; y < arr.shape(0); ++y)
            for (py::ssize_t x = 0; x < arr.shape(1); ++x)
                for (int k = 0; k < 3; ++k)
                    img.at(static_cast<int>(y), static_cast<int>(x), k) = r(y, x, k);
        return img;
    }
    throw std::invalid_argument("expected an array of shape (H, W) or (H, W, 3)");
}

py::array_t<double> image_to_array(const Image& img) {
    if (img.channels() == 1) {
        py::array_t<double> arr({img.height(), img.width()});
        auto w = arr.mutable_unchecked<2>();
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) w(y, x) = img.at(y, x);
        return arr;
    }
    py::array_t<double> arr({img.height(), img.width(), img.channels()});
    auto w = arr.mutable_unchecked<3>();
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int k = 0; k < img.channels(); ++k) w(y, x, k) = img.at(y, x, k);
    return arr;
}

py::array_t<double> vector_to_array(const std::vector<double>& v) {
    const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(v.size())};
    py::array_t<double> arr(shape);
    std::memcpy(arr.mutable_data(), v.data(), v.size() * sizeof(double));
    return arr;
}

PipelineConfig make_config(int scale, const py::object& alpha, double sigma, int support,
                           double lambda, double eta, double beta, double gamma, int max_iters,
                           const std::vector<double>& alpha_grid) {
    PipelineConfig cfg;
    cfg.scale = scale;
    if (alpha.is_none() || (py::isinstance<py::str>(alpha) && alpha.cast<std::string>() == "auto")) {
        cfg.alpha_mode = AlphaMode::automatic;
    } else {
        cfg.alpha_mode = AlphaMode::fixed;
        cfg.alpha_value = alpha.cast<double>();
    }
    if (!alpha_grid.empty()) cfg.alpha_grid = alpha_grid;
    cfg.sigma = sigma;
    cfg.support = support;
    cfg.reconstruction.lambda = lambda;
    cfg.reconstruction.eta = eta;
    cfg.reconstruction.beta = beta;
    cfg.reconstruction.gamma = gamma;
    cfg.reconstruction.max_iters = max_iters;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_fracsr, m) {
    m.doc() = "Fractional-order gradient super-resolution core";

    m.def(
        "gl_coefficients",
        [](double alpha, int n) {
            return vector_to_array(gl_coefficients(alpha, n).taps);
        },
        py::arg("alpha"), py::arg("n"),
        "Grunwald-Letnikov recurrence taps omega_0..omega_n for order alpha in (0,1].");

    m.def(
        "frac_derivative_1d",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& signal,
           double alpha, int n) {
            if (signal.ndim() != 1) throw std::invalid_argument("signal must be 1-D");
            std::vector<double> sig(signal.data(), signal.data() + signal.shape(0));
            return vector_to_array(frac_derivative_1d(sig, alpha, n));
        },
        py::arg("signal"), py::arg("alpha"), py::arg("n"),
        "Backward fractional difference with replicate-edge padding.");

    m.def(
        "upscale",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image, int scale,
           const py::object& alpha, double sigma, int support, double lambda, double eta,
           double beta, double gamma, int max_iters, const std::vector<double>& alpha_grid) {
            const PipelineConfig cfg = make_config(scale, alpha, sigma, support, lambda, eta,
                                                   beta, gamma, max_iters, alpha_grid);
            return image_to_array(upscale(array_to_image(image), make_scale(scale), cfg));
        },
        py::arg("image"), py::arg("scale"), py::arg("alpha") = py::none(),
        py::arg("sigma") = 0.55, py::arg("support") = 3, py::arg("lambda_") = 0.05,
        py::arg("eta") = 1.5, py::arg("beta") = 0.9, py::arg("gamma") = 0.01,
        py::arg("max_iters") = 100, py::arg("alpha_grid") = std::vector<double>{},
        "Run the full pipeline on a (H,W) or (H,W,3) array in [0,1]; alpha is 'auto' or a "
        "fixed order in (0,1].");

    m.def(
        "optimize_alpha",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image,
           const std::vector<double>& grid, double sigma, int support) {
            std::vector<double> g = grid;
            if (g.empty()) g = PipelineConfig{}.alpha_grid;
            const AlphaSearchResult res =
                optimize_alpha(array_to_image(image), g, gaussian_kernel(sigma), support);
            py::dict out;
            out["alpha_star"] = res.alpha_star;
            out["criterion"] = res.criterion;
            out["trace"] = res.trace;
            return out;
        },
        py::arg("image"), py::arg("grid") = std::vector<double>{}, py::arg("sigma") = 0.55,
        py::arg("support") = 3,
        "Grid-search the fractional order for one x2 step; returns alpha_star, criterion and "
        "the (alpha, J) trace.");

    m.def(
        "bicubic_resize",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& image, int s) {
            return image_to_array(bicubic_resize(array_to_image(image), s));
        },
        py::arg("image"), py::arg("scale"), "Catmull-Rom bicubic upscaling baseline.");

    m.def(
        "rmse",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
            return rmse(array_to_image(a), array_to_image(b));
        },
        py::arg("ref"), py::arg("test"), "Root-mean-square error on the 8-bit scale.");

    m.def(
        "ssim",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
            return ssim(array_to_image(a), array_to_image(b));
        },
        py::arg("ref"), py::arg("test"), "Mean structural similarity over 11x11 windows.");

    m.def(
        "glcm_features",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& img, int levels,
           std::pair<int, int> offset) {
            const TextureFeatures t =
                glcm_features(array_to_image(img), levels, offset.first, offset.second);
            py::dict out;
            out["energy"] = t.energy;
            out["homogeneity"] = t.homogeneity;
            out["entropy"] = t.entropy;
            return out;
        },
        py::arg("image"), py::arg("levels") = 8, py::arg("offset") = std::pair<int, int>{0, 1},
        "GLCM texture features from a symmetric normalized co-occurrence matrix.");

    m.def(
        "texture_similarity",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& ref,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& test) {
            return texture_similarity(array_to_image(ref), array_to_image(test));
        },
        py::arg("ref"), py::arg("test"),
        "Mean absolute relative error of the GLCM feature triple.");

    m.attr("__version__") = "0.1.0";
}
