#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fracsr/config.hpp"
#include "fracsr/image_io.hpp"
#include "fracsr/imaging.hpp"
#include "fracsr/metrics.hpp"
#include "fracsr/pyramid.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

fracsr::Image to_gray(const fracsr::Image& img) {
    return img.channels() == 1 ? img : fracsr::rgb_to_yuv(img).channel(0);
}

bool is_power_of_two(int s) { return s >= 2 && (s & (s - 1)) == 0; }

// blur + decimate once per pyramid level, mirroring the forward model
fracsr::Image degrade(const fracsr::Image& hr, int scale, double sigma) {
    const fracsr::GaussianKernel h = fracsr::gaussian_kernel(sigma);
    fracsr::Image current = hr;
    for (int s = scale; s > 1; s >>= 1)
        current = fracsr::blur_decimate(current, h, 2);
    return current;
}

void write_trace(const std::string& path, const fracsr::SuperResolveReport& report) {
    std::ofstream out(path);
    if (!out) throw fracsr::io_error("cannot write trace file " + path);
    for (size_t i = 0; i < report.levels.size(); ++i) {
        const fracsr::LevelTrace& lt = report.levels[i];
        out << "level " << i << " alpha_star=" << lt.alpha_star << "\n";
        for (const auto& [alpha, J] : lt.alpha_trace)
            out << "  alpha " << alpha << " J=" << J << "\n";
        for (size_t t = 0; t < lt.energy_trace.size(); ++t)
            out << "  iter " << t << " energy=" << lt.energy_trace[t] << "\n";
    }
}

struct UpscaleArgs {
    std::string input, output, config_path, trace_path, alpha;
    int scale = 0;
};

int run_upscale(const UpscaleArgs& args) {
    if (!is_power_of_two(args.scale)) {
        std::cerr << "error: --scale must be a power of two >= 2, got " << args.scale << "\n";
        return kExitUsage;
    }
    fracsr::PipelineConfig cfg;
    try {
        if (!args.config_path.empty()) cfg = fracsr::PipelineConfig::load(args.config_path);
        cfg.scale = args.scale;
        if (!args.alpha.empty()) {  // flag overrides the file value only when given
            if (args.alpha == "auto") {
                cfg.alpha_mode = fracsr::AlphaMode::automatic;
            } else {
                cfg.alpha_mode = fracsr::AlphaMode::fixed;
                cfg.alpha_value = std::stod(args.alpha);
            }
        }
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const fracsr::Image input = fracsr::load_image(args.input);
        fracsr::SuperResolveReport report;
        const fracsr::Image output =
            fracsr::upscale(input, fracsr::make_scale(cfg.scale), cfg, &report);
        fracsr::save_image(output, args.output);
        if (!args.trace_path.empty()) write_trace(args.trace_path, report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

struct MetricsArgs {
    std::string ref, test;
    bool want_rmse = false, want_ssim = false, want_texture = false, as_json = false;
};

int run_metrics(const MetricsArgs& args) {
    const bool all = !args.want_rmse && !args.want_ssim && !args.want_texture;
    try {
        const fracsr::Image ref = to_gray(fracsr::load_image(args.ref));
        const fracsr::Image test = to_gray(fracsr::load_image(args.test));
        if (ref.width() != test.width() || ref.height() != test.height()) {
            std::cerr << "error: dimension mismatch: ref is " << ref.width() << "x"
                      << ref.height() << ", test is " << test.width() << "x" << test.height()
                      << "\n";
            return kExitRuntime;
        }

        json out;
        std::ostringstream text;
        if (all || args.want_rmse) {
            const double v = fracsr::rmse(ref, test);
            out["rmse"] = v;
            text << "rmse: " << v << "\n";
        }
        if (all || args.want_ssim) {
            const double v = fracsr::ssim(ref, test);
            out["ssim"] = v;
            text << "ssim: " << v << "\n";
        }
        if (all || args.want_texture) {
            const fracsr::TextureFeatures fr = fracsr::glcm_features(ref);
            const fracsr::TextureFeatures ft = fracsr::glcm_features(test);
            const double sim = fracsr::texture_similarity(ref, test);
            out["texture"]["ref"] = {{"energy", fr.energy},
                                     {"homogeneity", fr.homogeneity},
                                     {"entropy", fr.entropy}};
            out["texture"]["test"] = {{"energy", ft.energy},
                                      {"homogeneity", ft.homogeneity},
                                      {"entropy", ft.entropy}};
            out["texture_similarity"] = sim;
            text << "texture ref: energy=" << fr.energy << " homogeneity=" << fr.homogeneity
                 << " entropy=" << fr.entropy << "\n";
            text << "texture test: energy=" << ft.energy << " homogeneity=" << ft.homogeneity
                 << " entropy=" << ft.entropy << "\n";
            text << "texture_similarity: " << sim << "\n";
        }
        if (args.as_json)
            std::cout << out.dump(2) << "\n";
        else
            std::cout << text.str();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

struct BenchArgs {
    std::string hr_dir, out_csv = "report.csv", methods = "ours,bicubic", config_path;
    int scale = 0;
};

fracsr::Image crop_to_multiple(const fracsr::Image& img, int s) {
    const int w = (img.width() / s) * s, h = (img.height() / s) * s;
    fracsr::Image out(w, h, 1);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) out.at(r, c) = img.at(r, c);
    return out;
}

int run_bench(const BenchArgs& args) {
    if (!is_power_of_two(args.scale)) {
        std::cerr << "error: --scale must be a power of two >= 2, got " << args.scale << "\n";
        return kExitUsage;
    }
    fracsr::PipelineConfig cfg;
    try {
        if (!args.config_path.empty()) cfg = fracsr::PipelineConfig::load(args.config_path);
        cfg.scale = args.scale;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    }

    std::vector<std::string> methods;
    {
        std::istringstream ms(args.methods);
        std::string item;
        while (std::getline(ms, item, ',')) {
            if (item != "ours" && item != "bicubic") {
                std::cerr << "error: unknown method '" << item << "'\n";
                return kExitUsage;
            }
            methods.push_back(item);
        }
    }

    std::vector<fs::path> files;
    try {
        for (const auto& entry : fs::directory_iterator(args.hr_dir)) {
            const std::string ext = entry.path().extension().string();
            if (ext == ".png" || ext == ".pgm" || ext == ".ppm") files.push_back(entry.path());
        }
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "error: no images found in " << args.hr_dir << "\n";
        return kExitRuntime;
    }

    std::ofstream csv(args.out_csv);
    if (!csv) {
        std::cerr << "error: cannot write " << args.out_csv << "\n";
        return kExitRuntime;
    }
    csv << "image,method,scale,rmse,ssim,tex_energy,tex_homogeneity,tex_entropy,"
           "alpha_per_level,wall_ms\n";

    try {
        for (const fs::path& file : files) {
            const fracsr::Image hr = crop_to_multiple(to_gray(fracsr::load_image(file.string())),
                                                      args.scale);
            if (hr.width() < 11 * 2 || hr.height() < 11 * 2) {
                std::cerr << "skipping " << file.filename().string() << ": too small\n";
                continue;
            }
            const fracsr::Image lr = degrade(hr, args.scale, cfg.sigma);

            for (const std::string& method : methods) {
                fracsr::SuperResolveReport report;
                const auto t0 = std::chrono::steady_clock::now();
                fracsr::Image restored =
                    (method == "ours")
                        ? fracsr::super_resolve(lr, fracsr::make_scale(args.scale), cfg, &report)
                        : fracsr::bicubic_resize(lr, args.scale);
                const auto t1 = std::chrono::steady_clock::now();
                const double wall_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();

                const fracsr::QualityReport q = fracsr::compare_images(hr, restored);
                std::string alphas = "-";
                if (method == "ours") {
                    std::ostringstream as;
                    for (size_t i = 0; i < report.levels.size(); ++i)
                        as << (i ? "|" : "") << report.levels[i].alpha_star;
                    alphas = as.str();
                }
                csv << file.stem().string() << "," << method << "," << args.scale << ","
                    << q.rmse << "," << q.ssim << "," << q.test_texture.energy << ","
                    << q.test_texture.homogeneity << "," << q.test_texture.entropy << ","
                    << alphas << "," << wall_ms << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-image super-resolution via self-optimizing fractional-order "
                 "gradient interpolation and reconstruction"};
    app.require_subcommand(1);

    UpscaleArgs up;
    CLI::App* upscale = app.add_subcommand("upscale", "Upscale an image by a power of two");
    upscale->add_option("--input", up.input, "input image (PNG/PGM/PPM)")->required();
    upscale->add_option("--output", up.output, "output image path")->required();
    upscale->add_option("--scale", up.scale, "scale factor (2, 4, 8, ...)")->required();
    upscale->add_option("--alpha", up.alpha, "'auto' or a fixed order in (0,1]");
    upscale->add_option("--config", up.config_path, "key=value config file");
    upscale->add_option("--trace", up.trace_path, "write per-level diagnostics to this file");

    MetricsArgs me;
    CLI::App* metrics = app.add_subcommand("metrics", "Compare a test image against a reference");
    metrics->add_option("--ref", me.ref, "reference image")->required();
    metrics->add_option("--test", me.test, "test image")->required();
    metrics->add_flag("--rmse", me.want_rmse, "report RMSE");
    metrics->add_flag("--ssim", me.want_ssim, "report SSIM");
    metrics->add_flag("--texture", me.want_texture, "report GLCM texture features");
    metrics->add_flag("--json", me.as_json, "emit a JSON object");

    BenchArgs be;
    CLI::App* bench = app.add_subcommand("bench", "Degrade-then-restore benchmark over a directory");
    bench->add_option("--hr-dir", be.hr_dir, "directory of high-resolution images")->required();
    bench->add_option("--scale", be.scale, "scale factor (2, 4, 8, ...)")->required();
    bench->add_option("--methods", be.methods, "comma list of ours,bicubic");
    bench->add_option("--out", be.out_csv, "CSV report path");
    bench->add_option("--config", be.config_path, "key=value config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (upscale->parsed()) return run_upscale(up);
    if (metrics->parsed()) return run_metrics(me);
    if (bench->parsed()) return run_bench(be);
    return kExitUsage;
}
