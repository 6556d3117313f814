#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "fracsr/config.hpp"
#include "fracsr/image_io.hpp"
#include "fracsr/imaging.hpp"
#include "fracsr/metrics.hpp"
#include "support/synthetic.hpp"

namespace fs = std::filesystem;
using namespace fracsr;

namespace {

const fs::path kWork = fs::temp_directory_path() / "fracsr_cli_test";

int run(const std::string& args, const fs::path& stdout_file = {},
        const fs::path& stderr_file = {}) {
    std::string cmd = std::string(FRACSR_CLI_PATH) + " " + args;
    if (!stdout_file.empty()) cmd += " > " + stdout_file.string();
    if (!stderr_file.empty()) cmd += " 2> " + stderr_file.string();
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct Fixture {
    Fixture() {
        fs::remove_all(kWork);
        fs::create_directories(kWork);
        save_image(testsupport::natural_like(32, 32, 800), (kWork / "small.png").string());
        save_image(testsupport::natural_like(16, 16, 801), (kWork / "tiny.pgm").string());
    }
};

}  // namespace

TEST_CASE("upscale produces the contracted dimensions") {
    Fixture fx;
    const std::string in = (kWork / "small.png").string();
    const std::string out = (kWork / "up4.png").string();
    // fixed alpha keeps the test fast; auto search is covered elsewhere
    const int rc = run("upscale --input " + in + " --output " + out +
                       " --scale 4 --alpha 1.0 --trace " + (kWork / "trace.txt").string());
    CHECK(rc == 0);
    const Image img = load_image(out);
    CHECK(img.width() == 128);
    CHECK(img.height() == 128);

    const std::string trace = slurp(kWork / "trace.txt");
    CHECK(trace.find("level 0 alpha_star=1") != std::string::npos);
    CHECK(trace.find("energy=") != std::string::npos);
}

TEST_CASE("upscale rejects a non-power-of-two scale with exit 2") {
    Fixture fx;
    const int rc = run("upscale --input " + (kWork / "small.png").string() + " --output " +
                           (kWork / "x.png").string() + " --scale 3",
                       kWork / "out.txt", kWork / "err.txt");
    CHECK(rc == 2);
}

TEST_CASE("upscale reports I/O failures with exit 1") {
    Fixture fx;
    const int rc = run("upscale --input " + (kWork / "missing.png").string() + " --output " +
                           (kWork / "x.png").string() + " --scale 2 --alpha 1.0",
                       kWork / "out.txt", kWork / "err.txt");
    CHECK(rc == 1);
    CHECK(slurp(kWork / "err.txt").find("missing.png") != std::string::npos);
}

TEST_CASE("missing required flags are a usage error") {
    const int rc = run("upscale --scale 2", kWork / "out.txt", kWork / "err.txt");
    CHECK(rc == 2);
}

TEST_CASE("upscale is byte-deterministic") {
    Fixture fx;
    const std::string in = (kWork / "tiny.pgm").string();
    const std::string a = (kWork / "det_a.png").string();
    const std::string b = (kWork / "det_b.png").string();
    REQUIRE(run("upscale --input " + in + " --output " + a + " --scale 2") == 0);
    REQUIRE(run("upscale --input " + in + " --output " + b + " --scale 2") == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
}

TEST_CASE("upscale honours a config file with flag overrides") {
    Fixture fx;
    PipelineConfig cfg;
    cfg.reconstruction.max_iters = 4;
    cfg.alpha_mode = AlphaMode::fixed;
    cfg.alpha_value = 0.8;
    cfg.save((kWork / "run.cfg").string());

    SUBCASE("flag overrides the file value") {
        const int rc = run("upscale --input " + (kWork / "tiny.pgm").string() + " --output " +
                           (kWork / "cfgout.png").string() + " --scale 2 --config " +
                           (kWork / "run.cfg").string() + " --alpha 0.9 --trace " +
                           (kWork / "cfgtrace.txt").string());
        CHECK(rc == 0);
        CHECK(load_image((kWork / "cfgout.png").string()).width() == 32);
        CHECK(slurp(kWork / "cfgtrace.txt").find("alpha_star=0.9") != std::string::npos);
    }
    SUBCASE("file value applies when the flag is absent") {
        const int rc = run("upscale --input " + (kWork / "tiny.pgm").string() + " --output " +
                           (kWork / "cfgout2.png").string() + " --scale 2 --config " +
                           (kWork / "run.cfg").string() + " --trace " +
                           (kWork / "cfgtrace2.txt").string());
        CHECK(rc == 0);
        const std::string trace = slurp(kWork / "cfgtrace2.txt");
        CHECK(trace.find("alpha_star=0.8") != std::string::npos);
        CHECK(trace.find("alpha 0.1") == std::string::npos);  // no grid search ran
    }
}

TEST_CASE("metrics on a file against itself") {
    Fixture fx;
    const std::string img = (kWork / "small.png").string();
    const int rc = run("metrics --ref " + img + " --test " + img + " --json",
                       kWork / "metrics.json");
    CHECK(rc == 0);
    const auto j = nlohmann::json::parse(slurp(kWork / "metrics.json"));
    CHECK(j["rmse"].get<double>() == 0.0);
    CHECK(j["ssim"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(j["texture_similarity"].get<double>() == 0.0);
    CHECK(j["texture"]["ref"].contains("energy"));
    CHECK(j["texture"]["ref"].contains("homogeneity"));
    CHECK(j["texture"]["ref"].contains("entropy"));
    CHECK(j["texture"]["test"].contains("energy"));
}

TEST_CASE("metrics flag subset limits the output") {
    Fixture fx;
    const std::string img = (kWork / "small.png").string();
    const int rc = run("metrics --ref " + img + " --test " + img + " --rmse --json",
                       kWork / "subset.json");
    CHECK(rc == 0);
    const auto j = nlohmann::json::parse(slurp(kWork / "subset.json"));
    CHECK(j.contains("rmse"));
    CHECK_FALSE(j.contains("ssim"));
    CHECK_FALSE(j.contains("texture"));
}

TEST_CASE("metrics dimension mismatch reports both sizes with exit 1") {
    Fixture fx;
    const int rc = run("metrics --ref " + (kWork / "small.png").string() + " --test " +
                           (kWork / "tiny.pgm").string(),
                       kWork / "out.txt", kWork / "err.txt");
    CHECK(rc == 1);
    const std::string err = slurp(kWork / "err.txt");
    CHECK(err.find("32x32") != std::string::npos);
    CHECK(err.find("16x16") != std::string::npos);
}

TEST_CASE("metrics missing file exits 1") {
    const int rc = run("metrics --ref nowhere.png --test nowhere.png", kWork / "out.txt",
                       kWork / "err.txt");
    CHECK(rc == 1);
}

TEST_CASE("bench writes one CSV row per image and method") {
    Fixture fx;
    const fs::path dir = kWork / "corpus";
    fs::create_directories(dir);
    save_image(testsupport::natural_like(48, 48, 810), (dir / "a.png").string());
    save_image(testsupport::natural_like(48, 48, 811), (dir / "b.png").string());

    PipelineConfig cfg;
    cfg.reconstruction.max_iters = 8;
    cfg.save((kWork / "bench.cfg").string());

    const std::string csv_path = (kWork / "report.csv").string();
    const int rc = run("bench --hr-dir " + dir.string() + " --scale 2 --out " + csv_path +
                       " --config " + (kWork / "bench.cfg").string());
    CHECK(rc == 0);

    std::ifstream csv(csv_path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line)) lines.push_back(line);
    REQUIRE(lines.size() == 5);  // header + 2 images x 2 methods
    CHECK(lines[0] ==
          "image,method,scale,rmse,ssim,tex_energy,tex_homogeneity,tex_entropy,"
          "alpha_per_level,wall_ms");
    CHECK(lines[1].find("a,ours,2,") == 0);
    CHECK(lines[2].find("a,bicubic,2,") == 0);

    // the bicubic row must agree with a direct metric computation
    const Image hr = load_image((dir / "a.png").string());
    const GaussianKernel h = gaussian_kernel(cfg.sigma);
    const Image lr = blur_decimate(hr, h, 2);
    const double want_rmse = rmse(hr, bicubic_resize(lr, 2));
    std::istringstream row(lines[2]);
    std::string field;
    for (int i = 0; i < 4; ++i) std::getline(row, field, ',');
    CHECK(std::stod(field) == doctest::Approx(want_rmse).epsilon(1e-4));
}

TEST_CASE("bench on an empty directory exits 1") {
    Fixture fx;
    const fs::path dir = kWork / "empty";
    fs::create_directories(dir);
    const int rc = run("bench --hr-dir " + dir.string() + " --scale 2 --out " +
                           (kWork / "r.csv").string(),
                       kWork / "out.txt", kWork / "err.txt");
    CHECK(rc == 1);
}
