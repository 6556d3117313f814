#include "fracsr/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fracsr/imaging.hpp"

namespace fracsr {

void PipelineConfig::validate() const {
    make_scale(scale);
    if (alpha_mode == AlphaMode::fixed && (!(alpha_value > 0.0) || alpha_value > 1.0))
        throw std::domain_error("config: fixed alpha must be in (0,1]");
    if (alpha_grid.empty()) throw std::domain_error("config: alpha grid is empty");
    for (double a : alpha_grid)
        if (!(a > 0.0) || a > 1.0)
            throw std::domain_error("config: alpha grid value outside (0,1]");
    if (!(sigma > 0.0)) throw std::domain_error("config: sigma must be > 0");
    if (support < 2) throw std::domain_error("config: mask support must be >= 2");
    reconstruction.validate();
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

std::string PipelineConfig::serialize() const {
    std::ostringstream os;
    os << "scale=" << scale << "\n";
    os << "alpha_mode=" << (alpha_mode == AlphaMode::automatic ? "auto" : "fixed") << "\n";
    os << "alpha_value=" << format_double(alpha_value) << "\n";
    os << "alpha_grid=";
    for (size_t i = 0; i < alpha_grid.size(); ++i)
        os << (i ? "," : "") << format_double(alpha_grid[i]);
    os << "\n";
    os << "sigma=" << format_double(sigma) << "\n";
    os << "support=" << support << "\n";
    os << "lambda=" << format_double(reconstruction.lambda) << "\n";
    os << "eta=" << format_double(reconstruction.eta) << "\n";
    os << "beta=" << format_double(reconstruction.beta) << "\n";
    os << "gamma=" << format_double(reconstruction.gamma) << "\n";
    os << "eps=" << format_double(reconstruction.eps) << "\n";
    os << "max_iters=" << reconstruction.max_iters << "\n";
    os << "rel_tol=" << format_double(reconstruction.rel_tol) << "\n";
    os << "color_mode=" << (color_mode == ColorMode::luma ? "luma" : "grayscale") << "\n";
    return os.str();
}

PipelineConfig PipelineConfig::parse(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' on line " + std::to_string(lineno));
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "scale") {
                cfg.scale = std::stoi(value);
            } else if (key == "alpha_mode") {
                if (value == "auto")
                    cfg.alpha_mode = AlphaMode::automatic;
                else if (value == "fixed")
                    cfg.alpha_mode = AlphaMode::fixed;
                else
                    throw std::invalid_argument("bad alpha_mode");
            } else if (key == "alpha_value") {
                cfg.alpha_value = std::stod(value);
            } else if (key == "alpha_grid") {
                cfg.alpha_grid.clear();
                std::istringstream gs(value);
                std::string item;
                while (std::getline(gs, item, ',')) cfg.alpha_grid.push_back(std::stod(item));
            } else if (key == "sigma") {
                cfg.sigma = std::stod(value);
            } else if (key == "support") {
                cfg.support = std::stoi(value);
            } else if (key == "lambda") {
                cfg.reconstruction.lambda = std::stod(value);
            } else if (key == "eta") {
                cfg.reconstruction.eta = std::stod(value);
            } else if (key == "beta") {
                cfg.reconstruction.beta = std::stod(value);
            } else if (key == "gamma") {
                cfg.reconstruction.gamma = std::stod(value);
            } else if (key == "eps") {
                cfg.reconstruction.eps = std::stod(value);
            } else if (key == "max_iters") {
                cfg.reconstruction.max_iters = std::stoi(value);
            } else if (key == "rel_tol") {
                cfg.reconstruction.rel_tol = std::stod(value);
            } else if (key == "color_mode") {
                if (value == "luma")
                    cfg.color_mode = ColorMode::luma;
                else if (value == "grayscale")
                    cfg.color_mode = ColorMode::grayscale;
                else
                    throw std::invalid_argument("bad color_mode");
            } else {
                throw std::invalid_argument("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

PipelineConfig PipelineConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void PipelineConfig::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file " + path);
    out << serialize();
}

}  // namespace fracsr
