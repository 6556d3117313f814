#pragma once

#include <string>
#include <vector>

#include "fracsr/reconstruct.hpp"

namespace fracsr {

enum class AlphaMode { automatic, fixed };
enum class ColorMode { luma, grayscale };

/// Everything that parameterizes an upscaling run. Serializes to a flat
/// key=value file; identical configs produce byte-identical pipelines.
struct PipelineConfig {
    int scale = 2;
    AlphaMode alpha_mode = AlphaMode::automatic;
    double alpha_value = 1.0;            ///< used when alpha_mode == fixed
    std::vector<double> alpha_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    double sigma = 0.55;
    int support = 3;                     ///< taps per directional mask
    ReconstructionConfig reconstruction;
    ColorMode color_mode = ColorMode::luma;

    void validate() const;
    std::string serialize() const;
    static PipelineConfig parse(const std::string& text);
    static PipelineConfig load(const std::string& path);
    void save(const std::string& path) const;

    bool operator==(const PipelineConfig&) const = default;
};

}  // namespace fracsr
