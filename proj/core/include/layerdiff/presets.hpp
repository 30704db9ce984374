#pragma once

// Compiled-in problem definitions: the two-layer interface cases, the
// eight-layer comparison problem and four applications mapped onto the
// canonical diffusion form.

#include <layerdiff/config.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace layerdiff {

struct PresetInfo {
    std::string name;
    std::string summary;
};

std::vector<PresetInfo> list_presets();

/// Throws ConfigError("preset", ...) for an unknown name.
RunConfig preset(std::string_view name);

/// Seconds per Julian year; converts the contaminant-transport diffusivities.
inline constexpr double kSecondsPerYear = 3.15576e7;

}  // namespace layerdiff
