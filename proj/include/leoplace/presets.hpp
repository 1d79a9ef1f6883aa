#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "leoplace/geom.hpp"

namespace leoplace {

struct ShellPreset {
  std::string_view name;
  std::string_view description;
  geom::ShellParams params;
};

// Starlink and Kuiper phase I shells.
std::span<const ShellPreset> shell_presets();
std::optional<ShellPreset> find_preset(std::string_view name);

}  // namespace leoplace
