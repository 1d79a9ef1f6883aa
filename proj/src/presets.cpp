#include "leoplace/presets.hpp"

#include <array>

namespace leoplace {
namespace {

constexpr std::array<ShellPreset, 4> kPresets{{
    {"starlink-a", "SpaceX Starlink shell A", {72, 22, 550.0, 53.0}},
    {"starlink-b", "SpaceX Starlink shell B", {5, 75, 1275.0, 81.0}},
    {"kuiper-a", "Amazon Kuiper shell A", {34, 34, 630.0, 51.9}},
    {"kuiper-b", "Amazon Kuiper shell B", {28, 28, 590.0, 33.0}},
}};

}  // namespace

std::span<const ShellPreset> shell_presets() { return kPresets; }

std::optional<ShellPreset> find_preset(std::string_view name) {
  for (const ShellPreset& p : kPresets) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace leoplace
