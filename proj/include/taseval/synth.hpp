#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "taseval/image.hpp"
#include "taseval/manifest.hpp"

namespace taseval {

enum class Variation { T, F, C, B, FCB };

Variation variation_from_string(const std::string& s);
std::string to_string(Variation v);

struct PaletteEntry {
  std::array<double, 3> fill;
  std::array<double, 3> bg;
};

/// Controlled-variation generator settings. Image A samples font, fill
/// color, and background; image B differs only in the configured
/// attributes: T changes the text, F the font, C the fill color (deltaE00
/// >= 20), B the background family, FCB all three style attributes.
struct VariationConfig {
  int n_pairs = 200;
  int canvas = 128;
  // default pool picks maximally contrasting stroke styles so the F set
  // carries a clear font signal; "sans" and "slab" remain available
  std::vector<std::string> fonts = {"thin", "bold", "italic"};
  std::vector<PaletteEntry> palette;  // defaults filled when empty
  std::vector<std::string> backgrounds = {"solid", "gradient", "noise"};
  Variation variation = Variation::T;
  uint64_t seed = 1;
};

const std::vector<PaletteEntry>& default_palette();

struct SidecarEntry {
  std::string pair_id;
  std::string font_a, font_b;
  std::array<double, 3> fill_a, fill_b;
  std::string bg_a, bg_b;  // family ids
  std::string mask_a, mask_b;  // PNG paths
};

struct SynthResult {
  PairManifest manifest;
  std::vector<SidecarEntry> sidecar;
};

/// Writes images and ground-truth masks under out_dir, deterministic for a
/// fixed config. The manifest file itself is written by the caller.
SynthResult synth_variations(const VariationConfig& cfg,
                             const std::string& out_dir);

VariationConfig parse_variation_config(const std::string& json_path);
void write_sidecar(const std::vector<SidecarEntry>& sidecar,
                   const std::string& path);

}  // namespace taseval
