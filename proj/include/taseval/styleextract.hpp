#pragma once

#include <optional>
#include <string>

#include "taseval/glyph.hpp"
#include "taseval/image.hpp"

namespace taseval {

/// Normalized working resolution for all style proxies.
inline constexpr int kStyleResolution = 128;

enum class ExtractorKind { CLASSICAL, EXTERNAL };

struct ExtractorMode {
  ExtractorKind kind = ExtractorKind::CLASSICAL;
  std::string external_dir;  // EXTERNAL only

  static ExtractorMode classical() { return {ExtractorKind::CLASSICAL, ""}; }
  static ExtractorMode external(std::string dir) {
    return {ExtractorKind::EXTERNAL, std::move(dir)};
  }
};

/// The disentangled appearance proxies for one image.
struct StyleTriple {
  RasterImage colorized;   // SRGB, glyph render in the estimated colors
  RasterImage font_glyph;  // GRAY, source stroke geometry on the canvas
  RasterImage background;  // SRGB, text removed
  RasterImage mask;        // GRAY binary text region
  // Ink support of the colorized render; empty for EXTERNAL triples, whose
  // renders have no known support. The color term is masked to it.
  RasterImage color_support;
  ExtractorKind extractor = ExtractorKind::CLASSICAL;
  bool degenerate_mask = false;
};

struct TextMask {
  RasterImage mask;  // GRAY, values in {0,1}
  bool degenerate = false;
};

/// Otsu threshold on luma; the class with lower border occupancy is
/// foreground. Components under 0.1% of the area are dropped, then a 3x3
/// morphological close. Single-valued luma yields an empty mask with the
/// degenerate flag set.
TextMask extract_text_mask(const RasterImage& img);

/// Channel-wise median of Lab values over mask pixels.
LabPixel estimate_text_color(const RasterImage& img, const RasterImage& mask);

/// Linear blend in Lab between fill (gray 0) and bg (gray 1), to sRGB.
RasterImage colorize(const RasterImage& gray, const LabPixel& fill,
                     const LabPixel& bg);

/// Tight mask bounding box resampled onto the template canvas under the
/// renderer's layout rule (fit the 80% box, centered), binarized. Ink 0.
RasterImage reshape_font_template(const RasterImage& img,
                                  const RasterImage& mask,
                                  const GlyphTemplate& tpl,
                                  int canvas = kStyleResolution);

/// Mask dilated by 2 px, then fast-marching inpainting. Empty mask is a
/// bit-exact identity.
RasterImage remove_text(const RasterImage& img, const RasterImage& mask);

/// Full style decomposition at 128x128. render_text selects the glyph
/// string used for the colorized proxy (the target text under the TAS
/// protocol). EXTERNAL mode loads <dir>/<pair_id>.<side>.{clr,fnt,bg,seg}.png.
StyleTriple extract_style(const RasterImage& img, const std::string& render_text,
                          const GlyphTemplate& tpl, const ExtractorMode& mode,
                          const std::string& pair_id = "pair",
                          const std::string& side = "a");

}  // namespace taseval
