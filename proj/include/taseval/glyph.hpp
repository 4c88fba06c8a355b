#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "taseval/image.hpp"

namespace taseval {

/// Stroke-rendering style of one builtin atlas. All atlases share the same
/// segment skeletons; width, slant, and serifs set them apart.
struct GlyphStyle {
  double stroke = 0.055;  // radius in cell units
  double slant = 0.0;     // horizontal shear per unit height
  bool serif = false;
};

/// Bitmap glyph atlas. Glyphs are rasterized from embedded segment
/// skeletons, so renders are bit-reproducible and free of font engines.
/// Coverage: printable ASCII plus the Arabic, Hangul, Kana, and unified
/// CJK blocks (non-Latin glyphs are deterministic synthetic shapes).
class GlyphTemplate {
 public:
  GlyphTemplate(std::string name, GlyphStyle style, int cell_size = 48);

  const std::string& name() const { return name_; }
  int cell_size() const { return cell_size_; }
  const std::vector<std::string>& coverage() const { return coverage_; }

  bool covers(uint32_t codepoint) const;

  /// Ink coverage bitmap in [0,1] (1 = ink), cell_size x cell_size.
  RasterImage rasterize(uint32_t codepoint) const;

 private:
  std::string name_;
  GlyphStyle style_;
  int cell_size_;
  std::vector<std::string> coverage_;
};

/// Builtin atlas ids: "sans", "bold", "slab", "italic", "thin".
const std::vector<std::string>& builtin_atlas_names();
GlyphTemplate make_builtin_atlas(const std::string& name);

/// Lay out text glyphs (right-to-left for Arabic), scale the ink tight box
/// uniformly into the canvas with a 10% margin on each side, centered.
/// Background 1.0, ink 0.0.
RasterImage render_text_gray(const std::string& text, const GlyphTemplate& tpl,
                             int canvas_w, int canvas_h);

}  // namespace taseval
