#pragma once

#include <string>

#include "taseval/styleextract.hpp"

namespace taseval {

/// Per-pair style similarity record. tas is the component mean.
struct TasReport {
  double s_clr = 0.0;
  double s_fnt = 0.0;
  double s_bg = 0.0;
  double tas = 0.0;
  ExtractorKind extractor = ExtractorKind::CLASSICAL;
  std::string aggregation_note;
};

/// Text appearance similarity between two images. The glyph render used by
/// the color term comes from text_b on both sides, so the score compares
/// style rather than content.
TasReport tas(const RasterImage& img_a, const RasterImage& img_b,
              const std::string& text_b, const GlyphTemplate& tpl,
              const ExtractorMode& mode, const std::string& pair_id = "pair");

}  // namespace taseval
