#include "taseval/tas.hpp"

#include <algorithm>

#include "taseval/colorconv.hpp"
#include "taseval/colordiff.hpp"
#include "taseval/fsim.hpp"
#include "taseval/simmetrics.hpp"

namespace taseval {

TasReport tas(const RasterImage& img_a, const RasterImage& img_b,
              const std::string& text_b, const GlyphTemplate& tpl,
              const ExtractorMode& mode, const std::string& pair_id) {
  const StyleTriple a = extract_style(img_a, text_b, tpl, mode, pair_id, "a");
  const StyleTriple b = extract_style(img_b, text_b, tpl, mode, pair_id, "b");

  TasReport r;
  r.extractor = a.extractor;
  // Classical triples carry the render's ink support (identical on both
  // sides, the render comes from text_b); external triples compare the
  // full canvas.
  bool masked = !a.color_support.empty() &&
                a.color_support.width() == b.colorized.width() &&
                a.color_support.height() == b.colorized.height();
  if (masked) {
    bool any = false;
    for (float v : a.color_support.data())
      if (v > 0.5f) {
        any = true;
        break;
      }
    masked = any;
  }
  const RasterImage* support = masked ? &a.color_support : nullptr;
  r.s_clr =
      std::clamp(color_similarity(a.colorized, b.colorized, support), 0.0, 1.0);
  r.s_fnt = std::clamp(fsim(a.font_glyph, b.font_glyph), 0.0, 1.0);
  r.s_bg = std::clamp(
      ms_ssim(to_grayscale(a.background), to_grayscale(b.background)), 0.0,
      1.0);
  r.tas = (r.s_clr + r.s_fnt + r.s_bg) / 3.0;
  r.aggregation_note = masked
                           ? "clr=ink-mean-ciede2000/128px fnt=fsim-luma "
                             "bg=msssim-gray"
                           : "clr=unmasked-mean-ciede2000/128px fnt=fsim-luma "
                             "bg=msssim-gray";
  return r;
}

}  // namespace taseval
